mod commands;

use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use copart::{CopParams, Error};

#[derive(Parser, Debug)]
#[command(
    name = "copart",
    version,
    about = "Copartition counting, bijections and q-series checks"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Output format.
    #[arg(long, value_enum, global = true, default_value_t = Format::Text)]
    pub format: Format,

    /// Write output here instead of stdout.
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Args, Debug, Clone, Copy)]
pub struct ParamArgs {
    #[arg(long, default_value_t = 1)]
    pub a: u32,
    #[arg(long, default_value_t = 1)]
    pub b: u32,
    #[arg(long, default_value_t = 2)]
    pub m: u32,
}

impl ParamArgs {
    pub fn params(&self) -> Result<CopParams, Error> {
        CopParams::new(self.a, self.b, self.m)
    }
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// cp, cp^e and cp^o for one size or a range of sizes.
    Count {
        #[command(flatten)]
        params: ParamArgs,
        #[arg(long)]
        n: u32,
        /// Last size of a range starting at --n.
        #[arg(long)]
        to: Option<u32>,
        /// Table cp(w, s, n) by number of ground parts w and sky parts s.
        #[arg(long, conflicts_with = "over")]
        refined: bool,
        /// Overcopartition counts by number r of overlined parts.
        #[arg(long)]
        over: bool,
    },
    /// List the copartitions of one size.
    Enumerate {
        #[command(flatten)]
        params: ParamArgs,
        #[arg(long)]
        n: u32,
        /// Draw each copartition.
        #[arg(long)]
        diagrams: bool,
        /// Label diagram cells with a, b, m instead of numbers.
        #[arg(long)]
        symbolic: bool,
    },
    /// Trace φ (odd ground) or ψ (even ground) on a (1,1,2)-copartition.
    Phi {
        #[command(flatten)]
        params: ParamArgs,
        /// Comma-separated ground parts, or γ̃ with --pair.
        #[arg(long, default_value = "")]
        ground: String,
        /// Comma-separated sky parts, or σ̃ with --pair.
        #[arg(long, default_value = "")]
        sky: String,
        /// Read --ground/--sky as the pair (γ̃, σ̃) directly.
        #[arg(long)]
        pair: bool,
        /// Run ψ even when the input has odd ground.
        #[arg(long)]
        inverse: bool,
    },
    /// Expand a product or sum to a given order.
    Series {
        #[arg(value_enum)]
        product: Product,
        #[command(flatten)]
        params: ParamArgs,
        #[arg(long, default_value_t = 20)]
        order: usize,
        /// N for the finite product.
        #[arg(long = "big-n", default_value_t = 1)]
        big_n: usize,
        /// M for the finite product.
        #[arg(long = "big-m", default_value_t = 1)]
        big_m: usize,
    },
    /// Run a named identity suite.
    Verify {
        /// Suite name or alias, or `all`.
        target: String,
        /// Override the suite's default order.
        #[arg(long)]
        order: Option<usize>,
    },
    /// Positivity scans over parameter grids.
    Scan {
        /// 1: infinite products over (a, b, m); 2: finite products g(N, M).
        #[arg(long, value_parser = clap::value_parser!(u8).range(1..=2))]
        conjecture: u8,
        #[arg(long = "max-a", default_value_t = 6)]
        max_a: u32,
        #[arg(long = "max-b", default_value_t = 6)]
        max_b: u32,
        #[arg(long = "max-m", default_value_t = 6)]
        max_m: u32,
        /// Truncation order; finite scans default to m·(N+M).
        #[arg(long)]
        order: Option<usize>,
        /// Keep only b | a (and a + b = m for finite products).
        #[arg(long = "filter-divisibility")]
        filter_divisibility: bool,
        #[arg(long = "max-big-n", default_value_t = 8)]
        max_big_n: usize,
        #[arg(long = "max-big-m", default_value_t = 8)]
        max_big_m: usize,
        /// Also scan N > M.
        #[arg(long = "include-outside")]
        include_outside: bool,
        /// Worker threads; 0 uses all cores.
        #[arg(long, default_value_t = 0)]
        jobs: usize,
    },
    /// Draw the modular diagram of a copartition or of a single partition.
    Diagram {
        #[command(flatten)]
        params: ParamArgs,
        #[arg(long, default_value = "")]
        ground: String,
        #[arg(long, default_value = "")]
        sky: String,
        /// Draw just this partition with cells of size --m.
        #[arg(long)]
        partition: Option<String>,
        /// Residue cell for --partition; defaults to the smallest part mod m.
        #[arg(long)]
        residue: Option<u32>,
        #[arg(long)]
        symbolic: bool,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Product {
    /// (-q^{a+b};q^m)_∞ / ((-q^a;q^m)_∞ (q^b;q^m)_∞)
    ParityDifference,
    /// (xyq^{a+b};q^m)_∞ / ((xq^b;q^m)_∞ (yq^a;q^m)_∞)
    Refined,
    /// (-q²;q²)_∞ / (q²;q⁴)_∞
    Complement,
    /// Overcopartition double sum over rectangle shapes.
    OverDouble,
    /// Overcopartition closed form.
    OverClosed,
    /// (-q^{2a};q^{2a})_∞ (-zq^{2a};q^{4a})_∞² / (q^{2a};q^{4a})_∞
    OverDifference,
    /// (-q^{2a};q^m)_∞ / (q^{2a};q^{2m})_∞
    EqualResidue,
    /// g(N, M) = (-q^m;q^m)_{N+M-1} / ((-q^a;q^m)_N (q^b;q^m)_M)
    Finite,
}

/// What a command produced and how the process should exit.
pub struct Outcome {
    pub body: String,
    pub exit: u8,
}

impl Outcome {
    pub fn ok(body: String) -> Self {
        Self { body, exit: 0 }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match commands::run(&cli) {
        Ok(out) => {
            let written = match &cli.output {
                Some(path) => fs::write(path, &out.body),
                None => io::stdout().write_all(out.body.as_bytes()),
            };
            if let Err(e) = written {
                eprintln!("error: {e}");
                return ExitCode::from(2);
            }
            ExitCode::from(out.exit)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(match e {
                Error::MismatchFound { .. } => 1,
                _ => 2,
            })
        }
    }
}
