use std::fmt::Write as _;

use rayon::prelude::*;
use serde_json::{json, Value};

use copart::bijection::{PsiEnd, SkyGroundPair, Trace};
use copart::conjectures::{
    positivity_grid, scan_finite_positivity, scan_positivity, ScanResult, SCAN_CSV_HEADER,
};
use copart::copartition::{enumerate, CopartitionCounter, REFINED_CSV_HEADER};
use copart::overcopartition::{count_over_by_r, BY_R_CSV_HEADER};
use copart::partition::{render_modular, CellLabels};
use copart::products::{
    complement_product, equal_residue_product, finite_product, over_closed_form, over_double_sum,
    over_weighted_difference_product, refined_product, weighted_product, OverlineWeight,
};
use copart::verify::Suite;
use copart::{
    CoefficientCodec, CopParams, Copartition, Error, IdentityReport, Partition, TruncatedSeries,
};

use crate::{Cli, Command, Format, Outcome, ParamArgs, Product};

type Result<T> = std::result::Result<T, Error>;

pub fn run(cli: &Cli) -> Result<Outcome> {
    let f = cli.format;
    match &cli.command {
        Command::Count {
            params,
            n,
            to,
            refined,
            over,
        } => count(f, params, *n, to.unwrap_or(*n), *refined, *over),
        Command::Enumerate {
            params,
            n,
            diagrams,
            symbolic,
        } => enumerate_cmd(f, params.params()?, *n, *diagrams, *symbolic),
        Command::Phi {
            params,
            ground,
            sky,
            pair,
            inverse,
        } => phi(f, params, ground, sky, *pair, *inverse),
        Command::Series {
            product,
            params,
            order,
            big_n,
            big_m,
        } => series(f, *product, params.params()?, *order, *big_n, *big_m),
        Command::Verify { target, order } => verify(f, target, *order),
        Command::Scan {
            conjecture,
            max_a,
            max_b,
            max_m,
            order,
            filter_divisibility,
            max_big_n,
            max_big_m,
            include_outside,
            jobs,
        } => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(*jobs)
                .build()
                .map_err(|e| Error::BadParams(e.to_string()))?;
            let grid = Grid {
                max_a: *max_a,
                max_b: *max_b,
                max_m: *max_m,
                filter: *filter_divisibility,
            };
            let results = pool.install(|| match conjecture {
                1 => scan_infinite(grid, order.unwrap_or(120)),
                _ => scan_finite(grid, *max_big_n, *max_big_m, *order, *include_outside),
            });
            Ok(scan_output(f, results))
        }
        Command::Diagram {
            params,
            ground,
            sky,
            partition,
            residue,
            symbolic,
        } => diagram(
            f,
            params,
            ground,
            sky,
            partition.as_deref(),
            *residue,
            *symbolic,
        ),
    }
}

fn count(
    f: Format,
    p: &ParamArgs,
    from: u32,
    to: u32,
    refined: bool,
    over: bool,
) -> Result<Outcome> {
    let params = p.params()?;
    if to < from {
        return Err(Error::BadParams(format!("--to {to} is below --n {from}")));
    }
    let counter = CopartitionCounter::new(params, to);
    let mut text = String::new();
    let mut rows = Vec::new();
    if refined {
        text.push_str(if f == Format::Csv {
            REFINED_CSV_HEADER
        } else {
            "n w s count"
        });
        text.push('\n');
        for n in from..=to {
            for ((w, s), c) in counter.refined(n) {
                let _ = match f {
                    Format::Csv => writeln!(
                        text,
                        "{},{},{},{n},{w},{s},{c}",
                        params.a, params.b, params.m
                    ),
                    _ => writeln!(text, "{n} {w} {s} {c}"),
                };
                rows.push(json!({"n": n, "w": w, "s": s, "count": c.to_string()}));
            }
        }
    } else if over {
        text.push_str(if f == Format::Csv {
            BY_R_CSV_HEADER
        } else {
            "n r count"
        });
        text.push('\n');
        for n in from..=to {
            for (r, c) in count_over_by_r(params, n) {
                let _ = match f {
                    Format::Csv => writeln!(text, "{n},{r},{c}"),
                    _ => writeln!(text, "{n} {r} {c}"),
                };
                rows.push(json!({"n": n, "r": r, "count": c.to_string()}));
            }
        }
    } else {
        if f == Format::Csv {
            text.push_str("a,b,m,n,cp,cp_even,cp_odd\n");
        }
        for n in from..=to {
            let pc = counter.parity_counts(n);
            let _ = match f {
                Format::Csv => writeln!(
                    text,
                    "{},{},{},{n},{},{},{}",
                    params.a, params.b, params.m, pc.total, pc.even, pc.odd
                ),
                _ => writeln!(
                    text,
                    "{params} n={n} cp={} cp^e={} cp^o={}",
                    pc.total, pc.even, pc.odd
                ),
            };
            let mut v = pc.to_json();
            v["n"] = json!(n);
            rows.push(v);
        }
    }
    Ok(Outcome::ok(match f {
        Format::Json => json_body(&json!({"params": params, "rows": rows})),
        _ => text,
    }))
}

fn enumerate_cmd(
    f: Format,
    params: CopParams,
    n: u32,
    diagrams: bool,
    symbolic: bool,
) -> Result<Outcome> {
    let all = enumerate(params, n);
    let body = match f {
        Format::Json => json_body(&Value::Array(
            all.iter()
                .map(|c| {
                    let mut v = c.to_json();
                    if diagrams {
                        v["diagram"] = json!(c.render_diagram(symbolic));
                    }
                    v
                })
                .collect(),
        )),
        Format::Csv => {
            let mut s = String::from("n,ground,sky,rho_parts,rho_size\n");
            for c in &all {
                let rho = c.to_json()["rho"].clone();
                let _ = writeln!(
                    s,
                    "{n},{},{},{},{}",
                    joined(c.ground()),
                    joined(c.sky()),
                    rho["parts"],
                    rho["size"]
                );
            }
            s
        }
        Format::Text => {
            let mut s = String::new();
            for c in &all {
                let _ = writeln!(s, "{c}");
                if diagrams {
                    let d = c.render_diagram(symbolic);
                    if !d.is_empty() {
                        let _ = writeln!(s, "{d}");
                    }
                    s.push('\n');
                }
            }
            let _ = writeln!(s, "total {}", all.len());
            s
        }
    };
    Ok(Outcome::ok(body))
}

fn joined(p: &Partition) -> String {
    p.parts()
        .iter()
        .map(u32::to_string)
        .collect::<Vec<_>>()
        .join(" ")
}

fn phi(
    f: Format,
    p: &ParamArgs,
    ground: &str,
    sky: &str,
    as_pair: bool,
    inverse: bool,
) -> Result<Outcome> {
    let params = p.params()?;
    params.require_eo()?;
    let (g, s) = (Partition::parse(ground)?, Partition::parse(sky)?);
    let start = if as_pair {
        SkyGroundPair::new(g, s)?
    } else {
        SkyGroundPair::from_copartition(&Copartition::new(params, g, s)?)?
    };
    let forward = start.is_odd_copartition() && !inverse;
    let (map, trace, end) = if forward {
        let t = start.phi()?;
        ("phi", t, None)
    } else {
        let out = start.psi()?;
        ("psi", out.trace, Some(out.end))
    };
    let result = trace.end();
    let recast = result.to_copartition().ok();
    let end_label = match end {
        None => "even-copartition",
        Some(PsiEnd::CopartitionPair) => "odd-copartition",
        Some(PsiEnd::Terminal) => "terminal",
    };
    let body = match f {
        Format::Json => json_body(&json!({
            "map": map,
            "steps": trace.len(),
            "end": end_label,
            "trace": trace.to_json(),
            "result": {
                "pair": result.to_json(),
                "copartition": recast.as_ref().map(Copartition::to_json),
            },
        })),
        Format::Csv => trace_csv(&trace),
        Format::Text => {
            let mut s = trace.to_text();
            let _ = writeln!(s, "{map}: {} steps, {end_label}", trace.len());
            let _ = writeln!(s, "pair: {result}");
            if let Some(c) = &recast {
                let _ = writeln!(
                    s,
                    "copartition: ground {}, rho {}, sky {}",
                    c.ground(),
                    c.rho(),
                    c.sky()
                );
            }
            s
        }
    };
    Ok(Outcome::ok(body))
}

fn trace_csv(t: &Trace) -> String {
    let mut s = String::from("step,map,gamma,sigma\n");
    let _ = writeln!(
        s,
        "0,,{},{}",
        joined(t.start().gamma()),
        joined(t.start().sigma())
    );
    for (i, (k, p)) in t.steps().iter().enumerate() {
        let _ = writeln!(
            s,
            "{},{},{},{}",
            i + 1,
            k.label(),
            joined(p.gamma()),
            joined(p.sigma())
        );
    }
    s
}

fn series(
    f: Format,
    product: Product,
    params: CopParams,
    order: usize,
    big_n: usize,
    big_m: usize,
) -> Result<Outcome> {
    let a = params.a;
    Ok(Outcome::ok(match product {
        Product::ParityDifference => series_body(f, &weighted_product(params, order)),
        Product::Refined => series_body(f, &refined_product(params, order)),
        Product::Complement => series_body(f, &complement_product(order)),
        Product::OverDouble => {
            series_body(f, &over_double_sum(params, order, OverlineWeight::Standard))
        }
        Product::OverClosed => series_body(
            f,
            &over_closed_form(params, order, OverlineWeight::Standard),
        ),
        Product::OverDifference => series_body(f, &over_weighted_difference_product(a, order)),
        Product::EqualResidue => series_body(f, &equal_residue_product(a, params.m, order)),
        Product::Finite => series_body(f, &finite_product(params, big_n, big_m, order)),
    }))
}

fn series_body<R: CoefficientCodec>(f: Format, s: &TruncatedSeries<R>) -> String {
    match f {
        Format::Json => json_body(&s.to_json()),
        Format::Csv => {
            let mut out = String::from("n,coeff\n");
            for (n, c) in s.coeffs().iter().enumerate() {
                let cell = c.render();
                if cell.contains(',') || cell.contains(' ') {
                    let _ = writeln!(out, "{n},\"{cell}\"");
                } else {
                    let _ = writeln!(out, "{n},{cell}");
                }
            }
            out
        }
        Format::Text => format!("{s}\n"),
    }
}

fn verify(f: Format, target: &str, order: Option<usize>) -> Result<Outcome> {
    let suites: Vec<Suite> = if target == "all" {
        Suite::ALL.to_vec()
    } else {
        vec![target.parse()?]
    };
    let mut all: Vec<(Suite, IdentityReport)> = Vec::new();
    for s in suites {
        for r in s.run(order)? {
            all.push((s, r));
        }
    }
    let failed = all.iter().filter(|(_, r)| !r.passed()).count();
    let body = match f {
        Format::Json => json_body(&Value::Array(
            all.iter()
                .map(|(s, r)| {
                    let mut v = r.to_json();
                    v["suite"] = json!(s.name());
                    v
                })
                .collect(),
        )),
        Format::Csv => {
            let mut out =
                String::from("suite,identity,order_verified,mismatch_n,mismatch_r,status\n");
            for (s, r) in &all {
                let (mn, mr) = match r.mismatch {
                    Some(m) => (
                        m.n.to_string(),
                        m.r.map(|r| r.to_string()).unwrap_or_default(),
                    ),
                    None => (String::new(), String::new()),
                };
                let ov = r.order_verified.map(|o| o.to_string()).unwrap_or_default();
                let status = if r.passed() { "PASS" } else { "FAIL" };
                let _ = writeln!(out, "{s},\"{}\",{ov},{mn},{mr},{status}", r.identity);
            }
            out
        }
        Format::Text => {
            let mut out = String::new();
            for (s, r) in &all {
                let _ = writeln!(out, "[{s}] {r}");
                for note in &r.notes {
                    let _ = writeln!(out, "    note: {note}");
                }
            }
            let _ = writeln!(
                out,
                "{}: {} of {} checks passed",
                if failed == 0 { "PASS" } else { "FAIL" },
                all.len() - failed,
                all.len()
            );
            out
        }
    };
    Ok(Outcome {
        body,
        exit: if failed == 0 { 0 } else { 1 },
    })
}

#[derive(Clone, Copy)]
struct Grid {
    max_a: u32,
    max_b: u32,
    max_m: u32,
    filter: bool,
}

fn scan_infinite(g: Grid, order: usize) -> Vec<ScanResult> {
    positivity_grid(g.max_a, g.max_b, g.max_m, g.filter)
        .into_par_iter()
        .map(|p| scan_positivity(p, order))
        .collect()
}

fn scan_finite(
    g: Grid,
    max_n: usize,
    max_m: usize,
    order: Option<usize>,
    outside: bool,
) -> Vec<ScanResult> {
    let grid: Vec<CopParams> = positivity_grid(g.max_a, g.max_b, g.max_m, false)
        .into_iter()
        .filter(|p| !g.filter || (p.a % p.b == 0 && p.a + p.b == p.m))
        .collect();
    let mut results: Vec<ScanResult> = grid
        .into_par_iter()
        .flat_map_iter(|p| scan_finite_positivity(p, max_n, max_m, order, outside))
        .collect();
    // In-scope rows first, each group in grid order.
    results.sort_by_key(|r| !r.in_scope);
    results
}

fn scan_output(f: Format, results: Vec<ScanResult>) -> Outcome {
    let counterexamples = results
        .iter()
        .filter(|r| r.in_scope && !r.is_clean())
        .count();
    let body = match f {
        Format::Json => json_body(&json!({
            "results": results.iter().map(ScanResult::to_json).collect::<Vec<_>>(),
            "inScopeNegatives": counterexamples,
        })),
        Format::Csv => {
            let mut s = format!("{SCAN_CSV_HEADER}\n");
            for r in &results {
                let _ = writeln!(s, "{}", r.csv_row());
            }
            s
        }
        Format::Text => {
            let mut s = String::new();
            let mut outside_header = false;
            for r in &results {
                if !r.in_scope && !outside_header {
                    let _ = writeln!(s, "outside scope:");
                    outside_header = true;
                }
                let bounds = r
                    .bounds
                    .map(|(n, m)| format!(" N={n} M={m}"))
                    .unwrap_or_default();
                let verdict = match &r.first_negative {
                    None => "non-negative".to_string(),
                    Some(neg) => format!("negative at n={} ({})", neg.n, neg.value),
                };
                let _ = writeln!(
                    s,
                    "{}{bounds} order={}: {verdict}",
                    r.params, r.order_scanned
                );
            }
            let negatives = results.iter().filter(|r| !r.is_clean()).count();
            let _ = writeln!(
                s,
                "{} scanned, {negatives} with a negative coefficient, {counterexamples} in scope",
                results.len()
            );
            s
        }
    };
    Outcome {
        body,
        exit: if counterexamples == 0 { 0 } else { 1 },
    }
}

fn diagram(
    f: Format,
    p: &ParamArgs,
    ground: &str,
    sky: &str,
    partition: Option<&str>,
    residue: Option<u32>,
    symbolic: bool,
) -> Result<Outcome> {
    let text = match partition {
        Some(raw) => {
            let lambda = Partition::parse(raw)?;
            let m = p.m;
            let cell = residue.unwrap_or_else(|| match lambda.smallest() % m {
                0 => m,
                r => r,
            });
            let labels = if symbolic {
                CellLabels::symbolic("r")
            } else {
                CellLabels::numeric(m, cell)
            };
            render_modular(&lambda, m, cell, &labels)?
        }
        None => {
            let c = Copartition::new(
                p.params()?,
                Partition::parse(ground)?,
                Partition::parse(sky)?,
            )?;
            c.render_diagram(symbolic)
        }
    };
    Ok(Outcome::ok(match f {
        Format::Json => json_body(&json!({"diagram": text})),
        _ => format!("{text}\n"),
    }))
}

fn json_body(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("json values serialize");
    s.push('\n');
    s
}
