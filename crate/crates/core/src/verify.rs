//! Named identity suites with their default ranges. Each suite returns one
//! report per checked instance.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;

use crate::bijection::{complement_enumerate, verify_phi_at};
use crate::conjectures::{check_equal_residue, check_parity_difference, check_recursion};
use crate::copartition::{is_eo_star, tally_refined, CopParams, CopartitionCounter};
use crate::error::{Error, Result};
use crate::overcopartition::{
    check_diversity_weighting, check_eobar, check_over_parity_inequality, check_phi_one_identity,
    check_phi_over_injective, check_shifted_weight, check_weighted_over_difference,
};
use crate::partition::{generate, PartSpec};
use crate::products::{
    complement_product, complement_product_squared_form, refined_product, xy_coeff,
};
use crate::report::{IdentityReport, Mismatch};

/// Parameter triples used by the generating-function suites.
pub const STANDARD_PARAMS: [(u32, u32, u32); 5] =
    [(1, 1, 2), (1, 2, 3), (2, 1, 3), (3, 1, 4), (2, 2, 4)];

fn standard_params() -> impl Iterator<Item = CopParams> {
    STANDARD_PARAMS
        .iter()
        .map(|&(a, b, m)| CopParams::new(a, b, m).expect("valid"))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Suite {
    /// Product coefficients equal cp^e(n) - cp^o(n).
    ParityDifference,
    /// Bivariate product equals the table cp(w, s, n).
    Refined,
    /// cp^o ≤ cp^e with equality at odd n; φ injective, bijective at odd n.
    ParityBijection,
    /// CP^e \ φ(CP^o), the complement partitions and the product agree.
    Complement,
    /// Overcopartition parity inequality, the eo-bar inequality and the lifted φ.
    OverParity,
    /// Overcopartition generating function: enumeration, double sum, closed form.
    OverGeneratingFunction,
    /// Signed overcopartition series for (a,a,2a) against its product.
    OverDifference,
    /// (a,a,m) simplification and positivity.
    EqualResidue,
    /// Recursion of the finite products.
    Recursion,
    /// cp_{1,1,2}(n) equals the number of EO*-type partitions of 2n.
    EoStar,
}

impl Suite {
    pub const ALL: [Suite; 10] = [
        Suite::ParityDifference,
        Suite::Refined,
        Suite::ParityBijection,
        Suite::Complement,
        Suite::OverParity,
        Suite::OverGeneratingFunction,
        Suite::OverDifference,
        Suite::EqualResidue,
        Suite::Recursion,
        Suite::EoStar,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::ParityDifference => "parity-difference",
            Suite::Refined => "refined",
            Suite::ParityBijection => "parity-bijection",
            Suite::Complement => "complement",
            Suite::OverParity => "over-parity",
            Suite::OverGeneratingFunction => "over-gf",
            Suite::OverDifference => "over-difference",
            Suite::EqualResidue => "equal-residue",
            Suite::Recursion => "recursion",
            Suite::EoStar => "eo-star",
        }
    }

    /// Short aliases accepted on the command line.
    pub fn alias(self) -> &'static str {
        match self {
            Suite::ParityDifference => "eq2",
            Suite::Refined => "thm2",
            Suite::ParityBijection => "thm1",
            Suite::Complement => "remark",
            Suite::OverParity => "eq4",
            Suite::OverGeneratingFunction => "thm5",
            Suite::OverDifference => "eq5",
            Suite::EqualResidue => "thm6",
            Suite::Recursion => "recursion",
            Suite::EoStar => "eostar",
        }
    }

    pub fn default_order(self) -> usize {
        match self {
            Suite::ParityDifference => 40,
            Suite::Refined => 25,
            Suite::ParityBijection => 60,
            Suite::Complement => 40,
            Suite::OverParity => 40,
            Suite::OverGeneratingFunction => 20,
            Suite::OverDifference => 24,
            Suite::EqualResidue => 60,
            Suite::Recursion => 60,
            Suite::EoStar => 20,
        }
    }

    pub fn run(self, order: Option<usize>) -> Result<Vec<IdentityReport>> {
        let order = order.unwrap_or_else(|| self.default_order());
        Ok(match self {
            Suite::ParityDifference => standard_params()
                .map(|p| check_parity_difference(p, order))
                .collect(),
            Suite::Refined => standard_params().map(|p| check_refined(p, order)).collect(),
            Suite::ParityBijection => vec![
                check_parity_counts(order as u32),
                check_phi_maps(order.min(40) as u32)?,
            ],
            Suite::Complement => vec![check_complement(order as u32)?],
            Suite::OverParity => vec![
                check_over_parity_inequality(order as u32),
                check_eobar(order as u32),
                check_phi_over_injective(order.min(25) as u32)?,
            ],
            Suite::OverGeneratingFunction => {
                let eo = CopParams::eo();
                let p123 = CopParams::new(1, 2, 3)?;
                let p213 = CopParams::new(2, 1, 3)?;
                vec![
                    check_diversity_weighting(eo, order),
                    check_diversity_weighting(p123, order),
                    check_phi_one_identity(eo, order),
                    check_phi_one_identity(p123, order),
                    check_phi_one_identity(p213, order),
                    check_shifted_weight(eo, order),
                ]
            }
            Suite::OverDifference => vec![
                check_weighted_over_difference(1, order)?,
                check_weighted_over_difference(2, order)?,
            ],
            Suite::EqualResidue => {
                let mut out = Vec::new();
                for a in 1..=4 {
                    for m in 1..=6 {
                        out.push(check_equal_residue(a, m, order, 20)?);
                    }
                }
                out
            }
            Suite::Recursion => {
                let mut out = Vec::new();
                for (a, b, m) in [(1, 1, 2), (2, 1, 3), (3, 1, 4)] {
                    let p = CopParams::new(a, b, m)?;
                    for n in 1..=6 {
                        for mm in 1..=6 {
                            out.push(check_recursion(p, n, mm, order)?);
                        }
                    }
                }
                out
            }
            Suite::EoStar => vec![check_eo_star(order as u32)],
        })
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL
            .into_iter()
            .find(|t| t.name() == s || t.alias() == s)
            .ok_or_else(|| Error::BadParams(format!("unknown identity suite '{s}'")))
    }
}

/// Bivariate product coefficients against enumerated refined counts, both
/// directions, and against the memoized counter.
pub fn check_refined(params: CopParams, order: usize) -> IdentityReport {
    let series = refined_product(params, order);
    let counter = CopartitionCounter::new(params, order as u32);
    IdentityReport::scan(
        format!("refined generating function {params}"),
        order,
        |n| {
            let table = tally_refined(params, n as u32);
            if table != counter.refined(n as u32) {
                return Some(None);
            }
            let from_table = table
                .iter()
                .all(|(&(w, s), c)| &xy_coeff(&series, n, s, w) == c);
            let from_series = series.coeffs()[n].terms().all(|(e, c)| {
                table
                    .get(&(e[1] as usize, e[0] as usize))
                    .is_some_and(|t| t == c)
            });
            (!(from_table && from_series)).then_some(None)
        },
    )
}

pub fn check_parity_counts(max_n: u32) -> IdentityReport {
    let counter = CopartitionCounter::new(CopParams::eo(), max_n);
    IdentityReport::scan("parity counts (1,1,2)", max_n as usize, |n| {
        let c = counter.parity_counts(n as u32);
        let ok = if n % 2 == 1 {
            c.odd == c.even
        } else {
            c.odd <= c.even
        };
        (!ok).then_some(None)
    })
}

pub fn check_phi_maps(max_n: u32) -> Result<IdentityReport> {
    let mut first_bad = None;
    for n in 0..=max_n {
        if !verify_phi_at(n)?.ok() {
            first_bad = Some(Mismatch {
                n: n as usize,
                r: None,
            });
            break;
        }
    }
    Ok(IdentityReport::new(
        "phi and psi (1,1,2)",
        max_n as usize,
        first_bad,
    ))
}

/// |CP^e(n) \ φ(CP^o(n))| = |complement(n)| = [q^n] (-q²;q²)_∞/(q²;q⁴)_∞.
pub fn check_complement(max_n: u32) -> Result<IdentityReport> {
    let order = max_n as usize;
    let series = complement_product(order);
    let mut bad = series
        .first_difference(&complement_product_squared_form(order))
        .map(|n| Mismatch { n, r: None });
    if bad.is_none() {
        for n in 0..=max_n {
            let c = verify_phi_at(n)?;
            let coeff = &series.coeffs()[n as usize];
            let listed = complement_enumerate(n).len();
            if !(c.ok()
                && BigInt::from(c.even - c.image) == *coeff
                && BigInt::from(listed) == *coeff)
            {
                bad = Some(Mismatch {
                    n: n as usize,
                    r: None,
                });
                break;
            }
        }
    }
    Ok(IdentityReport::new("complement count", order, bad))
}

/// cp_{1,1,2}(n) against the filter over all partitions of 2n.
pub fn check_eo_star(max_n: u32) -> IdentityReport {
    let counter = CopartitionCounter::new(CopParams::eo(), max_n);
    IdentityReport::scan("eo-star correspondence", max_n as usize, |n| {
        let filtered = generate(2 * n as u32, PartSpec::any(), None)
            .iter()
            .filter(|p| is_eo_star(p))
            .count();
        let cp = counter.parity_counts(n as u32).total;
        (cp != BigInt::from(filtered)).then_some(None)
    })
}

/// Every suite at its default range.
pub fn run_all() -> Result<Vec<(Suite, Vec<IdentityReport>)>> {
    Suite::ALL
        .into_iter()
        .map(|s| Ok((s, s.run(None)?)))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn names_round_trip() {
        for s in Suite::ALL {
            assert_eq!(s.name().parse::<Suite>().unwrap(), s);
            assert_eq!(s.alias().parse::<Suite>().unwrap(), s);
        }
        assert!("nope".parse::<Suite>().is_err());
    }

    #[test]
    fn quick_suites() {
        for s in Suite::ALL {
            let reports = s.run(Some(8)).unwrap();
            assert!(reports.iter().all(|r| r.passed()), "{s}: {reports:?}");
        }
    }
}
