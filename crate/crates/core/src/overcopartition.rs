//! Overcopartitions: copartitions in which the first occurrence of each part
//! size of the ground or the sky may be overlined.
//!
//! Counts are taken two ways: by the weight `(1+z)^dv` on each base
//! copartition, and by materializing every overline choice. Both are checked
//! against the double sum over rectangle shapes and the closed form.

use std::collections::{BTreeMap, BTreeSet, HashSet, VecDeque};
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde_json::{json, Value};

use crate::bijection::SkyGroundPair;
use crate::copartition::{enumerate, CopParams, Copartition};
use crate::error::{Error, Result};
use crate::partition::{generate, PartSpec, Partition};
use crate::products::{
    over_closed_form, over_double_sum, over_weighted_difference_product, substitute_z_shift,
    OverlineWeight,
};
use crate::report::{IdentityReport, Mismatch};
use crate::ring::Poly1;
use crate::ZSeries;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Overcopartition {
    base: Copartition,
    ground_overlined: BTreeSet<u32>,
    sky_overlined: BTreeSet<u32>,
}

impl Overcopartition {
    pub fn new(
        base: Copartition,
        ground_overlined: BTreeSet<u32>,
        sky_overlined: BTreeSet<u32>,
    ) -> Result<Self> {
        let gd = base.ground().distinct_parts();
        let sd = base.sky().distinct_parts();
        if let Some(p) = ground_overlined.difference(&gd).next() {
            return Err(Error::InvalidOverlines(format!(
                "{p} is not a ground part size"
            )));
        }
        if let Some(p) = sky_overlined.difference(&sd).next() {
            return Err(Error::InvalidOverlines(format!(
                "{p} is not a sky part size"
            )));
        }
        Ok(Self {
            base,
            ground_overlined,
            sky_overlined,
        })
    }

    pub fn plain(base: Copartition) -> Self {
        Self {
            base,
            ground_overlined: BTreeSet::new(),
            sky_overlined: BTreeSet::new(),
        }
    }

    pub fn base(&self) -> &Copartition {
        &self.base
    }

    pub fn ground_overlined(&self) -> &BTreeSet<u32> {
        &self.ground_overlined
    }

    pub fn sky_overlined(&self) -> &BTreeSet<u32> {
        &self.sky_overlined
    }

    /// r, the number of overlined parts.
    pub fn overline_count(&self) -> usize {
        self.ground_overlined.len() + self.sky_overlined.len()
    }

    pub fn size(&self) -> u64 {
        self.base.size()
    }

    pub fn to_json(&self) -> Value {
        let mut v = self.base.to_json();
        v["groundOverlined"] = json!(self.ground_overlined);
        v["skyOverlined"] = json!(self.sky_overlined);
        v
    }
}

fn fmt_over(p: &Partition, over: &BTreeSet<u32>) -> String {
    let mut seen = BTreeSet::new();
    let parts: Vec<String> = p
        .parts()
        .iter()
        .map(|&x| {
            if seen.insert(x) && over.contains(&x) {
                format!("{x}\u{305}")
            } else {
                x.to_string()
            }
        })
        .collect();
    format!("({})", parts.join(","))
}

impl fmt::Display for Overcopartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "({}, {}, {})",
            fmt_over(self.base.ground(), &self.ground_overlined),
            self.base.rho(),
            fmt_over(self.base.sky(), &self.sky_overlined)
        )
    }
}

fn subsets(set: &BTreeSet<u32>) -> Vec<BTreeSet<u32>> {
    let items: Vec<u32> = set.iter().copied().collect();
    (0u64..1 << items.len())
        .map(|mask| {
            items
                .iter()
                .enumerate()
                .filter(|(i, _)| mask >> i & 1 == 1)
                .map(|(_, &x)| x)
                .collect()
        })
        .collect()
}

/// All 2^dv overline choices on one base.
pub fn overline_choices(base: &Copartition) -> Vec<Overcopartition> {
    let gs = subsets(&base.ground().distinct_parts());
    let ss = subsets(&base.sky().distinct_parts());
    let mut out = Vec::with_capacity(gs.len() * ss.len());
    for g in &gs {
        for s in &ss {
            out.push(Overcopartition {
                base: base.clone(),
                ground_overlined: g.clone(),
                sky_overlined: s.clone(),
            });
        }
    }
    out
}

pub fn enumerate_over(params: CopParams, n: u32) -> Vec<Overcopartition> {
    enumerate(params, n)
        .iter()
        .flat_map(overline_choices)
        .collect()
}

/// `(1+z)^dv`.
pub fn diversity_weight(dv: usize) -> Poly1 {
    let mut c = BigInt::one();
    let mut out = Poly1::zero();
    for r in 0..=dv {
        out = out + Poly1::monomial([r as u32], c.clone());
        c = c * BigInt::from(dv - r) / BigInt::from(r + 1);
    }
    out
}

fn poly_to_map(p: &Poly1) -> BTreeMap<usize, BigInt> {
    p.terms().map(|(e, c)| (e[0] as usize, c.clone())).collect()
}

/// Σ over bases of 2^dv.
pub fn count_over(params: CopParams, n: u32) -> BigInt {
    enumerate(params, n)
        .iter()
        .map(|c| BigInt::one() << c.diversity())
        .sum()
}

/// r ↦ number of overcopartitions of size n with r overlined parts.
pub fn count_over_by_r(params: CopParams, n: u32) -> BTreeMap<usize, BigInt> {
    poly_to_map(&weighted_polynomial(&enumerate(params, n), false))
}

fn weighted_polynomial(bases: &[Copartition], signed: bool) -> Poly1 {
    let mut by_dv: BTreeMap<usize, BigInt> = BTreeMap::new();
    for c in bases {
        let sign = if signed && c.ground_parts() % 2 == 1 {
            -1
        } else {
            1
        };
        *by_dv.entry(c.diversity()).or_default() += sign;
    }
    by_dv.into_iter().fold(Poly1::zero(), |acc, (dv, k)| {
        acc + diversity_weight(dv) * Poly1::constant(k)
    })
}

/// Σ_n Σ_r cp̄(r, n) z^r q^n from the diversity weighting.
pub fn over_series(params: CopParams, order: usize) -> ZSeries {
    ZSeries::from_coeffs(
        (0..=order as u32)
            .map(|n| weighted_polynomial(&enumerate(params, n), false))
            .collect(),
    )
}

/// Σ_n Σ_r (cp̄^e(r, n) - cp̄^o(r, n)) z^r q^n, parity by number of ground parts.
pub fn over_series_signed(params: CopParams, order: usize) -> ZSeries {
    ZSeries::from_coeffs(
        (0..=order as u32)
            .map(|n| weighted_polynomial(&enumerate(params, n), true))
            .collect(),
    )
}

/// Same series by materializing every overcopartition and reading off r.
pub fn materialized_series(params: CopParams, order: usize) -> ZSeries {
    ZSeries::from_coeffs(
        (0..=order as u32)
            .map(|n| {
                let mut by_r: BTreeMap<usize, BigInt> = BTreeMap::new();
                for o in enumerate_over(params, n) {
                    *by_r.entry(o.overline_count()).or_default() += 1;
                }
                by_r.into_iter().fold(Poly1::zero(), |acc, (r, k)| {
                    acc + Poly1::monomial([r as u32], k)
                })
            })
            .collect(),
    )
}

/// The `(1+z)^dv` weighting against direct overlining, as z-polynomials.
pub fn check_diversity_weighting(params: CopParams, order: usize) -> IdentityReport {
    IdentityReport::compare_z(
        format!("diversity weighting {params}"),
        &over_series(params, order),
        &materialized_series(params, order),
    )
}

/// Enumeration, double sum over rectangle shapes, and closed form must agree
/// as polynomials in z at every q^n up to `order`.
pub fn check_phi_one_identity(params: CopParams, order: usize) -> IdentityReport {
    let enumerated = over_series(params, order);
    let double = over_double_sum(params, order, OverlineWeight::Standard);
    let closed = over_closed_form(params, order, OverlineWeight::Standard);
    let name = format!("overcopartition generating function {params}");
    IdentityReport::merge(
        name,
        &[
            IdentityReport::compare_z("enumeration = double sum", &enumerated, &double),
            IdentityReport::compare_z("double sum = closed form", &double, &closed),
        ],
    )
}

/// The `(-zq^m;q^m)` variant of both sums equals the standard series after
/// `z -> z q^m`; it does not count overlined parts directly.
pub fn check_shifted_weight(params: CopParams, order: usize) -> IdentityReport {
    let m = params.m as usize;
    let closed = over_closed_form(params, order, OverlineWeight::Standard);
    let shifted = substitute_z_shift(&closed, m);
    let name = format!("shifted overline weight {params}");
    IdentityReport::merge(
        name,
        &[
            IdentityReport::compare_z(
                "shifted double sum",
                &over_double_sum(params, order, OverlineWeight::Shifted),
                &shifted,
            ),
            IdentityReport::compare_z(
                "shifted closed form",
                &over_closed_form(params, order, OverlineWeight::Shifted),
                &shifted,
            ),
        ],
    )
}

/// Signed diversity-weighted (a,a,2a) series against its product form; also
/// requires every z-polynomial coefficient to be non-negative.
pub fn check_weighted_over_difference(a: u32, order: usize) -> Result<IdentityReport> {
    let params = CopParams::new(a, a, 2 * a)?;
    let lhs = over_series_signed(params, order);
    let rhs = over_weighted_difference_product(a, order);
    let mut report = IdentityReport::compare_z(
        format!("weighted overcopartition difference a={a}"),
        &lhs,
        &rhs,
    );
    if report.passed() {
        if let Some((n, _)) = rhs.find_coeff(|p| !p.is_nonnegative()) {
            report = IdentityReport::new(report.identity, order, Some(Mismatch { n, r: None }))
                .with_note("negative z-coefficient");
        }
    }
    Ok(report)
}

/// cp̄(n), cp̄^e(n), cp̄^o(n) for (1,1,2) via 2^dv weights.
pub fn over_parity_counts(n: u32) -> (BigInt, BigInt) {
    let mut even = BigInt::zero();
    let mut odd = BigInt::zero();
    for c in enumerate(CopParams::eo(), n) {
        let w = BigInt::one() << c.diversity();
        if c.ground_parts() % 2 == 0 {
            even += w;
        } else {
            odd += w;
        }
    }
    (even, odd)
}

/// cp̄^o(n) = cp̄^e(n) for odd n and cp̄^o(n) ≤ cp̄^e(n) for even n.
pub fn check_over_parity_inequality(max_n: u32) -> IdentityReport {
    IdentityReport::scan("overcopartition parity inequality", max_n as usize, |n| {
        let (e, o) = over_parity_counts(n as u32);
        let ok = if n % 2 == 1 { e == o } else { o <= e };
        (!ok).then_some(None)
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EobarCounts {
    /// Largest even part ≡ 0 (mod 4), or no even part at all.
    pub eobar0: BigInt,
    /// Largest even part ≡ 2 (mod 4).
    pub eobar2: BigInt,
}

/// Convention used for the empty overpartition and for overpartitions with no
/// even part.
pub const EOBAR_READING: &str =
    "overpartitions with no even part (all multiplicities even), including the empty one, count in class 0";

/// Overpartitions of n whose even parts are all smaller than the odd parts and
/// whose largest even part is the only part size of odd multiplicity, split by
/// that part mod 4. Overlines do not affect the condition, so each partition
/// contributes 2^dv.
pub fn eobar_counts(n: u32) -> EobarCounts {
    let mut out = EobarCounts {
        eobar0: BigInt::zero(),
        eobar2: BigInt::zero(),
    };
    for p in generate(n, PartSpec::any(), None) {
        if !is_eo_bar_shape(&p) {
            continue;
        }
        let w = BigInt::one() << p.diversity();
        if p.largest_even() % 4 == 2 {
            out.eobar2 += w;
        } else {
            out.eobar0 += w;
        }
    }
    out
}

// Stated independently of the copartition module's filter so the two can
// be compared.
fn is_eo_bar_shape(p: &Partition) -> bool {
    let mult = p.multiplicities();
    let le = p.largest_even();
    let min_odd = p.parts().iter().filter(|&&x| x % 2 == 1).min().copied();
    if let Some(mo) = min_odd {
        if le > mo {
            return false;
        }
    }
    mult.iter().all(|(&part, &k)| (k % 2 == 1) == (part == le))
}

/// eobar via the copartition correspondence: class 0 at size 2k is cp̄^e(k),
/// class 2 is cp̄^o(k); odd sizes are empty.
pub fn eobar_from_copartitions(n: u32) -> EobarCounts {
    if n % 2 == 1 {
        return EobarCounts {
            eobar0: BigInt::zero(),
            eobar2: BigInt::zero(),
        };
    }
    let (e, o) = over_parity_counts(n / 2);
    EobarCounts {
        eobar0: e,
        eobar2: o,
    }
}

/// Equality for 4 ∤ n, eobar2 ≤ eobar0 for 4 | n, and agreement with the
/// copartition correspondence.
pub fn check_eobar(max_n: u32) -> IdentityReport {
    IdentityReport::scan("eo-bar inequality", max_n as usize, |n| {
        let d = eobar_counts(n as u32);
        let ok = d == eobar_from_copartitions(n as u32)
            && if n % 4 == 0 {
                d.eobar2 <= d.eobar0
            } else {
                d.eobar2 == d.eobar0
            };
        (!ok).then_some(None)
    })
    .with_note(EOBAR_READING)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
enum Slot {
    Ground(u32),
    Sky(u32),
}

// Distinct parts d_1 > d_2 > … of a partition and of its conjugate pair up
// through the corners of the diagram: d_i ↔ #{parts ≥ d_i}.
fn corner_map(p: &Partition) -> BTreeMap<u32, u32> {
    p.distinct_parts()
        .into_iter()
        .map(|d| (d, p.parts().iter().filter(|&&x| x >= d).count() as u32))
        .collect()
}

/// φ lifted to overcopartitions. Flags on surviving part sizes stay put; a
/// part size that `f` creates in σ̃ takes the flag of the γ̃ part size that
/// vanishes, created and vanished sizes being paired in order of occurrence.
pub fn phi_over(o: &Overcopartition) -> Result<Overcopartition> {
    let c = o.base();
    let start = SkyGroundPair::from_copartition(c)?;
    let trace = start.phi()?;
    let width = 2 * c.ground_parts() as u32;

    let mut flags: BTreeMap<Slot, bool> = BTreeMap::new();
    let cm = corner_map(c.ground());
    for (&d, &e) in &cm {
        flags.insert(Slot::Ground(e), o.ground_overlined.contains(&d));
    }
    for d in c.sky().distinct_parts() {
        flags.insert(Slot::Sky(d + width), o.sky_overlined.contains(&d));
    }

    let mut created: VecDeque<u32> = VecDeque::new();
    let mut vanished: VecDeque<bool> = VecDeque::new();
    for (before, _, after) in trace.transitions() {
        let gb = before.gamma().distinct_parts();
        let ga = after.gamma().distinct_parts();
        for gone in gb.difference(&ga) {
            vanished.push_back(flags.remove(&Slot::Ground(*gone)).expect("flag tracked"));
        }
        let sb = before.sigma().distinct_parts();
        for new in after.sigma().distinct_parts().difference(&sb) {
            created.push_back(*new);
        }
        while !created.is_empty() && !vanished.is_empty() {
            let s = created.pop_front().unwrap();
            flags.insert(Slot::Sky(s), vanished.pop_front().unwrap());
        }
    }
    if !created.is_empty() || !vanished.is_empty() {
        return Err(Error::OutsideDomain {
            map: "phi_over",
            reason: "diversity not preserved".into(),
        });
    }

    let target = trace.end().to_copartition()?;
    let tw = 2 * target.ground_parts() as u32;
    let back: BTreeMap<u32, u32> = corner_map(target.ground())
        .into_iter()
        .map(|(d, e)| (e, d))
        .collect();
    let mut g_over = BTreeSet::new();
    let mut s_over = BTreeSet::new();
    for (slot, on) in flags {
        if !on {
            continue;
        }
        match slot {
            Slot::Ground(e) => {
                g_over.insert(back[&e]);
            }
            Slot::Sky(s) => {
                s_over.insert(s - tw);
            }
        }
    }
    Overcopartition::new(target, g_over, s_over)
}

/// The lift sends odd-ground overcopartitions of each size ≤ `max_n` to
/// distinct even-ground overcopartitions, keeping r.
pub fn check_phi_over_injective(max_n: u32) -> Result<IdentityReport> {
    for n in 0..=max_n {
        let mut seen = HashSet::new();
        for c in enumerate(CopParams::eo(), n) {
            if c.ground_parts() % 2 == 0 {
                continue;
            }
            for o in overline_choices(&c) {
                let img = phi_over(&o)?;
                let ok = img.base().ground_parts() % 2 == 0
                    && img.overline_count() == o.overline_count()
                    && img.size() == o.size()
                    && seen.insert(img);
                if !ok {
                    return Ok(IdentityReport::new(
                        "lifted phi injective",
                        max_n as usize,
                        Some(Mismatch {
                            n: n as usize,
                            r: Some(o.overline_count()),
                        }),
                    ));
                }
            }
        }
    }
    Ok(IdentityReport::new(
        "lifted phi injective",
        max_n as usize,
        None,
    ))
}

/// CSV rows `n,r,count`.
pub fn by_r_csv(n: u32, table: &BTreeMap<usize, BigInt>) -> String {
    table
        .iter()
        .map(|(r, c)| format!("{n},{r},{c}\n"))
        .collect()
}

pub const BY_R_CSV_HEADER: &str = "n,r,count";

#[cfg(test)]
mod tests {
    use super::*;

    fn p(v: &[u32]) -> Partition {
        Partition::new(v.to_vec()).unwrap()
    }

    fn m(v: &[(usize, i64)]) -> BTreeMap<usize, BigInt> {
        v.iter().map(|&(r, c)| (r, BigInt::from(c))).collect()
    }

    #[test]
    fn small_counts() {
        let eo = CopParams::eo();
        assert_eq!(count_over(eo, 0), BigInt::from(1));
        assert_eq!(count_over(eo, 1), BigInt::from(4));
        assert!(check_diversity_weighting(eo, 8).passed());
        assert_eq!(count_over_by_r(eo, 0), m(&[(0, 1)]));
        assert_eq!(count_over_by_r(eo, 1), m(&[(0, 2), (1, 2)]));
    }

    #[test]
    fn binomial_weight() {
        assert_eq!(diversity_weight(0), Poly1::one());
        assert_eq!(diversity_weight(3).eval(&[BigInt::one()]), BigInt::from(8));
        assert_eq!(diversity_weight(4).coeff(&[2]), BigInt::from(6));
    }

    #[test]
    fn choices_are_two_to_dv() {
        let c = Copartition::new(CopParams::eo(), p(&[3, 3, 1]), p(&[5, 1])).unwrap();
        let all = overline_choices(&c);
        assert_eq!(all.len(), 16);
        assert_eq!(all.iter().map(|o| o.overline_count()).max(), Some(4));
    }

    #[test]
    fn invalid_overline() {
        let c = Copartition::new(CopParams::eo(), p(&[3]), p(&[])).unwrap();
        assert!(Overcopartition::new(c, BTreeSet::from([1]), BTreeSet::new()).is_err());
    }

    #[test]
    fn generating_function_small() {
        assert!(check_phi_one_identity(CopParams::eo(), 10).passed());
        assert!(check_phi_one_identity(CopParams::new(2, 1, 3).unwrap(), 8).passed());
        assert!(check_shifted_weight(CopParams::eo(), 10).passed());
    }

    #[test]
    fn shifted_weight_does_not_count_overlines() {
        let shifted = over_closed_form(CopParams::eo(), 4, OverlineWeight::Shifted);
        let enumerated = over_series(CopParams::eo(), 4);
        let r = IdentityReport::compare_z("shifted", &enumerated, &shifted);
        assert_eq!(r.mismatch, Some(Mismatch { n: 1, r: Some(1) }));
    }

    #[test]
    fn weighted_difference_small() {
        assert!(check_weighted_over_difference(1, 12).unwrap().passed());
    }

    #[test]
    fn eobar_small() {
        let zero = eobar_counts(0);
        assert_eq!(
            (zero.eobar0, zero.eobar2),
            (BigInt::from(1), BigInt::zero())
        );
        assert!(check_eobar(16).passed());
    }

    #[test]
    fn eobar_shape_matches_filter() {
        for n in 0..=16 {
            for q in generate(n, PartSpec::any(), None) {
                assert_eq!(
                    is_eo_bar_shape(&q),
                    crate::copartition::is_eo_star(&q),
                    "{q}"
                );
            }
        }
    }

    #[test]
    fn lifted_phi() {
        let c =
            Copartition::new(CopParams::eo(), p(&[9, 9, 9, 9, 5, 5, 3]), p(&[5, 5, 3])).unwrap();
        for o in overline_choices(&c) {
            let img = phi_over(&o).unwrap();
            assert_eq!(img.overline_count(), o.overline_count());
        }
        assert!(check_phi_over_injective(10).unwrap().passed());
    }

    #[test]
    fn display_marks_first_occurrence() {
        let c = Copartition::new(CopParams::eo(), p(&[3, 3]), p(&[1])).unwrap();
        let o = Overcopartition::new(c, BTreeSet::from([3]), BTreeSet::new()).unwrap();
        assert_eq!(o.to_string(), "((3\u{305},3), (4), (1))");
    }
}
