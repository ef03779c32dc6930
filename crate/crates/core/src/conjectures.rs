//! Positivity scans for the parity-difference products and the finite
//! truncations g_{a,b,m}(N, M), plus the identities they are anchored by.
//!
//! A negative coefficient found by a scan is a result, not an error.

use num_bigint::BigInt;
use num_traits::Signed;
use serde::Serialize;
use serde_json::{json, Value};

use crate::copartition::{CopParams, CopartitionCounter};
use crate::error::{Error, Result};
use crate::products::{equal_residue_product, finite_product, weighted_product};
use crate::report::{IdentityReport, Mismatch};
use crate::IntSeries;

/// `(-q^{a+b};q^m)_∞ / ((-q^a;q^m)_∞ (q^b;q^m)_∞)` to `order`.
pub fn infinite_product_series(params: CopParams, order: usize) -> IntSeries {
    weighted_product(params, order)
}

/// g_{a,b,m}(N, M; q) to `order`.
pub fn finite_product_series(
    params: CopParams,
    big_n: usize,
    big_m: usize,
    order: usize,
) -> IntSeries {
    finite_product(params, big_n, big_m, order)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NegativeCoeff {
    pub n: usize,
    #[serde(serialize_with = "as_decimal")]
    pub value: BigInt,
}

fn as_decimal<S: serde::Serializer>(v: &BigInt, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&v.to_string())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct ScanResult {
    pub params: CopParams,
    /// (N, M) for finite-product scans.
    #[serde(skip)]
    pub bounds: Option<(usize, usize)>,
    pub order_scanned: usize,
    pub first_negative: Option<NegativeCoeff>,
    /// Whether the tuple satisfies the hypotheses under which positivity is
    /// expected.
    pub in_scope: bool,
}

impl ScanResult {
    fn of(
        params: CopParams,
        bounds: Option<(usize, usize)>,
        series: &IntSeries,
        in_scope: bool,
    ) -> Self {
        Self {
            params,
            bounds,
            order_scanned: series.order(),
            first_negative: series
                .find_coeff(|c| c.is_negative())
                .map(|(n, value)| NegativeCoeff { n, value }),
            in_scope,
        }
    }

    pub fn is_clean(&self) -> bool {
        self.first_negative.is_none()
    }

    pub fn to_json(&self) -> Value {
        let mut v = serde_json::to_value(self).expect("scan result serializes");
        if let Some((n, m)) = self.bounds {
            v["params"]["N"] = json!(n);
            v["params"]["M"] = json!(m);
        }
        v
    }

    /// One row `a,b,m,N,M,order,first_negative_n,first_negative_value`; N and
    /// M are blank for infinite products and the last two for clean scans.
    pub fn csv_row(&self) -> String {
        let CopParams { a, b, m } = self.params;
        let (bn, bm) = match self.bounds {
            Some((n, m)) => (n.to_string(), m.to_string()),
            None => (String::new(), String::new()),
        };
        let (nn, nv) = match &self.first_negative {
            Some(neg) => (neg.n.to_string(), neg.value.to_string()),
            None => (String::new(), String::new()),
        };
        format!("{a},{b},{m},{bn},{bm},{},{nn},{nv}", self.order_scanned)
    }
}

pub const SCAN_CSV_HEADER: &str = "a,b,m,N,M,order,first_negative_n,first_negative_value";

/// First negative coefficient, if any, of the infinite product. In scope when b | a.
pub fn scan_positivity(params: CopParams, order: usize) -> ScanResult {
    let in_scope = params.a.is_multiple_of(params.b);
    ScanResult::of(
        params,
        None,
        &infinite_product_series(params, order),
        in_scope,
    )
}

/// All (a, b, m) with a ≤ max_a, b ≤ max_b, m ≤ max_m, in lexicographic order;
/// only b | a when `divisible_only`.
pub fn positivity_grid(max_a: u32, max_b: u32, max_m: u32, divisible_only: bool) -> Vec<CopParams> {
    let mut out = Vec::new();
    for a in 1..=max_a {
        for b in 1..=max_b {
            if divisible_only && a % b != 0 {
                continue;
            }
            for m in 1..=max_m {
                out.push(CopParams { a, b, m });
            }
        }
    }
    out
}

/// The (a,a,m) product equals `(-q^{2a};q^m)_∞ / (q^{2a};q^{2m})_∞` and has
/// non-negative coefficients; the first `enumeration_order` coefficients are
/// also compared against cp^e - cp^o from enumeration.
pub fn check_equal_residue(
    a: u32,
    m: u32,
    order: usize,
    enumeration_order: usize,
) -> Result<IdentityReport> {
    let params = CopParams::new(a, a, m)?;
    let lhs = infinite_product_series(params, order);
    let rhs = equal_residue_product(a, m, order);
    let name = format!("equal-residue simplification {params}");
    let identity = IdentityReport::compare("product = simplified", &lhs, &rhs);
    let positivity = match rhs.find_coeff(|c| c.is_negative()) {
        Some((n, _)) => IdentityReport::new("non-negative", order, Some(Mismatch { n, r: None })),
        None => IdentityReport::new("non-negative", order, None),
    };
    let e = enumeration_order.min(order);
    let counter = CopartitionCounter::new(params, e as u32);
    let enumerated = IdentityReport::scan("enumeration", e, |n| {
        (counter.parity_counts(n as u32).difference() != lhs.coeffs()[n]).then_some(None)
    });
    let mut out = IdentityReport::merge(name, &[identity, positivity, enumerated]);
    if out.passed() {
        out.order_verified = Some(order);
    }
    Ok(out)
}

/// g(N,M) = g(N,M-1) + q^{mM-a} g(N-1,M), both sides from the product form.
pub fn check_recursion(
    params: CopParams,
    big_n: usize,
    big_m: usize,
    order: usize,
) -> Result<IdentityReport> {
    if big_n == 0 || big_m == 0 {
        return Err(Error::BadParams("recursion needs N, M ≥ 1".into()));
    }
    let shift = (params.m as usize * big_m)
        .checked_sub(params.a as usize)
        .ok_or_else(|| Error::BadParams(format!("mM - a is negative for {params}, M={big_m}")))?;
    let lhs = finite_product(params, big_n, big_m, order);
    let rhs = &finite_product(params, big_n, big_m - 1, order)
        + &finite_product(params, big_n - 1, big_m, order).shift(shift);
    Ok(IdentityReport::compare(
        format!("finite recursion {params} N={big_n} M={big_m}"),
        &lhs,
        &rhs,
    ))
}

/// Truncation order used when a finite scan does not fix one.
pub fn default_finite_order(params: CopParams, big_n: usize, big_m: usize) -> usize {
    params.m as usize * (big_n + big_m)
}

/// Scans g(N, M) for 1 ≤ N ≤ max_n, 1 ≤ M ≤ max_m. Tuples with N > M are
/// skipped unless `include_outside`; scope requires N ≤ M, b | a and a + b = m.
pub fn scan_finite_positivity(
    params: CopParams,
    max_n: usize,
    max_m: usize,
    order: Option<usize>,
    include_outside: bool,
) -> Vec<ScanResult> {
    let family = params.a.is_multiple_of(params.b) && params.a + params.b == params.m;
    let mut out = Vec::new();
    for big_n in 1..=max_n {
        for big_m in 1..=max_m {
            if big_n > big_m && !include_outside {
                continue;
            }
            let ord = order.unwrap_or_else(|| default_finite_order(params, big_n, big_m));
            let series = finite_product_series(params, big_n, big_m, ord);
            out.push(ScanResult::of(
                params,
                Some((big_n, big_m)),
                &series,
                family && big_n <= big_m,
            ));
        }
    }
    out
}

/// Infinite-product coefficients against enumerated cp^e - cp^o.
pub fn check_parity_difference(params: CopParams, order: usize) -> IdentityReport {
    let series = infinite_product_series(params, order);
    let counter = CopartitionCounter::new(params, order as u32);
    IdentityReport::scan(format!("parity difference {params}"), order, |n| {
        let d = counter.parity_counts(n as u32).difference();
        (d != series.coeffs()[n]).then_some(None)
    })
}

/// Scan results that found a negative coefficient.
pub fn negatives(results: &[ScanResult]) -> impl Iterator<Item = &ScanResult> {
    results.iter().filter(|r| !r.is_clean())
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::{One, Zero};

    #[test]
    fn constant_terms() {
        let p = CopParams::new(3, 1, 4).unwrap();
        assert!(infinite_product_series(p, 3).coeffs()[0].is_one());
        assert!(finite_product_series(p, 2, 2, 3).coeffs()[0].is_one());
    }

    #[test]
    fn anchors_have_no_negatives() {
        assert!(scan_positivity(CopParams::eo(), 200).is_clean());
        assert!(scan_positivity(CopParams::new(3, 1, 4).unwrap(), 200).is_clean());
    }

    #[test]
    fn non_divisible_negative_is_reported() {
        let r = scan_positivity(CopParams::new(1, 2, 3).unwrap(), 60);
        assert!(!r.in_scope);
        let neg = r
            .first_negative
            .expect("(1,2,3) has a negative coefficient");
        assert!(neg.value < BigInt::zero());
    }

    #[test]
    fn equal_residue_small() {
        assert!(check_equal_residue(1, 2, 60, 30).unwrap().passed());
        assert!(check_equal_residue(2, 3, 40, 25).unwrap().passed());
    }

    #[test]
    fn recursion_examples() {
        assert!(check_recursion(CopParams::eo(), 3, 4, 40).unwrap().passed());
        assert!(check_recursion(CopParams::eo(), 1, 3, 40).unwrap().passed());
        assert!(check_recursion(CopParams::new(2, 1, 3).unwrap(), 2, 5, 40)
            .unwrap()
            .passed());
        assert!(check_recursion(CopParams::eo(), 0, 3, 40).is_err());
    }

    #[test]
    fn finite_tends_to_infinite() {
        let g = finite_product_series(CopParams::eo(), 30, 30, 20);
        assert_eq!(g, infinite_product_series(CopParams::eo(), 20));
    }

    #[test]
    fn finite_scan_flags_outside() {
        let inside = scan_finite_positivity(CopParams::eo(), 3, 3, Some(30), false);
        assert_eq!(inside.len(), 6);
        assert!(inside.iter().all(|r| r.in_scope && r.is_clean()));
        let all = scan_finite_positivity(CopParams::eo(), 2, 1, Some(10), true);
        let n2m1 = all.iter().find(|r| r.bounds == Some((2, 1))).unwrap();
        assert!(!n2m1.in_scope);
        assert_eq!(n2m1.first_negative.as_ref().map(|x| x.n), Some(3));
    }

    #[test]
    fn output_shapes() {
        let r = ScanResult::of(
            CopParams::eo(),
            Some((1, 2)),
            &IntSeries::from_coeffs(vec![BigInt::one(), BigInt::from(-3)]),
            true,
        );
        assert_eq!(r.csv_row(), "1,1,2,1,2,1,1,-3");
        assert_eq!(
            r.to_json(),
            json!({
                "params": {"a": 1, "b": 1, "m": 2, "N": 1, "M": 2},
                "orderScanned": 1,
                "firstNegative": {"n": 1, "value": "-3"},
                "inScope": true,
            })
        );
        assert_eq!(scan_positivity(CopParams::eo(), 5).csv_row(), "1,1,2,,,5,,");
    }

    #[test]
    fn parity_difference_small() {
        assert!(check_parity_difference(CopParams::new(2, 1, 3).unwrap(), 20).passed());
    }
}
