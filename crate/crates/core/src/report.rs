//! Outcome of an identity check: how far the coefficients agreed and where
//! the first disagreement sits.

use std::fmt;

use serde::Serialize;
use serde_json::Value;

use crate::error::{Error, Result};
use crate::ring::{CoefficientRing, Poly1};
use crate::series::TruncatedSeries;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Mismatch {
    pub n: usize,
    pub r: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct IdentityReport {
    pub identity: String,
    /// Every coefficient up to and including this index agrees.
    pub order_verified: Option<usize>,
    pub mismatch: Option<Mismatch>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

impl IdentityReport {
    pub fn new(identity: impl Into<String>, order: usize, mismatch: Option<Mismatch>) -> Self {
        let order_verified = match mismatch {
            Some(Mismatch { n, .. }) => n.checked_sub(1),
            None => Some(order),
        };
        Self {
            identity: identity.into(),
            order_verified,
            mismatch,
            notes: Vec::new(),
        }
    }

    /// Runs `check(n)` for n = 0..=order and stops at the first failure.
    pub fn scan(
        identity: impl Into<String>,
        order: usize,
        mut check: impl FnMut(usize) -> Option<Option<usize>>,
    ) -> Self {
        let mismatch = (0..=order).find_map(|n| check(n).map(|r| Mismatch { n, r }));
        Self::new(identity, order, mismatch)
    }

    /// Coefficientwise comparison up to the smaller of the two orders.
    pub fn compare<R: CoefficientRing>(
        identity: impl Into<String>,
        lhs: &TruncatedSeries<R>,
        rhs: &TruncatedSeries<R>,
    ) -> Self {
        let order = lhs.order().min(rhs.order());
        let mismatch = lhs.first_difference(rhs).map(|n| Mismatch { n, r: None });
        Self::new(identity, order, mismatch)
    }

    /// Like [`compare`](Self::compare) but also reports the lowest differing
    /// power of `z`.
    pub fn compare_z(
        identity: impl Into<String>,
        lhs: &TruncatedSeries<Poly1>,
        rhs: &TruncatedSeries<Poly1>,
    ) -> Self {
        let order = lhs.order().min(rhs.order());
        let mismatch = lhs.first_difference(rhs).map(|n| Mismatch {
            n,
            r: lowest_z_difference(&lhs.coeffs()[n], &rhs.coeffs()[n]),
        });
        Self::new(identity, order, mismatch)
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Self {
        self.notes.push(note.into());
        self
    }

    /// Combines sub-checks: the earliest mismatch wins.
    pub fn merge(identity: impl Into<String>, parts: &[IdentityReport]) -> Self {
        let order = parts
            .iter()
            .filter_map(|p| p.mismatch.is_none().then_some(p.order_verified).flatten())
            .min()
            .unwrap_or(0);
        let mismatch = parts
            .iter()
            .filter_map(|p| p.mismatch)
            .min_by_key(|m| (m.n, m.r));
        let mut out = Self::new(identity, order, mismatch);
        if mismatch.is_some() {
            out.order_verified = mismatch.and_then(|m| m.n.checked_sub(1));
        }
        out.notes = parts.iter().flat_map(|p| p.notes.iter().cloned()).collect();
        out
    }

    pub fn passed(&self) -> bool {
        self.mismatch.is_none()
    }

    pub fn ensure(self) -> Result<Self> {
        match self.mismatch {
            None => Ok(self),
            Some(Mismatch { n, r }) => Err(Error::MismatchFound {
                identity: self.identity,
                n,
                r,
            }),
        }
    }

    pub fn to_json(&self) -> Value {
        serde_json::to_value(self).expect("report serializes")
    }
}

fn lowest_z_difference(a: &Poly1, b: &Poly1) -> Option<usize> {
    let d = a.clone() - b.clone();
    d.terms().map(|(e, _)| e[0] as usize).min()
}

impl fmt::Display for IdentityReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.mismatch, self.order_verified) {
            (None, Some(order)) => write!(f, "PASS {} (order {order})", self.identity),
            (None, None) => write!(f, "PASS {}", self.identity),
            (Some(Mismatch { n, r: None }), _) => write!(f, "FAIL {} at n={n}", self.identity),
            (Some(Mismatch { n, r: Some(r) }), _) => {
                write!(f, "FAIL {} at n={n}, r={r}", self.identity)
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::IntSeries;
    use num_bigint::BigInt;
    use serde_json::json;

    fn s(v: &[i64]) -> IntSeries {
        IntSeries::from_coeffs(v.iter().map(|&c| BigInt::from(c)).collect())
    }

    #[test]
    fn json_shape() {
        let ok = IdentityReport::compare("x", &s(&[1, 2, 3]), &s(&[1, 2, 3]));
        assert_eq!(
            ok.to_json(),
            json!({"identity": "x", "orderVerified": 2, "mismatch": null})
        );
        let bad = IdentityReport::compare("x", &s(&[1, 2, 3]), &s(&[1, 5, 3]));
        assert_eq!(
            bad.to_json(),
            json!({"identity": "x", "orderVerified": 0, "mismatch": {"n": 1, "r": null}})
        );
        assert!(matches!(
            bad.ensure(),
            Err(Error::MismatchFound { n: 1, .. })
        ));
    }

    #[test]
    fn z_location() {
        let z = Poly1::var(0);
        let a = TruncatedSeries::from_coeffs(vec![Poly1::constant(1), z.clone() + z.clone()]);
        let b = TruncatedSeries::from_coeffs(vec![Poly1::constant(1), z]);
        let r = IdentityReport::compare_z("z", &a, &b);
        assert_eq!(r.mismatch, Some(Mismatch { n: 1, r: Some(1) }));
        assert_eq!(r.to_string(), "FAIL z at n=1, r=1");
    }

    #[test]
    fn merge_takes_earliest() {
        let a = IdentityReport::new("a", 10, None);
        let b = IdentityReport::new("b", 10, Some(Mismatch { n: 4, r: None }));
        let m = IdentityReport::merge("ab", &[a.clone(), b]);
        assert_eq!(m.order_verified, Some(3));
        assert_eq!(IdentityReport::merge("a", &[a]).order_verified, Some(10));
    }
}
