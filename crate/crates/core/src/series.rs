//! Truncated formal power series in `q`.
//!
//! A [`TruncatedSeries`] of order `N` stores `c_0..=c_N` and stands for
//! `Σ c_n q^n + O(q^{N+1})`. Binary operations truncate to the smaller order.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::de::{self, Deserializer};
use serde::ser::Serializer;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::ring::{CoefficientCodec, CoefficientRing};

#[derive(Clone, PartialEq)]
pub struct TruncatedSeries<R> {
    coeffs: Vec<R>,
}

/// Number of factors in a q-Pochhammer product.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Count {
    Finite(usize),
    Infinite,
}

impl<R: CoefficientRing> TruncatedSeries<R> {
    pub fn zero(order: usize) -> Self {
        Self {
            coeffs: vec![R::zero(); order + 1],
        }
    }

    pub fn one(order: usize) -> Self {
        Self::constant(R::one(), order)
    }

    pub fn constant(c: R, order: usize) -> Self {
        let mut s = Self::zero(order);
        s.coeffs[0] = c;
        s
    }

    /// `c q^exponent`, which is zero when `exponent > order`.
    pub fn monomial(c: R, exponent: usize, order: usize) -> Self {
        let mut s = Self::zero(order);
        if exponent <= order {
            s.coeffs[exponent] = c;
        }
        s
    }

    /// Builds a series from `c_0..=c_N`; the order is `coeffs.len() - 1`.
    ///
    /// Panics on an empty vector, which has no order.
    pub fn from_coeffs(coeffs: Vec<R>) -> Self {
        assert!(!coeffs.is_empty(), "a truncated series needs at least c_0");
        Self { coeffs }
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[R] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<R> {
        self.coeffs
    }

    pub fn coeff(&self, n: usize) -> Result<&R> {
        self.coeffs.get(n).ok_or(Error::IndexBeyondTruncation {
            index: n,
            order: self.order(),
        })
    }

    pub fn truncate(&self, order: usize) -> Self {
        let order = order.min(self.order());
        Self {
            coeffs: self.coeffs[..=order].to_vec(),
        }
    }

    /// Multiply by `q^k`, keeping the order.
    pub fn shift(&self, k: usize) -> Self {
        let mut out = Self::zero(self.order());
        for (i, c) in self.coeffs.iter().enumerate() {
            if i + k > self.order() {
                break;
            }
            out.coeffs[i + k] = c.clone();
        }
        out
    }

    pub fn scale(&self, c: &R) -> Self {
        Self {
            coeffs: self.coeffs.iter().map(|x| x.clone() * c.clone()).collect(),
        }
    }

    pub fn map_coeffs<S: CoefficientRing>(&self, f: impl Fn(&R) -> S) -> TruncatedSeries<S> {
        TruncatedSeries {
            coeffs: self.coeffs.iter().map(f).collect(),
        }
    }

    /// The reciprocal, via `t_n = -c_0^{-1} Σ_{k=1..n} c_k t_{n-k}`.
    pub fn invert(&self) -> Result<Self> {
        let inv0 = self.coeffs[0]
            .unit_inverse()
            .ok_or(Error::NonUnitConstantTerm)?;
        let n = self.order();
        let mut t: Vec<R> = Vec::with_capacity(n + 1);
        t.push(inv0.clone());
        let neg_inv0 = -inv0;
        for i in 1..=n {
            let mut acc = R::zero();
            for k in 1..=i {
                acc.add_product(&self.coeffs[k], &t[i - k]);
            }
            t.push(acc * neg_inv0.clone());
        }
        Ok(Self { coeffs: t })
    }

    pub fn div(&self, denominator: &Self) -> Result<Self> {
        Ok(self * &denominator.invert()?)
    }

    /// Multiply in place by `1 + u q^e`.
    pub fn mul_binomial_factor(&mut self, u: &R, e: usize) {
        let n = self.order();
        if e > n {
            return;
        }
        if e == 0 {
            let f = R::one() + u.clone();
            for c in &mut self.coeffs {
                *c = c.clone() * f.clone();
            }
            return;
        }
        for i in (e..=n).rev() {
            let (lo, hi) = self.coeffs.split_at_mut(i);
            hi[0].add_product(u, &lo[i - e]);
        }
    }

    /// `∏_{j=0}^{count-1} (1 + u q^{c + j·step})` truncated at `order`.
    ///
    /// `u = -1` gives `(q^c; q^step)_count`, `u = 1` gives `(-q^c; q^step)_count`.
    /// Factors with exponent past `order` are `1` modulo `q^{order+1}`
    /// and are skipped, so the infinite product is exact to `order`.
    pub fn pochhammer(u: &R, c: usize, step: usize, count: Count, order: usize) -> Self {
        assert!(step >= 1, "pochhammer step must be positive");
        let mut s = Self::one(order);
        let mut j = 0usize;
        loop {
            if let Count::Finite(k) = count {
                if j >= k {
                    break;
                }
            }
            let e = c + j * step;
            if e > order {
                break;
            }
            s.mul_binomial_factor(u, e);
            j += 1;
        }
        s
    }

    /// Index and value of the first coefficient matching `pred`.
    pub fn find_coeff(&self, mut pred: impl FnMut(&R) -> bool) -> Option<(usize, R)> {
        self.coeffs
            .iter()
            .enumerate()
            .find(|(_, c)| pred(c))
            .map(|(i, c)| (i, c.clone()))
    }

    /// First index where `self` and `other` differ, up to the common order.
    pub fn first_difference(&self, other: &Self) -> Option<usize> {
        self.coeffs
            .iter()
            .zip(&other.coeffs)
            .position(|(a, b)| a != b)
    }
}

impl<R: CoefficientRing> Add for &TruncatedSeries<R> {
    type Output = TruncatedSeries<R>;

    fn add(self, rhs: Self) -> TruncatedSeries<R> {
        let n = self.order().min(rhs.order());
        let coeffs = (0..=n)
            .map(|i| {
                let mut c = self.coeffs[i].clone();
                c.add_assign_ref(&rhs.coeffs[i]);
                c
            })
            .collect();
        TruncatedSeries { coeffs }
    }
}

impl<R: CoefficientRing> Sub for &TruncatedSeries<R> {
    type Output = TruncatedSeries<R>;

    fn sub(self, rhs: Self) -> TruncatedSeries<R> {
        self + &(-rhs)
    }
}

impl<R: CoefficientRing> Neg for &TruncatedSeries<R> {
    type Output = TruncatedSeries<R>;

    fn neg(self) -> TruncatedSeries<R> {
        TruncatedSeries {
            coeffs: self.coeffs.iter().map(|c| -c.clone()).collect(),
        }
    }
}

impl<R: CoefficientRing> Mul for &TruncatedSeries<R> {
    type Output = TruncatedSeries<R>;

    fn mul(self, rhs: Self) -> TruncatedSeries<R> {
        let n = self.order().min(rhs.order());
        let mut coeffs = vec![R::zero(); n + 1];
        for (i, a) in self.coeffs[..=n].iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs[..=n - i].iter().enumerate() {
                coeffs[i + j].add_product(a, b);
            }
        }
        TruncatedSeries { coeffs }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $method:ident) => {
        impl<R: CoefficientRing> $tr for TruncatedSeries<R> {
            type Output = TruncatedSeries<R>;

            fn $method(self, rhs: Self) -> TruncatedSeries<R> {
                (&self).$method(&rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl<R: CoefficientRing> Neg for TruncatedSeries<R> {
    type Output = TruncatedSeries<R>;

    fn neg(self) -> TruncatedSeries<R> {
        -&self
    }
}

impl<R: CoefficientCodec> TruncatedSeries<R> {
    pub fn to_json(&self) -> Value {
        json!({
            "order": self.order(),
            "coeffs": self.coeffs.iter().map(R::encode).collect::<Vec<_>>(),
        })
    }

    pub fn from_json(value: &Value) -> Result<Self> {
        let order = value
            .get("order")
            .and_then(Value::as_u64)
            .ok_or_else(|| Error::Decode("missing \"order\"".into()))? as usize;
        let coeffs = value
            .get("coeffs")
            .and_then(Value::as_array)
            .ok_or_else(|| Error::Decode("missing \"coeffs\"".into()))?
            .iter()
            .map(R::decode)
            .collect::<Result<Vec<_>>>()?;
        if coeffs.len() != order + 1 {
            return Err(Error::Decode(format!(
                "order {order} needs {} coefficients, got {}",
                order + 1,
                coeffs.len()
            )));
        }
        Ok(Self { coeffs })
    }
}

impl<R: CoefficientCodec> Serialize for TruncatedSeries<R> {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_json().serialize(serializer)
    }
}

impl<'de, R: CoefficientCodec> Deserialize<'de> for TruncatedSeries<R> {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let v = Value::deserialize(deserializer)?;
        Self::from_json(&v).map_err(de::Error::custom)
    }
}

impl<R: CoefficientCodec> fmt::Display for TruncatedSeries<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (n, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            let r = c.render();
            let body = if r.contains(' ') { format!("({r})") } else { r };
            match n {
                0 => write!(f, "{body}")?,
                1 => write!(f, "{body}*q")?,
                _ => write!(f, "{body}*q^{n}")?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        write!(f, " + O(q^{})", self.order() + 1)
    }
}

impl<R: CoefficientCodec> fmt::Debug for TruncatedSeries<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::Poly1;
    use num_bigint::BigInt;
    use num_traits::One;

    type S = TruncatedSeries<BigInt>;

    fn ints(v: &[i64]) -> S {
        S::from_coeffs(v.iter().map(|&x| BigInt::from(x)).collect())
    }

    #[test]
    fn add_cancels_and_truncates() {
        assert_eq!(&ints(&[1, 1]) + &ints(&[1, -1]), ints(&[2, 0]));
        let s = ints(&[1, 2, 3]);
        assert_eq!(&s + &S::zero(2), s);
        assert_eq!(&ints(&[1, 2, 3]) + &ints(&[1, 1]), ints(&[2, 3]));
        assert_eq!(
            (&ints(&[1, 2, 3]) + &ints(&[1, 1, 0])).coeffs(),
            ints(&[2, 3, 3]).coeffs()
        );
    }

    #[test]
    fn difference_of_squares() {
        let p = &ints(&[1, 1, 0, 0]) * &ints(&[1, -1, 0, 0]);
        assert_eq!(p, ints(&[1, 0, -1, 0]));
        let s = ints(&[3, 1, 4, 1, 5]);
        assert_eq!(&s * &S::one(4), s);
    }

    #[test]
    fn geometric_times_one_minus_q() {
        let geo = S::from_coeffs(vec![BigInt::from(1); 11]);
        assert_eq!(
            &geo * &ints(&[1, -1, 0, 0, 0, 0, 0, 0, 0, 0, 0]),
            S::one(10)
        );
    }

    #[test]
    fn invert_basics() {
        let inv = ints(&[1, -1, 0, 0, 0, 0]).invert().unwrap();
        assert_eq!(inv, ints(&[1, 1, 1, 1, 1, 1]));
        assert_eq!(S::one(7).invert().unwrap(), S::one(7));
        assert_eq!(ints(&[2, 1]).invert(), Err(Error::NonUnitConstantTerm));
        assert_eq!(ints(&[-1, 1, 0]).invert().unwrap(), ints(&[-1, -1, -1]));
    }

    #[test]
    fn coeff_bounds() {
        let s = ints(&[1, 0, 3]);
        assert_eq!(s.coeff(2).unwrap(), &BigInt::from(3));
        assert_eq!(
            s.coeff(3),
            Err(Error::IndexBeyondTruncation { index: 3, order: 2 })
        );
    }

    #[test]
    fn single_factor_pochhammer() {
        let p = S::pochhammer(&BigInt::from(1), 2, 2, Count::Finite(1), 10);
        let mut expected = vec![0; 11];
        expected[0] = 1;
        expected[2] = 1;
        assert_eq!(p, ints(&expected));
    }

    #[test]
    fn euler_product_is_pentagonal() {
        let p = S::pochhammer(&BigInt::from(-1), 1, 1, Count::Infinite, 12);
        assert_eq!(p, ints(&[1, -1, -1, 0, 0, 1, 0, 1, 0, 0, 0, 0, -1]));
    }

    #[test]
    fn pochhammer_with_zero_offset_scales() {
        let p = S::pochhammer(&BigInt::from(1), 0, 1, Count::Finite(1), 3);
        assert_eq!(p, ints(&[2, 0, 0, 0]));
    }

    #[test]
    fn shift_and_scale() {
        let s = ints(&[1, 2, 3]);
        assert_eq!(s.shift(1), ints(&[0, 1, 2]));
        assert_eq!(s.shift(5), S::zero(2));
        assert_eq!(s.scale(&BigInt::from(-2)), ints(&[-2, -4, -6]));
    }

    #[test]
    fn json_round_trip_and_validation() {
        let s = ints(&[1, -3, 0]);
        let v = s.to_json();
        assert_eq!(v, json!({"order": 2, "coeffs": ["1", "-3", "0"]}));
        assert_eq!(S::from_json(&v).unwrap(), s);
        assert!(S::from_json(&json!({"order": 3, "coeffs": ["1"]})).is_err());

        let z = Poly1::var(0);
        let t = TruncatedSeries::from_coeffs(vec![Poly1::one(), Poly1::one() + z]);
        let v = t.to_json();
        assert_eq!(
            v,
            json!({"order": 1, "coeffs": [{"1": "1"}, {"1": "1", "z": "1"}]})
        );
        assert_eq!(TruncatedSeries::<Poly1>::from_json(&v).unwrap(), t);
    }

    #[test]
    fn display() {
        assert_eq!(
            ints(&[1, -1, 0, 2]).to_string(),
            "1 + -1*q + 2*q^3 + O(q^4)"
        );
    }
}
