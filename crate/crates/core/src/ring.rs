//! Exact coefficient rings for truncated q-series.
//!
//! Series arithmetic only needs a commutative ring with unity, plus a way to
//! invert units so that quotients with constant term `±1` can be expanded.
//! Three instances are provided: arbitrary-precision integers, and sparse
//! integer polynomials in one (`z`) or two (`x`, `y`) marker variables.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde_json::Value;

use crate::error::Error;

/// A commutative ring with unity whose elements never overflow.
pub trait CoefficientRing:
    Clone
    + PartialEq
    + fmt::Debug
    + Zero
    + One
    + Neg<Output = Self>
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Send
    + Sync
{
    /// The multiplicative inverse, if `self` is a unit.
    fn unit_inverse(&self) -> Option<Self>;

    /// `self += a * b`.
    fn add_product(&mut self, a: &Self, b: &Self) {
        let acc = std::mem::replace(self, Self::zero());
        *self = acc + a.clone() * b.clone();
    }

    /// `self += other`.
    fn add_assign_ref(&mut self, other: &Self) {
        let acc = std::mem::replace(self, Self::zero());
        *self = acc + other.clone();
    }
}

/// Coefficients that have a lossless JSON form (integers as decimal strings).
pub trait CoefficientCodec: CoefficientRing {
    fn encode(&self) -> Value;
    fn decode(value: &Value) -> Result<Self, Error>;
    /// Human-readable rendering used by text output.
    fn render(&self) -> String;
}

impl CoefficientRing for BigInt {
    fn unit_inverse(&self) -> Option<Self> {
        if self.abs().is_one() {
            Some(self.clone())
        } else {
            None
        }
    }

    fn add_product(&mut self, a: &Self, b: &Self) {
        if !a.is_zero() && !b.is_zero() {
            *self += a * b;
        }
    }

    fn add_assign_ref(&mut self, other: &Self) {
        *self += other;
    }
}

impl CoefficientCodec for BigInt {
    fn encode(&self) -> Value {
        Value::String(self.to_string())
    }

    fn decode(value: &Value) -> Result<Self, Error> {
        match value {
            Value::String(s) => s
                .parse()
                .map_err(|_| Error::Decode(format!("not a decimal integer: {s:?}"))),
            Value::Number(n) if n.is_i64() => Ok(BigInt::from(n.as_i64().unwrap())),
            other => Err(Error::Decode(format!(
                "expected integer string, got {other}"
            ))),
        }
    }

    fn render(&self) -> String {
        self.to_string()
    }
}

/// Exponent vector of a monomial in `K` marker variables.
pub type Exponents<const K: usize> = [u32; K];

/// Sparse polynomial with arbitrary-precision integer coefficients in `K`
/// marker variables. Zero coefficients are never stored.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct SparsePoly<const K: usize> {
    terms: BTreeMap<Exponents<K>, BigInt>,
}

/// Polynomials in `z`.
pub type Poly1 = SparsePoly<1>;
/// Polynomials in `x`, `y`.
pub type Poly2 = SparsePoly<2>;

impl<const K: usize> SparsePoly<K> {
    pub fn constant(c: impl Into<BigInt>) -> Self {
        Self::monomial([0; K], c)
    }

    pub fn monomial(exps: Exponents<K>, c: impl Into<BigInt>) -> Self {
        let c = c.into();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(exps, c);
        }
        Self { terms }
    }

    /// The `i`-th variable.
    pub fn var(i: usize) -> Self {
        let mut e = [0; K];
        e[i] = 1;
        Self::monomial(e, 1)
    }

    pub fn coeff(&self, exps: &Exponents<K>) -> BigInt {
        self.terms.get(exps).cloned().unwrap_or_default()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exponents<K>, &BigInt)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Evaluate with every variable set to an integer.
    pub fn eval(&self, point: &[BigInt; K]) -> BigInt {
        let mut total = BigInt::zero();
        for (exps, c) in &self.terms {
            let mut t = c.clone();
            for (v, &e) in point.iter().zip(exps) {
                t *= num_traits::pow(v.clone(), e as usize);
            }
            total += t;
        }
        total
    }

    /// True when every stored coefficient is positive.
    pub fn is_nonnegative(&self) -> bool {
        self.terms.values().all(|c| c.is_positive())
    }

    fn add_term(&mut self, exps: Exponents<K>, c: BigInt) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(exps).or_default();
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&exps);
        }
    }

    fn mul_ref(&self, other: &Self) -> Self {
        let mut out = Self::default();
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let mut e = *ea;
                for (x, y) in e.iter_mut().zip(eb) {
                    *x += *y;
                }
                out.add_term(e, ca * cb);
            }
        }
        out
    }

    fn var_names() -> Vec<&'static str> {
        match K {
            1 => vec!["z"],
            2 => vec!["x", "y"],
            _ => ["t0", "t1", "t2", "t3", "t4", "t5", "t6", "t7"][..K].to_vec(),
        }
    }

    /// Monomial key such as `1`, `z^2`, `x*y^3`.
    pub fn monomial_key(exps: &Exponents<K>) -> String {
        let names = Self::var_names();
        let factors: Vec<String> = exps
            .iter()
            .zip(&names)
            .filter(|(e, _)| **e > 0)
            .map(|(e, n)| {
                if *e == 1 {
                    n.to_string()
                } else {
                    format!("{n}^{e}")
                }
            })
            .collect();
        if factors.is_empty() {
            "1".to_string()
        } else {
            factors.join("*")
        }
    }

    pub fn parse_monomial_key(key: &str) -> Result<Exponents<K>, Error> {
        let names = Self::var_names();
        let mut exps = [0; K];
        if key == "1" {
            return Ok(exps);
        }
        for factor in key.split('*') {
            let (name, e) = match factor.split_once('^') {
                Some((n, e)) => (
                    n,
                    e.parse::<u32>()
                        .map_err(|_| Error::Decode(format!("bad exponent in {key:?}")))?,
                ),
                None => (factor, 1),
            };
            let i = names
                .iter()
                .position(|n| *n == name)
                .ok_or_else(|| Error::Decode(format!("unknown variable {name:?} in {key:?}")))?;
            exps[i] += e;
        }
        Ok(exps)
    }
}

impl<const K: usize> fmt::Debug for SparsePoly<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render())
    }
}

impl<const K: usize> Zero for SparsePoly<K> {
    fn zero() -> Self {
        Self::default()
    }

    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

impl<const K: usize> One for SparsePoly<K> {
    fn one() -> Self {
        Self::constant(1)
    }
}

impl<const K: usize> Add for SparsePoly<K> {
    type Output = Self;

    fn add(mut self, rhs: Self) -> Self {
        for (e, c) in rhs.terms {
            self.add_term(e, c);
        }
        self
    }
}

impl<const K: usize> Sub for SparsePoly<K> {
    type Output = Self;

    fn sub(self, rhs: Self) -> Self {
        self + (-rhs)
    }
}

impl<const K: usize> Neg for SparsePoly<K> {
    type Output = Self;

    fn neg(mut self) -> Self {
        for c in self.terms.values_mut() {
            *c = -std::mem::take(c);
        }
        self
    }
}

impl<const K: usize> Mul for SparsePoly<K> {
    type Output = Self;

    fn mul(self, rhs: Self) -> Self {
        self.mul_ref(&rhs)
    }
}

impl<const K: usize> CoefficientRing for SparsePoly<K> {
    fn unit_inverse(&self) -> Option<Self> {
        // Units of Z[x_1..x_K] are the constants ±1.
        if self.terms.len() == 1 {
            let (e, c) = self.terms.iter().next().unwrap();
            if e.iter().all(|&x| x == 0) && c.abs().is_one() {
                return Some(self.clone());
            }
        }
        None
    }

    fn add_product(&mut self, a: &Self, b: &Self) {
        for (ea, ca) in &a.terms {
            for (eb, cb) in &b.terms {
                let mut e = *ea;
                for (x, y) in e.iter_mut().zip(eb) {
                    *x += *y;
                }
                self.add_term(e, ca * cb);
            }
        }
    }

    fn add_assign_ref(&mut self, other: &Self) {
        for (e, c) in &other.terms {
            self.add_term(*e, c.clone());
        }
    }
}

impl<const K: usize> CoefficientCodec for SparsePoly<K> {
    fn encode(&self) -> Value {
        let map = self
            .terms
            .iter()
            .map(|(e, c)| (Self::monomial_key(e), Value::String(c.to_string())))
            .collect();
        Value::Object(map)
    }

    fn decode(value: &Value) -> Result<Self, Error> {
        let obj = value
            .as_object()
            .ok_or_else(|| Error::Decode(format!("expected monomial map, got {value}")))?;
        let mut out = Self::default();
        for (k, v) in obj {
            let e = Self::parse_monomial_key(k)?;
            out.add_term(e, BigInt::decode(v)?);
        }
        Ok(out)
    }

    fn render(&self) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut s = String::new();
        for (i, (e, c)) in self.terms.iter().enumerate() {
            let key = Self::monomial_key(e);
            let neg = c.is_negative();
            let mag = c.abs();
            if i == 0 {
                if neg {
                    s.push('-');
                }
            } else {
                s.push_str(if neg { " - " } else { " + " });
            }
            if key == "1" {
                s.push_str(&mag.to_string());
            } else if mag.is_one() {
                s.push_str(&key);
            } else {
                s.push_str(&format!("{mag}{key}"));
            }
        }
        s
    }
}
