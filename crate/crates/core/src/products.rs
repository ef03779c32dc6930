//! Closed-form q-products and sums whose coefficients the rest of the crate
//! checks against enumeration.
//!
//! Conventions: `(u q^c; q^m)_k = ∏_{j<k} (1 - u q^{c+jm})`. All products are
//! expanded with [`TruncatedSeries::pochhammer`], quotients via inversion.

use num_bigint::BigInt;
use num_traits::Zero;

use crate::copartition::CopParams;
use crate::ring::{CoefficientRing, Poly1, Poly2};
use crate::series::{Count, TruncatedSeries};
use crate::{IntSeries, XYSeries, ZSeries};

fn minus_one<R: CoefficientRing>() -> R {
    -R::one()
}

/// `(q^c; q^m)_count`.
pub fn q_poch<R: CoefficientRing>(
    c: u32,
    m: u32,
    count: Count,
    order: usize,
) -> TruncatedSeries<R> {
    TruncatedSeries::pochhammer(&minus_one(), c as usize, m as usize, count, order)
}

/// `(-q^c; q^m)_count`.
pub fn neg_q_poch<R: CoefficientRing>(
    c: u32,
    m: u32,
    count: Count,
    order: usize,
) -> TruncatedSeries<R> {
    TruncatedSeries::pochhammer(&R::one(), c as usize, m as usize, count, order)
}

fn quotient<R: CoefficientRing>(
    num: TruncatedSeries<R>,
    dens: impl IntoIterator<Item = TruncatedSeries<R>>,
) -> TruncatedSeries<R> {
    let mut acc = num;
    for d in dens {
        acc = acc
            .div(&d)
            .expect("q-product denominators have constant term 1");
    }
    acc
}

/// `(-q^{a+b};q^m)_∞ / ((-q^a;q^m)_∞ (q^b;q^m)_∞)`, the generating function of
/// cp^e(n) - cp^o(n).
pub fn weighted_product(params: CopParams, order: usize) -> IntSeries {
    let CopParams { a, b, m } = params;
    quotient(
        neg_q_poch(a + b, m, Count::Infinite, order),
        [
            neg_q_poch(a, m, Count::Infinite, order),
            q_poch(b, m, Count::Infinite, order),
        ],
    )
}

/// `(xy q^{a+b};q^m)_∞ / ((x q^b;q^m)_∞ (y q^a;q^m)_∞)`; the coefficient of
/// `x^s y^w q^n` is cp(w, s, n).
pub fn refined_product(params: CopParams, order: usize) -> XYSeries {
    let CopParams { a, b, m } = params;
    let x = Poly2::var(0);
    let y = Poly2::var(1);
    let xy = x.clone() * y.clone();
    let p = |u: Poly2, c: u32| {
        TruncatedSeries::pochhammer(&-u, c as usize, m as usize, Count::Infinite, order)
    };
    quotient(p(xy, a + b), [p(x, b), p(y, a)])
}

/// `(-q^2;q^2)_∞ / (q^2;q^4)_∞`.
pub fn complement_product(order: usize) -> IntSeries {
    quotient(
        neg_q_poch(2, 2, Count::Infinite, order),
        [q_poch(2, 4, Count::Infinite, order)],
    )
}

/// `1 / (q^2;q^4)_∞^2`, the other side of the same identity.
pub fn complement_product_squared_form(order: usize) -> IntSeries {
    let d = q_poch::<BigInt>(2, 4, Count::Infinite, order);
    quotient(IntSeries::one(order), [d.clone(), d])
}

/// How the marker `z` weights an overlined part in the overcopartition sums.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OverlineWeight {
    /// `(-z;q^m)_w`: each overlined part contributes `z`. This is the
    /// generating function of overcopartitions counted by overlined parts.
    Standard,
    /// `(-zq^m;q^m)_w`: every overlined part also carries q^m; equal to
    /// the standard series after `z -> z q^m`.
    Shifted,
}

impl OverlineWeight {
    fn offset(self, m: u32) -> usize {
        match self {
            Self::Standard => 0,
            Self::Shifted => m as usize,
        }
    }
}

fn z_poch(c: usize, m: u32, count: Count, order: usize) -> ZSeries {
    // (-z q^c; q^m)_count
    TruncatedSeries::pochhammer(&Poly1::var(0), c, m as usize, count, order)
}

/// `Σ_{w,s} q^{msw+aw+bs} (-zq^c;q^m)_w (-zq^c;q^m)_s / ((q^m;q^m)_w (q^m;q^m)_s)`.
pub fn over_double_sum(params: CopParams, order: usize, weight: OverlineWeight) -> ZSeries {
    let CopParams { a, b, m } = params;
    let c = weight.offset(m);
    // one-sided factor q^{res·k} (-zq^c;q^m)_k / (q^m;q^m)_k, k = 0..
    let side = |k: usize| -> ZSeries {
        quotient(
            z_poch(c, m, Count::Finite(k), order),
            [q_poch(m, m, Count::Finite(k), order)],
        )
    };
    let max_w = order / a as usize;
    let max_s = order / b as usize;
    let sides_w: Vec<ZSeries> = (0..=max_w).map(side).collect();
    let sides_s: Vec<ZSeries> = (0..=max_s).map(side).collect();
    let mut total = ZSeries::zero(order);
    for (w, gw) in sides_w.iter().enumerate() {
        for (s, gs) in sides_s.iter().enumerate() {
            let e = m as usize * s * w + a as usize * w + b as usize * s;
            if e > order {
                break;
            }
            total = &total + &(gw * gs).shift(e);
        }
    }
    total
}

/// `(-zq^{b+c};q^m)_∞/(q^b;q^m)_∞ · Σ_k (-zq^c;q^m)_k (q^b;q^m)_k q^{ak} /
/// ((q^m;q^m)_k (-zq^{b+c};q^m)_k)`, with `c = 0` for [`OverlineWeight::Standard`]
/// and `c = m` for [`OverlineWeight::Shifted`]. Terms with `ak > order` vanish.
pub fn over_closed_form(params: CopParams, order: usize, weight: OverlineWeight) -> ZSeries {
    let CopParams { a, b, m } = params;
    let c = weight.offset(m);
    let prefactor = quotient(
        z_poch(b as usize + c, m, Count::Infinite, order),
        [q_poch(b, m, Count::Infinite, order)],
    );
    let mut sum = ZSeries::zero(order);
    for k in 0..=order / a as usize {
        let n = Count::Finite(k);
        let num = &z_poch(c, m, n, order) * &q_poch(b, m, n, order);
        let term = quotient(
            num,
            [q_poch(m, m, n, order), z_poch(b as usize + c, m, n, order)],
        );
        sum = &sum + &term.shift(a as usize * k);
    }
    &prefactor * &sum
}

/// `(-q^{2a};q^{2a})_∞ (-zq^{2a};q^{4a})_∞^2 / (q^{2a};q^{4a})_∞`.
pub fn over_weighted_difference_product(a: u32, order: usize) -> ZSeries {
    let zf = z_poch(2 * a as usize, 4 * a, Count::Infinite, order);
    let num = &(&neg_q_poch::<Poly1>(2 * a, 2 * a, Count::Infinite, order) * &zf) * &zf;
    quotient(num, [q_poch(2 * a, 4 * a, Count::Infinite, order)])
}

/// `(-q^{2a};q^m)_∞ / (q^{2a};q^{2m})_∞`.
pub fn equal_residue_product(a: u32, m: u32, order: usize) -> IntSeries {
    quotient(
        neg_q_poch(2 * a, m, Count::Infinite, order),
        [q_poch(2 * a, 2 * m, Count::Infinite, order)],
    )
}

/// `g(N,M) = (-q^m;q^m)_{N+M-1} / ((-q^a;q^m)_N (q^b;q^m)_M)`, with empty
/// products equal to 1 (so `N + M - 1` saturates at zero).
pub fn finite_product(params: CopParams, big_n: usize, big_m: usize, order: usize) -> IntSeries {
    let CopParams { a, b, m } = params;
    let top = (big_n + big_m).saturating_sub(1);
    quotient(
        neg_q_poch(m, m, Count::Finite(top), order),
        [
            neg_q_poch(a, m, Count::Finite(big_n), order),
            q_poch(b, m, Count::Finite(big_m), order),
        ],
    )
}

/// Evaluate every `z`-polynomial coefficient at `z = value`.
pub fn eval_z(s: &ZSeries, value: i64) -> IntSeries {
    let v = [BigInt::from(value)];
    s.map_coeffs(|p| p.eval(&v))
}

/// `z -> z q^shift` applied to a series in `z` and `q`.
pub fn substitute_z_shift(s: &ZSeries, shift: usize) -> ZSeries {
    let order = s.order();
    let mut coeffs = vec![Poly1::zero(); order + 1];
    for (n, p) in s.coeffs().iter().enumerate() {
        for (e, c) in p.terms() {
            let target = n + shift * e[0] as usize;
            if target <= order {
                coeffs[target].add_assign_ref(&Poly1::monomial(*e, c.clone()));
            }
        }
    }
    TruncatedSeries::from_coeffs(coeffs)
}

/// Monomial `x^s y^w` coefficient of a bivariate series at `q^n`.
pub fn xy_coeff(s: &XYSeries, n: usize, sky_parts: usize, ground_parts: usize) -> BigInt {
    s.coeff(n)
        .map(|p| p.coeff(&[sky_parts as u32, ground_parts as u32]))
        .unwrap_or_else(|_| BigInt::zero())
}
