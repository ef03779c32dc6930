//! (a,b,m)-copartitions.
//!
//! A copartition is a ground γ (parts ≡ a mod m, each ≥ a), a sky σ (parts
//! ≡ b mod m, each ≥ b) and the rectangle ρ of ν(σ) parts of size m·ν(γ)
//! joining them. ρ is always derived from the other two and never stored.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::Zero;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::partition::{generate, CellLabels, PartSpec, Partition, PartitionCounter};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct CopParams {
    pub a: u32,
    pub b: u32,
    pub m: u32,
}

impl CopParams {
    pub fn new(a: u32, b: u32, m: u32) -> Result<Self> {
        if a == 0 || b == 0 || m == 0 {
            return Err(Error::BadParams(format!(
                "a, b, m must be positive, got ({a},{b},{m})"
            )));
        }
        Ok(Self { a, b, m })
    }

    /// The (1,1,2) family, whose copartitions match EO*-type partitions.
    pub fn eo() -> Self {
        Self { a: 1, b: 1, m: 2 }
    }

    pub fn ground_spec(&self) -> PartSpec {
        PartSpec::new(self.a, self.m, self.a)
    }

    pub fn sky_spec(&self) -> PartSpec {
        PartSpec::new(self.b, self.m, self.b)
    }

    pub fn swapped(&self) -> Self {
        Self {
            a: self.b,
            b: self.a,
            m: self.m,
        }
    }

    pub fn require_eo(&self) -> Result<()> {
        if *self != Self::eo() {
            return Err(Error::BadParams(format!(
                "operation needs (a,b,m) = (1,1,2), got {self}"
            )));
        }
        Ok(())
    }
}

impl fmt::Display for CopParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{})", self.a, self.b, self.m)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Copartition {
    params: CopParams,
    ground: Partition,
    sky: Partition,
}

impl Copartition {
    pub fn new(params: CopParams, ground: Partition, sky: Partition) -> Result<Self> {
        let (gs, ss) = (params.ground_spec(), params.sky_spec());
        if let Some(&p) = ground.parts().iter().find(|&&p| !gs.admits(p)) {
            return Err(Error::NotACopartition(format!(
                "ground part {p} is not ≥ {} and ≡ {} mod {}",
                params.a, params.a, params.m
            )));
        }
        if let Some(&p) = sky.parts().iter().find(|&&p| !ss.admits(p)) {
            return Err(Error::NotACopartition(format!(
                "sky part {p} is not ≥ {} and ≡ {} mod {}",
                params.b, params.b, params.m
            )));
        }
        Ok(Self {
            params,
            ground,
            sky,
        })
    }

    pub fn empty(params: CopParams) -> Self {
        Self {
            params,
            ground: Partition::empty(),
            sky: Partition::empty(),
        }
    }

    pub fn params(&self) -> CopParams {
        self.params
    }

    pub fn ground(&self) -> &Partition {
        &self.ground
    }

    pub fn sky(&self) -> &Partition {
        &self.sky
    }

    /// w = ν(γ).
    pub fn ground_parts(&self) -> usize {
        self.ground.len()
    }

    /// s = ν(σ).
    pub fn sky_parts(&self) -> usize {
        self.sky.len()
    }

    /// Size of each ρ part, m·ν(γ).
    pub fn rho_width(&self) -> u32 {
        self.params.m * self.ground.len() as u32
    }

    /// ρ as a partition; empty when either dimension is zero.
    pub fn rho(&self) -> Partition {
        let width = self.rho_width();
        if width == 0 {
            return Partition::empty();
        }
        Partition::from_sorted_unchecked(vec![width; self.sky.len()])
    }

    pub fn size(&self) -> u64 {
        self.ground.size() + self.sky.size() + self.rho_width() as u64 * self.sky.len() as u64
    }

    pub fn has_even_ground(&self) -> bool {
        self.ground.len().is_multiple_of(2)
    }

    /// dv(γ) + dv(σ).
    pub fn diversity(&self) -> usize {
        self.ground.diversity() + self.sky.diversity()
    }

    /// The (b,a,m)-copartition obtained by reflecting the diagram.
    pub fn conjugate(&self) -> Self {
        Self {
            params: self.params.swapped(),
            ground: self.sky.clone(),
            sky: self.ground.clone(),
        }
    }

    /// ρ|σ: the i-th sky part plus the i-th ρ part.
    pub fn enlarged_sky(&self) -> Partition {
        self.sky.shifted(self.rho_width())
    }

    /// The EO*-type partition of size 2·|c|: two copies of each enlarged-sky
    /// part together with the doubled parts of γ'.
    pub fn to_eo_star(&self) -> Result<Partition> {
        self.params.require_eo()?;
        let mut parts: Vec<u32> = self
            .enlarged_sky()
            .parts()
            .iter()
            .flat_map(|&p| [p, p])
            .collect();
        parts.extend(self.ground.conjugate().parts().iter().map(|p| 2 * p));
        Partition::new(parts)
    }

    /// Text diagram: ρ rows extended by sky rows, then the conjugated
    /// m-modular diagram of the ground underneath.
    pub fn render_diagram(&self, symbolic: bool) -> String {
        let CopParams { a, b, m } = self.params;
        let (ground_labels, sky_labels) = if symbolic {
            (CellLabels::symbolic("a"), CellLabels::symbolic("b"))
        } else {
            (CellLabels::numeric(m, a), CellLabels::numeric(m, b))
        };
        let w = self.ground.len();
        let ground_rows = crate::partition::modular_rows(&self.ground, m, a)
            .expect("ground parts validated at construction");
        let sky_rows = crate::partition::modular_rows(&self.sky, m, b)
            .expect("sky parts validated at construction");
        let mut lines = Vec::new();
        for &k in &sky_rows {
            let mut cells: Vec<&str> = vec![sky_labels.modulus.as_str(); w];
            cells.push(&sky_labels.residue);
            cells.extend(std::iter::repeat_n(sky_labels.modulus.as_str(), k));
            lines.push(cells.join(" "));
        }
        if w > 0 {
            lines.push(vec![ground_labels.residue.as_str(); w].join(" "));
            let deepest = ground_rows.iter().copied().max().unwrap_or(0);
            for j in 1..=deepest {
                let count = ground_rows.iter().filter(|&&k| k >= j).count();
                lines.push(vec![ground_labels.modulus.as_str(); count].join(" "));
            }
        }
        lines.join("\n")
    }

    pub fn to_json(&self) -> Value {
        let (parts, width) = if self.rho_width() == 0 || self.sky.is_empty() {
            (0, 0)
        } else {
            (self.sky.len(), self.rho_width())
        };
        json!({
            "a": self.params.a,
            "b": self.params.b,
            "m": self.params.m,
            "ground": self.ground,
            "sky": self.sky,
            "rho": {"parts": parts, "size": width},
        })
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let num = |key: &str| -> Result<u32> {
            v.get(key)
                .and_then(Value::as_u64)
                .map(|x| x as u32)
                .ok_or_else(|| Error::Decode(format!("missing integer field {key:?}")))
        };
        let part = |key: &str| -> Result<Partition> {
            let raw = v
                .get(key)
                .ok_or_else(|| Error::Decode(format!("missing field {key:?}")))?;
            serde_json::from_value(raw.clone()).map_err(|e| Error::Decode(e.to_string()))
        };
        let c = Self::new(
            CopParams::new(num("a")?, num("b")?, num("m")?)?,
            part("ground")?,
            part("sky")?,
        )?;
        if let Some(rho) = v.get("rho") {
            let expected = c.to_json()["rho"].clone();
            if *rho != expected {
                return Err(Error::Decode(format!(
                    "rho {rho} inconsistent with ground and sky (expected {expected})"
                )));
            }
        }
        Ok(c)
    }
}

impl fmt::Display for Copartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.ground, self.rho(), self.sky)
    }
}

/// All copartitions of size `n`, ordered by (w, s) ascending, then ground and
/// sky lexicographically.
pub fn enumerate(params: CopParams, n: u32) -> Vec<Copartition> {
    let (gs, ss) = (params.ground_spec(), params.sky_spec());
    let mut out = Vec::new();
    let max_w = (n / params.a) as usize;
    for w in 0..=max_w {
        let max_s = (n / params.b) as usize;
        for s in 0..=max_s {
            let rect = params.m as u64 * w as u64 * s as u64;
            if rect > n as u64 {
                break;
            }
            let rest = n - rect as u32;
            let mut block = Vec::new();
            for k in 0..=rest {
                let grounds = generate(k, gs, Some(w));
                if grounds.is_empty() {
                    continue;
                }
                let skies = generate(rest - k, ss, Some(s));
                for g in &grounds {
                    for sk in &skies {
                        block.push(Copartition {
                            params,
                            ground: g.clone(),
                            sky: sk.clone(),
                        });
                    }
                }
            }
            block.sort();
            out.extend(block);
        }
    }
    out
}

/// cp(n), cp^e(n) and cp^o(n).
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct ParityCounts {
    pub total: BigInt,
    pub even: BigInt,
    pub odd: BigInt,
}

impl ParityCounts {
    /// cp^e(n) - cp^o(n).
    pub fn difference(&self) -> BigInt {
        &self.even - &self.odd
    }

    pub fn to_json(&self) -> Value {
        json!({
            "cp": self.total.to_string(),
            "cpEven": self.even.to_string(),
            "cpOdd": self.odd.to_string(),
        })
    }
}

/// Refined counts cp(w, s, n) from memoized partition counts, reusable across n.
#[derive(Clone, Debug)]
pub struct CopartitionCounter {
    params: CopParams,
    ground: PartitionCounter,
    sky: PartitionCounter,
    max_n: u32,
}

impl CopartitionCounter {
    pub fn new(params: CopParams, max_n: u32) -> Self {
        Self {
            params,
            ground: PartitionCounter::new(params.ground_spec(), max_n),
            sky: PartitionCounter::new(params.sky_spec(), max_n),
            max_n,
        }
    }

    /// (w, s) -> cp(w, s, n), listing only nonzero entries.
    pub fn refined(&self, n: u32) -> BTreeMap<(usize, usize), BigInt> {
        assert!(
            n <= self.max_n,
            "n = {n} exceeds counter bound {}",
            self.max_n
        );
        let CopParams { a, b, m } = self.params;
        let mut out = BTreeMap::new();
        for w in 0..=(n / a) as usize {
            for s in 0..=(n / b) as usize {
                let rect = m as u64 * w as u64 * s as u64;
                if rect > n as u64 {
                    break;
                }
                let rest = n - rect as u32;
                let mut total = BigInt::zero();
                for k in 0..=rest {
                    let g = self.ground.count_exact(k, w);
                    if g.is_zero() {
                        continue;
                    }
                    total += g * self.sky.count_exact(rest - k, s);
                }
                if !total.is_zero() {
                    out.insert((w, s), total);
                }
            }
        }
        out
    }

    pub fn parity_counts(&self, n: u32) -> ParityCounts {
        let mut pc = ParityCounts::default();
        for ((w, _), c) in self.refined(n) {
            pc.total += &c;
            if w % 2 == 0 {
                pc.even += c;
            } else {
                pc.odd += c;
            }
        }
        pc
    }
}

/// cp(w, s, n) by listing every copartition.
pub fn tally_refined(params: CopParams, n: u32) -> BTreeMap<(usize, usize), BigInt> {
    let mut out: BTreeMap<(usize, usize), BigInt> = BTreeMap::new();
    for c in enumerate(params, n) {
        *out.entry((c.ground_parts(), c.sky_parts())).or_default() += 1;
    }
    out
}

pub fn count_refined(params: CopParams, n: u32) -> BTreeMap<(usize, usize), BigInt> {
    CopartitionCounter::new(params, n).refined(n)
}

/// All even parts smaller than all odd parts, and only the largest even part
/// has odd multiplicity. Without even parts every multiplicity must be even.
pub fn is_eo_star(lambda: &Partition) -> bool {
    let max_even = lambda.largest_even();
    let min_odd = lambda.parts().iter().copied().filter(|p| p % 2 == 1).min();
    if let Some(o) = min_odd {
        if max_even > o {
            return false;
        }
    }
    let odd_mult = lambda.odd_multiplicity_parts();
    if max_even == 0 {
        odd_mult.is_empty()
    } else {
        odd_mult.len() == 1 && odd_mult.contains(&max_even)
    }
}

/// CSV rows `a,b,m,n,w,s,count` for a refined count table.
pub fn refined_csv(params: CopParams, n: u32, table: &BTreeMap<(usize, usize), BigInt>) -> String {
    table
        .iter()
        .map(|((w, s), c)| format!("{},{},{},{n},{w},{s},{c}\n", params.a, params.b, params.m))
        .collect()
}

pub const REFINED_CSV_HEADER: &str = "a,b,m,n,w,s,count";

#[cfg(test)]
mod tests {
    use super::*;

    fn p(v: &[u32]) -> Partition {
        Partition::new(v.to_vec()).unwrap()
    }

    fn eo(g: &[u32], s: &[u32]) -> Copartition {
        Copartition::new(CopParams::eo(), p(g), p(s)).unwrap()
    }

    #[test]
    fn validation() {
        assert!(CopParams::new(0, 1, 2).is_err());
        let params = CopParams::new(3, 1, 4).unwrap();
        assert!(Copartition::new(params, p(&[7, 3]), p(&[5])).is_ok());
        assert!(Copartition::new(params, p(&[4]), p(&[])).is_err());
        // 3 ≡ 1 mod 2 but a = 3 > m, so 1 is not allowed in the ground
        let params = CopParams::new(3, 1, 2).unwrap();
        assert!(Copartition::new(params, p(&[1]), p(&[])).is_err());
    }

    #[test]
    fn small_enumerations() {
        assert_eq!(
            enumerate(CopParams::eo(), 0),
            vec![Copartition::empty(CopParams::eo())]
        );
        assert_eq!(
            enumerate(CopParams::eo(), 1),
            vec![eo(&[], &[1]), eo(&[1], &[])]
        );
    }

    #[test]
    fn worked_copartition_shape() {
        let c = eo(&[9, 9, 9, 9, 5, 5, 3], &[5, 5, 3]);
        assert_eq!(c.size(), 104);
        assert_eq!(c.rho(), p(&[14, 14, 14]));
        assert_eq!(c.rho_width() as usize * c.sky_parts(), 42);
        let small = eo(&[3, 1], &[1]);
        assert_eq!(small.rho(), p(&[4]));
        assert!(enumerate(CopParams::eo(), 9).contains(&small));
    }

    #[test]
    fn refined_zero() {
        let t = count_refined(CopParams::eo(), 0);
        assert_eq!(t, BTreeMap::from([((0, 0), BigInt::from(1))]));
    }

    #[test]
    fn conjugate_example() {
        let c = eo(&[9, 7, 1, 1], &[7, 7]);
        let d = c.conjugate();
        assert_eq!(d.ground(), &p(&[7, 7]));
        assert_eq!(d.sky(), &p(&[9, 7, 1, 1]));
        assert_eq!(d.rho(), p(&[4, 4, 4, 4]));
        assert_eq!(c.size(), d.size());
        assert_eq!(d.conjugate(), c);
        let e = Copartition::empty(CopParams::eo());
        assert_eq!(e.conjugate(), e);
    }

    #[test]
    fn enlarged_sky_examples() {
        let params = CopParams::new(3, 1, 4).unwrap();
        let c = Copartition::new(params, p(&[11, 11, 7]), p(&[13, 9, 9, 1])).unwrap();
        assert_eq!(c.rho(), p(&[12, 12, 12, 12]));
        assert_eq!(c.enlarged_sky(), p(&[25, 21, 21, 13]));
        assert_eq!(eo(&[3], &[]).enlarged_sky(), Partition::empty());
        assert_eq!(
            eo(&[9, 9, 9, 9, 5, 5, 3], &[5, 5, 3]).enlarged_sky(),
            p(&[19, 19, 17])
        );
    }

    #[test]
    fn eo_star_examples() {
        let c = eo(&[7, 7, 3], &[5, 1]);
        let e = c.to_eo_star().unwrap();
        assert_eq!(e, p(&[11, 11, 7, 7, 6, 6, 6, 4, 4, 4, 4]));
        assert!(is_eo_star(&e));
        assert_eq!(
            Copartition::empty(CopParams::eo()).to_eo_star().unwrap(),
            Partition::empty()
        );
        let bad = Copartition::empty(CopParams::new(1, 2, 3).unwrap());
        assert!(matches!(bad.to_eo_star(), Err(Error::BadParams(_))));
    }

    #[test]
    fn is_eo_star_small_cases() {
        assert!(is_eo_star(&p(&[1, 1])));
        assert!(!is_eo_star(&p(&[2, 1])));
        assert!(is_eo_star(&Partition::empty()));
        assert!(!is_eo_star(&p(&[2, 2])));
        assert!(is_eo_star(&p(&[4])));
        assert!(!is_eo_star(&p(&[2, 1, 1])));
        assert!(!is_eo_star(&p(&[3, 1])));
    }

    #[test]
    fn diagram_matches_worked_example() {
        // (4m+a, 3m+a, a, a), (4m, 4m), (3m+b, 3m+b) with (a,b,m) = (1,1,2)
        let c = eo(&[9, 7, 1, 1], &[7, 7]);
        let d = c.render_diagram(true);
        let expected = "m m m m b m m m\nm m m m b m m m\na a a a\nm m\nm m\nm m\nm";
        assert_eq!(d, expected);
        let conj = c.conjugate().render_diagram(true);
        let expected = "m m a m m m m\nm m a m m m\nm m a\nm m a\nb b\nm m\nm m\nm m";
        // the conjugate swaps the roles of a and b, so labels swap too
        assert_eq!(
            conj.replace('a', "A").replace('b', "a").replace('A', "b"),
            expected
        );
    }

    #[test]
    fn json_shape() {
        let c = eo(&[9, 9, 9, 9, 5, 5, 3], &[5, 5, 3]);
        let v = c.to_json();
        assert_eq!(v["rho"], json!({"parts": 3, "size": 14}));
        assert_eq!(v["ground"], json!([9, 9, 9, 9, 5, 5, 3]));
        assert_eq!(Copartition::from_json(&v).unwrap(), c);
        let mut bad = v.clone();
        bad["rho"] = json!({"parts": 2, "size": 14});
        assert!(Copartition::from_json(&bad).is_err());
        let e = Copartition::empty(CopParams::eo()).to_json();
        assert_eq!(e["rho"], json!({"parts": 0, "size": 0}));
    }

    #[test]
    fn csv_rows() {
        let t = count_refined(CopParams::eo(), 1);
        assert_eq!(
            refined_csv(CopParams::eo(), 1, &t),
            "1,1,2,1,0,1,1\n1,1,2,1,1,0,1\n"
        );
    }
}
