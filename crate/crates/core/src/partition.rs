//! Integer partitions: constrained generation, counting, conjugation,
//! part statistics and m-modular diagrams.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_bigint::BigInt;
use num_traits::Zero;
use serde::{Deserialize, Deserializer, Serialize};

use crate::error::{Error, Result};

/// A weakly decreasing sequence of positive integers.
///
/// Construction sorts the parts, so two partitions are equal exactly when
/// they are equal as multisets.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(transparent)]
pub struct Partition(Vec<u32>);

/// Summary statistics of a partition. Empty partitions report zeros.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PartitionStats {
    pub largest: u32,
    pub largest_even: u32,
    pub smallest: u32,
    pub odd_multiplicity_parts: BTreeSet<u32>,
    pub diversity: usize,
}

impl Partition {
    pub fn empty() -> Self {
        Self(Vec::new())
    }

    /// Sorts `parts` into weakly decreasing order; rejects zero parts.
    pub fn new(mut parts: Vec<u32>) -> Result<Self> {
        if parts.contains(&0) {
            return Err(Error::InvalidPartition("parts must be positive".into()));
        }
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Ok(Self(parts))
    }

    /// Accepts only an already weakly decreasing list of positive parts.
    pub fn from_decreasing(parts: Vec<u32>) -> Result<Self> {
        if parts.contains(&0) {
            return Err(Error::InvalidPartition("parts must be positive".into()));
        }
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::InvalidPartition(format!(
                "parts must be weakly decreasing: {parts:?}"
            )));
        }
        Ok(Self(parts))
    }

    pub(crate) fn from_sorted_unchecked(parts: Vec<u32>) -> Self {
        debug_assert!(parts.windows(2).all(|w| w[0] >= w[1]) && !parts.contains(&0));
        Self(parts)
    }

    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Number of parts, ν(λ).
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn size(&self) -> u64 {
        self.0.iter().map(|&p| p as u64).sum()
    }

    pub fn largest(&self) -> u32 {
        self.0.first().copied().unwrap_or(0)
    }

    /// Largest even part, 0 when there is none.
    pub fn largest_even(&self) -> u32 {
        self.0.iter().copied().find(|p| p % 2 == 0).unwrap_or(0)
    }

    pub fn smallest(&self) -> u32 {
        self.0.last().copied().unwrap_or(0)
    }

    pub fn multiplicity(&self, part: u32) -> usize {
        self.0.iter().filter(|&&p| p == part).count()
    }

    /// Part size -> multiplicity.
    pub fn multiplicities(&self) -> BTreeMap<u32, usize> {
        let mut m = BTreeMap::new();
        for &p in &self.0 {
            *m.entry(p).or_insert(0) += 1;
        }
        m
    }

    pub fn distinct_parts(&self) -> BTreeSet<u32> {
        self.0.iter().copied().collect()
    }

    pub fn odd_multiplicity_parts(&self) -> BTreeSet<u32> {
        self.multiplicities()
            .into_iter()
            .filter(|(_, c)| c % 2 == 1)
            .map(|(p, _)| p)
            .collect()
    }

    /// Number of distinct part sizes.
    pub fn diversity(&self) -> usize {
        let mut dv = 0;
        let mut prev = 0;
        for &p in &self.0 {
            if p != prev {
                dv += 1;
                prev = p;
            }
        }
        dv
    }

    pub fn stats(&self) -> PartitionStats {
        PartitionStats {
            largest: self.largest(),
            largest_even: self.largest_even(),
            smallest: self.smallest(),
            odd_multiplicity_parts: self.odd_multiplicity_parts(),
            diversity: self.diversity(),
        }
    }

    /// Column lengths of the Young diagram.
    pub fn conjugate(&self) -> Self {
        let width = self.largest() as usize;
        let mut cols = vec![0u32; width];
        for &p in &self.0 {
            for c in &mut cols[..p as usize] {
                *c += 1;
            }
        }
        Self(cols)
    }

    pub fn with_part(&self, part: u32) -> Self {
        assert!(part > 0);
        let mut v = self.0.clone();
        let at = v.partition_point(|&p| p >= part);
        v.insert(at, part);
        Self(v)
    }

    /// Removes one copy of `part`; `None` if it does not occur.
    pub fn without_part(&self, part: u32) -> Option<Self> {
        let at = self.0.iter().position(|&p| p == part)?;
        let mut v = self.0.clone();
        v.remove(at);
        Some(Self(v))
    }

    /// Adds `k` to every part.
    pub fn shifted(&self, k: u32) -> Self {
        Self(self.0.iter().map(|p| p + k).collect())
    }

    /// Parses `"9,9,5"` (empty string or `"()"` gives the empty partition).
    pub fn parse(s: &str) -> Result<Self> {
        let t = s
            .trim()
            .trim_start_matches(['(', '[', '{'])
            .trim_end_matches([')', ']', '}']);
        if t.trim().is_empty() {
            return Ok(Self::empty());
        }
        let parts = t
            .split(',')
            .map(|x| {
                x.trim()
                    .parse::<u32>()
                    .map_err(|_| Error::InvalidPartition(format!("bad part {x:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(parts)
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, p) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, ")")
    }
}

impl<'de> Deserialize<'de> for Partition {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let parts = Vec::<u32>::deserialize(deserializer)?;
        Partition::from_decreasing(parts).map_err(serde::de::Error::custom)
    }
}

/// Constraints for [`generate`] and [`PartitionCounter`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PartSpec {
    pub residue: u32,
    pub modulus: u32,
    pub min_part: u32,
}

impl PartSpec {
    pub fn new(residue: u32, modulus: u32, min_part: u32) -> Self {
        assert!(modulus >= 1, "modulus must be positive");
        Self {
            residue: residue % modulus,
            modulus,
            min_part: min_part.max(1),
        }
    }

    pub fn any() -> Self {
        Self::new(0, 1, 1)
    }

    pub fn admits(&self, part: u32) -> bool {
        part >= self.min_part && part % self.modulus == self.residue
    }

    /// Smallest admissible part.
    pub fn base_part(&self) -> u32 {
        let r = self.min_part % self.modulus;
        let delta = (self.residue + self.modulus - r) % self.modulus;
        self.min_part + delta
    }
}

/// All partitions of `n` into parts admitted by `spec`, optionally with
/// exactly `exact_parts` parts, in ascending lexicographic order.
pub fn generate(n: u32, spec: PartSpec, exact_parts: Option<usize>) -> Vec<Partition> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    descend(n, n, spec, exact_parts, &mut cur, &mut out);
    out.reverse();
    out
}

fn descend(
    remaining: u32,
    max_part: u32,
    spec: PartSpec,
    exact: Option<usize>,
    cur: &mut Vec<u32>,
    out: &mut Vec<Partition>,
) {
    if remaining == 0 {
        if exact.is_none_or(|k| k == cur.len()) {
            out.push(Partition::from_sorted_unchecked(cur.clone()));
        }
        return;
    }
    let base = spec.base_part();
    if let Some(k) = exact {
        let left = k.saturating_sub(cur.len()) as u64;
        if left == 0
            || (remaining as u64) < left * base as u64
            || (remaining as u64) > left * max_part as u64
        {
            return;
        }
    }
    if base > remaining.min(max_part) {
        return;
    }
    let top = remaining.min(max_part);
    let mut p = top - (top - base) % spec.modulus;
    loop {
        cur.push(p);
        descend(remaining - p, p, spec, exact, cur, out);
        cur.pop();
        if p < base + spec.modulus {
            break;
        }
        p -= spec.modulus;
    }
}

/// Memoized counts of partitions under a [`PartSpec`].
///
/// Parts `base + k·m` with exactly `w` parts correspond to partitions of
/// `(n - w·base)/m` into at most `w` parts, which is what the table stores.
#[derive(Clone, Debug)]
pub struct PartitionCounter {
    spec: PartSpec,
    // at_most[w][k]: partitions of k into at most w parts
    at_most: Vec<Vec<BigInt>>,
    max_k: usize,
}

impl PartitionCounter {
    pub fn new(spec: PartSpec, max_n: u32) -> Self {
        let max_k = (max_n / spec.modulus) as usize;
        let max_w = (max_n / spec.base_part()) as usize;
        let mut at_most = vec![vec![BigInt::zero(); max_k + 1]; max_w + 1];
        at_most[0][0] = BigInt::from(1);
        for w in 1..=max_w {
            for k in 0..=max_k {
                // p(k, <=w) = p(k, <=w-1) + p(k-w, <=w)
                let mut v = at_most[w - 1][k].clone();
                if k >= w {
                    v += &at_most[w][k - w];
                }
                at_most[w][k] = v;
            }
        }
        Self {
            spec,
            at_most,
            max_k,
        }
    }

    pub fn spec(&self) -> PartSpec {
        self.spec
    }

    /// Partitions of `n` with exactly `w` admissible parts.
    pub fn count_exact(&self, n: u32, w: usize) -> BigInt {
        let base = self.spec.base_part() as u64;
        let need = base * w as u64;
        if need > n as u64 {
            return BigInt::zero();
        }
        let rest = n as u64 - need;
        if !rest.is_multiple_of(self.spec.modulus as u64) {
            return BigInt::zero();
        }
        let k = (rest / self.spec.modulus as u64) as usize;
        assert!(
            k <= self.max_k && w < self.at_most.len(),
            "count beyond table bound"
        );
        if w == 0 {
            return if k == 0 {
                BigInt::from(1)
            } else {
                BigInt::zero()
            };
        }
        self.at_most[w][k].clone()
    }

    pub fn count(&self, n: u32) -> BigInt {
        let base = self.spec.base_part();
        (0..=(n / base) as usize)
            .map(|w| self.count_exact(n, w))
            .sum()
    }
}

/// Labels used when drawing m-modular cells.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CellLabels {
    pub modulus: String,
    pub residue: String,
}

impl CellLabels {
    pub fn numeric(modulus: u32, residue_cell: u32) -> Self {
        Self {
            modulus: modulus.to_string(),
            residue: residue_cell.to_string(),
        }
    }

    pub fn symbolic(residue_symbol: &str) -> Self {
        Self {
            modulus: "m".into(),
            residue: residue_symbol.into(),
        }
    }
}

/// Rows of an m-modular diagram: part `r + k·m` becomes one residue cell
/// followed by `k` modulus cells. `r` is the smallest admissible part.
pub fn modular_rows(lambda: &Partition, modulus: u32, residue_cell: u32) -> Result<Vec<usize>> {
    lambda
        .parts()
        .iter()
        .map(|&p| {
            if p < residue_cell || !(p - residue_cell).is_multiple_of(modulus) {
                Err(Error::MalformedPart {
                    part: p,
                    residue: residue_cell % modulus,
                    modulus,
                })
            } else {
                Ok(((p - residue_cell) / modulus) as usize)
            }
        })
        .collect()
}

/// Text m-modular diagram, one row per part, cells separated by spaces.
pub fn render_modular(
    lambda: &Partition,
    modulus: u32,
    residue_cell: u32,
    labels: &CellLabels,
) -> Result<String> {
    let rows = modular_rows(lambda, modulus, residue_cell)?;
    let lines: Vec<String> = rows
        .iter()
        .map(|&k| {
            let mut cells = vec![labels.residue.as_str()];
            cells.extend(std::iter::repeat_n(labels.modulus.as_str(), k));
            cells.join(" ")
        })
        .collect();
    Ok(lines.join("\n"))
}
