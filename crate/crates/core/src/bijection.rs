//! The pair space CP′(n) and the moves `f`, `g` between its two parity
//! classes, with the injection φ (iterated `f`) from odd-ground to
//! even-ground (1,1,2)-copartitions and its inverse walk ψ (iterated `g`).
//!
//! A pair (γ̃, σ̃) is in CP′ when σ̃ has only odd parts, its smallest part is
//! at least ℓ(γ̃) + ℓ_e(γ̃), and γ̃ falls in one of the two classes:
//!
//! * odd: ℓ(γ̃) is odd and is the only part size with odd multiplicity;
//! * even: ℓ_e(γ̃) > 0 is the only part size with odd multiplicity, or γ̃ has
//!   no even parts and every multiplicity is even (this includes γ̃ = ∅).

use std::collections::HashSet;
use std::fmt;

use serde::Serialize;
use serde_json::{json, Value};

use crate::copartition::{CopParams, Copartition};
use crate::error::{Error, Result};
use crate::partition::{generate, PartSpec, Partition};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum ParityClass {
    /// CP′_o
    Odd,
    /// CP′_e
    Even,
}

/// Class of a ground partition, or `None` if γ̃ cannot occur in CP′.
pub fn classify_ground(gamma: &Partition) -> Option<ParityClass> {
    let odd = gamma.odd_multiplicity_parts();
    let largest = gamma.largest();
    let largest_even = gamma.largest_even();
    match odd.len() {
        0 if largest_even == 0 => Some(ParityClass::Even),
        1 => {
            let o = *odd.iter().next().unwrap();
            if o == largest && largest % 2 == 1 {
                Some(ParityClass::Odd)
            } else if o == largest_even {
                Some(ParityClass::Even)
            } else {
                None
            }
        }
        _ => None,
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SkyGroundPair {
    gamma: Partition,
    sigma: Partition,
}

impl SkyGroundPair {
    /// Validates CP′ membership.
    pub fn new(gamma: Partition, sigma: Partition) -> Result<Self> {
        if let Some(p) = sigma.parts().iter().find(|&&p| p % 2 == 0) {
            return Err(Error::NotInCpPrime(format!("sky part {p} is even")));
        }
        let bound = gamma.largest() + gamma.largest_even();
        if !sigma.is_empty() && sigma.smallest() < bound {
            return Err(Error::NotInCpPrime(format!(
                "smallest sky part {} is below ℓ + ℓ_e = {bound}",
                sigma.smallest()
            )));
        }
        if classify_ground(&gamma).is_none() {
            return Err(Error::NotInCpPrime(format!(
                "odd-multiplicity parts of {gamma} are not a single ℓ or ℓ_e"
            )));
        }
        Ok(Self { gamma, sigma })
    }

    pub fn gamma(&self) -> &Partition {
        &self.gamma
    }

    pub fn sigma(&self) -> &Partition {
        &self.sigma
    }

    pub fn size(&self) -> u64 {
        self.gamma.size() + self.sigma.size()
    }

    pub fn parity_class(&self) -> ParityClass {
        classify_ground(&self.gamma).expect("membership checked at construction")
    }

    /// o(γ̃): the part with odd multiplicity, 0 if there is none.
    pub fn odd_part(&self) -> u32 {
        self.gamma
            .odd_multiplicity_parts()
            .into_iter()
            .next()
            .unwrap_or(0)
    }

    /// Pairs of this shape are exactly the images of CP^o_{1,1,2} copartitions.
    pub fn is_odd_copartition(&self) -> bool {
        self.parity_class() == ParityClass::Odd
            && (self.sigma.is_empty() || self.sigma.smallest() > 2 * self.gamma.largest())
    }

    /// Pairs of this shape are exactly the images of CP^e_{1,1,2} copartitions.
    pub fn is_even_copartition(&self) -> bool {
        self.parity_class() == ParityClass::Even
            && self.gamma.largest() == self.gamma.largest_even()
    }

    /// (γ', ρ|σ) for a (1,1,2)-copartition.
    pub fn from_copartition(c: &Copartition) -> Result<Self> {
        if c.params() != CopParams::eo() {
            return Err(Error::BadParams(format!(
                "pairs are defined for (1,1,2) only, got {}",
                c.params()
            )));
        }
        Self::new(c.ground().conjugate(), c.enlarged_sky())
    }

    /// Conjugates γ̃ back into a ground and removes the ρ columns from σ̃.
    pub fn to_copartition(&self) -> Result<Copartition> {
        let width = 2 * self.gamma.largest();
        if let Some(&p) = self.sigma.parts().iter().find(|&&p| p <= width) {
            return Err(Error::NotACopartition(format!(
                "sky part {p} does not exceed the rectangle width 2ℓ(γ̃) = {width}"
            )));
        }
        let sky =
            Partition::from_decreasing(self.sigma.parts().iter().map(|p| p - width).collect())?;
        Copartition::new(CopParams::eo(), self.gamma.conjugate(), sky)
    }

    /// Removes ℓ and ℓ_e from γ̃ and adds a sky part ℓ + ℓ_e. When there is no
    /// even part only ℓ moves.
    pub fn f_step(&self) -> Result<Self> {
        let l = self.gamma.largest();
        let le = self.gamma.largest_even();
        if self.gamma.is_empty() {
            return Err(Error::FNotDefined("γ̃ is empty".into()));
        }
        if l == le {
            return Err(Error::FNotDefined(format!("ℓ = ℓ_e = {l}")));
        }
        let mut gamma = self.gamma.without_part(l).expect("largest part present");
        if le > 0 {
            gamma = gamma.without_part(le).expect("largest even part present");
        }
        Self::new(gamma, self.sigma.with_part(l + le))
    }

    /// Removes s(σ̃) and adds o(γ̃) and s(σ̃) - o(γ̃) to γ̃, dropping zero parts.
    pub fn g_step(&self) -> Result<Self> {
        if self.sigma.is_empty() {
            return Err(Error::GNotDefined);
        }
        let s = self.sigma.smallest();
        let o = self.odd_part();
        let mut gamma = self.gamma.clone();
        for part in [o, s - o] {
            if part > 0 {
                gamma = gamma.with_part(part);
            }
        }
        let sigma = self.sigma.without_part(s).expect("smallest part present");
        Self::new(gamma, sigma)
    }

    /// φ: apply `f` until the largest remaining part of γ̃ is even or γ̃ is
    /// empty. Needs an odd-class pair with s(σ̃) > 2ℓ(γ̃).
    pub fn phi(&self) -> Result<Trace> {
        if !self.is_odd_copartition() {
            return Err(Error::OutsideDomain {
                map: "phi",
                reason: format!("{self} is not an odd pair with s(σ̃) > 2ℓ(γ̃)"),
            });
        }
        let mut trace = Trace::new(self.clone());
        loop {
            let next = trace.end().f_step()?;
            let done = next.gamma.is_empty() || next.gamma.largest() % 2 == 0;
            trace.push(StepKind::F, next);
            if done {
                return Ok(trace);
            }
        }
    }

    /// ψ: apply `g` until reaching a pair that recasts as an odd-ground
    /// copartition, or until σ̃ is empty. Needs an even-class pair with ℓ = ℓ_e.
    pub fn psi(&self) -> Result<PsiOutcome> {
        if !self.is_even_copartition() {
            return Err(Error::OutsideDomain {
                map: "psi",
                reason: format!("{self} is not an even pair with ℓ = ℓ_e"),
            });
        }
        let mut trace = Trace::new(self.clone());
        loop {
            let cur = trace.end();
            if cur.is_odd_copartition() {
                return Ok(PsiOutcome {
                    end: PsiEnd::CopartitionPair,
                    trace,
                });
            }
            if cur.sigma.is_empty() {
                return Ok(PsiOutcome {
                    end: PsiEnd::Terminal,
                    trace,
                });
            }
            let next = cur.g_step()?;
            trace.push(StepKind::G, next);
        }
    }

    pub fn to_json(&self) -> Value {
        json!({"gamma": self.gamma, "sigma": self.sigma})
    }
}

impl fmt::Display for SkyGroundPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} | {}", self.gamma, self.sigma)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum StepKind {
    F,
    G,
}

impl StepKind {
    pub fn label(self) -> &'static str {
        match self {
            Self::F => "f",
            Self::G => "g",
        }
    }
}

/// Every intermediate pair of an `f`/`g` walk.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Trace {
    start: SkyGroundPair,
    steps: Vec<(StepKind, SkyGroundPair)>,
}

impl Trace {
    fn new(start: SkyGroundPair) -> Self {
        Self {
            start,
            steps: Vec::new(),
        }
    }

    fn push(&mut self, kind: StepKind, pair: SkyGroundPair) {
        self.steps.push((kind, pair));
    }

    pub fn start(&self) -> &SkyGroundPair {
        &self.start
    }

    pub fn end(&self) -> &SkyGroundPair {
        self.steps.last().map(|(_, p)| p).unwrap_or(&self.start)
    }

    /// Number of steps k.
    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    pub fn steps(&self) -> &[(StepKind, SkyGroundPair)] {
        &self.steps
    }

    /// Consecutive (before, kind, after) triples.
    pub fn transitions(&self) -> impl Iterator<Item = (&SkyGroundPair, StepKind, &SkyGroundPair)> {
        let befores = std::iter::once(&self.start).chain(self.steps.iter().map(|(_, p)| p));
        befores.zip(self.steps.iter()).map(|(b, (k, a))| (b, *k, a))
    }

    /// One line per step: `f: (γ̃) | (σ̃) -> (γ̃') | (σ̃')`.
    pub fn to_text(&self) -> String {
        self.transitions()
            .map(|(b, k, a)| format!("{}: {b} -> {a}\n", k.label()))
            .collect()
    }

    /// Array of snapshots, the first unlabelled.
    pub fn to_json(&self) -> Value {
        let mut out =
            vec![json!({"step": null, "gamma": self.start.gamma, "sigma": self.start.sigma})];
        for (k, p) in &self.steps {
            out.push(json!({"step": k.label(), "gamma": p.gamma, "sigma": p.sigma}));
        }
        Value::Array(out)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum PsiEnd {
    /// Reached a pair of an odd-ground copartition.
    CopartitionPair,
    /// σ̃ emptied with γ̃ in the even class.
    Terminal,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PsiOutcome {
    pub end: PsiEnd,
    pub trace: Trace,
}

impl PsiOutcome {
    pub fn pair(&self) -> &SkyGroundPair {
        self.trace.end()
    }
}

/// φ̄ on copartitions: CP^o_{1,1,2}(n) → CP^e_{1,1,2}(n).
pub fn phi_copartition(c: &Copartition) -> Result<Copartition> {
    SkyGroundPair::from_copartition(c)?
        .phi()?
        .end()
        .to_copartition()
}

/// The inverse walk on copartitions: `Ok(Some(c'))` with c' odd-ground when
/// `c` is in the image of φ̄, `Ok(None)` when ψ ends at a terminal pair.
pub fn psi_copartition(c: &Copartition) -> Result<Option<Copartition>> {
    let out = SkyGroundPair::from_copartition(c)?.psi()?;
    match out.end {
        PsiEnd::CopartitionPair => Ok(Some(out.pair().to_copartition()?)),
        PsiEnd::Terminal => Ok(None),
    }
}

/// Partitions of `n` that occur as even-class grounds: ℓ_e(π) > 0 is the only
/// part with odd multiplicity, or π has no even parts and all multiplicities
/// are even. These are the γ̃ at which ψ terminates.
pub fn complement_enumerate(n: u32) -> Vec<Partition> {
    generate(n, PartSpec::any(), None)
        .into_iter()
        .filter(|p| classify_ground(p) == Some(ParityClass::Even))
        .collect()
}

/// Every pair in CP′(n), ordered by γ̃ size then lexicographically.
pub fn cp_prime_pairs(n: u32) -> Vec<SkyGroundPair> {
    let mut out = Vec::new();
    for k in 0..=n {
        for gamma in generate(k, PartSpec::any(), None) {
            if classify_ground(&gamma).is_none() {
                continue;
            }
            let bound = gamma.largest() + gamma.largest_even();
            for sigma in generate(n - k, PartSpec::new(1, 2, bound.max(1)), None) {
                out.push(SkyGroundPair {
                    gamma: gamma.clone(),
                    sigma,
                });
            }
        }
    }
    out
}

/// Failures of the f/g move identities and class claims over all of CP′(n).
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct MoveTally {
    pub pairs: usize,
    /// g(f(p)) = p whenever ℓ > ℓ_e.
    pub g_after_f: usize,
    /// f(g(p)) = p for even pairs with σ̃ ≠ ∅ and odd pairs with s(σ̃) < 2ℓ.
    pub f_after_g: usize,
    /// f sends odd pairs to even pairs.
    pub f_odd_to_even: usize,
    /// f sends even pairs with ℓ > ℓ_e to odd pairs.
    pub f_even_to_odd: usize,
    /// g sends even pairs with σ̃ ≠ ∅ to odd pairs.
    pub g_even_to_odd: usize,
    /// g sends odd pairs with s(σ̃) < 2ℓ to even pairs with ℓ > ℓ_e.
    pub g_odd_to_even: usize,
}

impl MoveTally {
    pub fn failures(&self) -> usize {
        self.g_after_f
            + self.f_after_g
            + self.f_odd_to_even
            + self.f_even_to_odd
            + self.g_even_to_odd
            + self.g_odd_to_even
    }
}

pub fn check_moves(n: u32) -> MoveTally {
    let mut t = MoveTally::default();
    for p in cp_prime_pairs(n) {
        t.pairs += 1;
        let class = p.parity_class();
        let l = p.gamma.largest();
        if l > p.gamma.largest_even() {
            match p.f_step() {
                Ok(q) => {
                    if q.g_step().as_ref() != Ok(&p) {
                        t.g_after_f += 1;
                    }
                    match class {
                        ParityClass::Odd if q.parity_class() != ParityClass::Even => {
                            t.f_odd_to_even += 1
                        }
                        ParityClass::Even if q.parity_class() != ParityClass::Odd => {
                            t.f_even_to_odd += 1
                        }
                        _ => {}
                    }
                }
                Err(_) => {
                    t.g_after_f += 1;
                    match class {
                        ParityClass::Odd => t.f_odd_to_even += 1,
                        ParityClass::Even => t.f_even_to_odd += 1,
                    }
                }
            }
        }
        if p.sigma.is_empty() {
            continue;
        }
        let s = p.sigma.smallest();
        let odd_below = class == ParityClass::Odd && s < 2 * l;
        if class == ParityClass::Even || odd_below {
            let q = p.g_step();
            if q.as_ref().ok().map(|q| q.f_step()) != Some(Ok(p.clone())) {
                t.f_after_g += 1;
            }
            let class_ok = q.as_ref().is_ok_and(|q| match class {
                ParityClass::Even => q.parity_class() == ParityClass::Odd,
                ParityClass::Odd => {
                    q.parity_class() == ParityClass::Even
                        && q.gamma.largest() > q.gamma.largest_even()
                }
            });
            if !class_ok {
                match class {
                    ParityClass::Even => t.g_even_to_odd += 1,
                    ParityClass::Odd => t.g_odd_to_even += 1,
                }
            }
        }
    }
    t
}

/// What φ and ψ do on all (1,1,2)-copartitions of one size.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct PhiCheck {
    pub n: u32,
    pub odd: usize,
    pub even: usize,
    pub image: usize,
    /// Odd-ground copartitions whose image has even ground, the same size and
    /// the same diversity, and which ψ sends back.
    pub round_trips: usize,
    /// Even-ground copartitions outside the image on which ψ terminates.
    pub terminals: usize,
    /// ψ-terminal grounds, sorted, equal the complement partitions.
    pub terminals_match_complement: bool,
    pub complement: usize,
}

impl PhiCheck {
    pub fn injective(&self) -> bool {
        self.image == self.odd
    }

    pub fn bijective(&self) -> bool {
        self.injective() && self.image == self.even
    }

    pub fn ok(&self) -> bool {
        self.injective()
            && self.round_trips == self.odd
            && self.terminals + self.image == self.even
            && self.terminals_match_complement
            && (self.n.is_multiple_of(2) || self.bijective())
    }
}

pub fn verify_phi_at(n: u32) -> Result<PhiCheck> {
    let all = crate::copartition::enumerate(CopParams::eo(), n);
    let (odd, even): (Vec<_>, Vec<_>) = all.into_iter().partition(|c| c.ground_parts() % 2 == 1);
    let mut image = HashSet::new();
    let mut round_trips = 0;
    for c in &odd {
        let d = phi_copartition(c)?;
        if d.ground_parts() % 2 == 0
            && d.size() == c.size()
            && d.diversity() == c.diversity()
            && psi_copartition(&d)?.as_ref() == Some(c)
        {
            round_trips += 1;
        }
        image.insert(d);
    }
    let mut terminal_grounds = Vec::new();
    for c in even.iter().filter(|c| !image.contains(*c)) {
        let out = SkyGroundPair::from_copartition(c)?.psi()?;
        if out.end == PsiEnd::Terminal {
            terminal_grounds.push(out.pair().gamma().clone());
        }
    }
    terminal_grounds.sort();
    let mut complement = complement_enumerate(n);
    complement.sort();
    Ok(PhiCheck {
        n,
        odd: odd.len(),
        even: even.len(),
        image: image.len(),
        round_trips,
        terminals: terminal_grounds.len(),
        terminals_match_complement: terminal_grounds == complement,
        complement: complement.len(),
    })
}
