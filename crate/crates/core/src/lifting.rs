//! Idempotent lifting: the binomial lift, power lifts, and lifts along
//! chains of nilpotent ideals.

use crate::arith;
use crate::error::{Error, Result};
use crate::group_ring::GroupRing;
use crate::ring::{CommutativeRing, ZmAlgebra};
use serde_json::{json, Value};
use std::fmt;
use std::sync::Arc;

/// Default search bound for [`nilpotency_index`] inside the lifts.
pub const DEFAULT_NILPOTENCY_CAP: u32 = 64;

/// Rings up to this size are scanned for ideal-membership checks.
const MEMBERSHIP_SCAN_CAP: u128 = 1 << 16;

/// Smallest `k <= cap` with `x^k = 0`, or `None` if `x` is not nilpotent
/// within the cap.
pub fn nilpotency_index<R: CommutativeRing>(r: &R, x: &R::Element, cap: u32) -> Option<u32> {
    let mut acc = x.clone();
    for k in 1..=cap {
        if r.is_zero(&acc) {
            return Some(k);
        }
        acc = r.mul(&acc, x);
    }
    None
}

/// `C(n, i)` for `i = 0..=n`, reduced into the ring.
fn binomial_row<R: CommutativeRing>(r: &R, n: u32) -> Vec<R::Element> {
    let ch = r.characteristic().max(1) as u128;
    let mut row = vec![1u128 % ch];
    for _ in 0..n {
        let mut next = vec![1u128 % ch; row.len() + 1];
        for i in 1..row.len() {
            next[i] = (row[i - 1] + row[i]) % ch;
        }
        row = next;
    }
    row.into_iter().map(|c| r.from_int(c as i128)).collect()
}

/// The unique idempotent `e` with `e - f` in the nil ideal generated by
/// `f^2 - f`:
///
/// `e = sum_{i=n}^{2n-1} C(2n-1, i) f^i (1-f)^(2n-1-i)` where `(f^2 - f)^n = 0`.
///
/// With `n = None` the minimal such `n` is found by [`nilpotency_index`].
pub fn binomial_lift<R: CommutativeRing>(r: &R, f: &R::Element, n: Option<u32>) -> Result<R::Element> {
    let defect = r.sub(&r.square(f), f);
    let n = match n {
        Some(n) => {
            if n == 0 || !r.is_zero(&r.pow(&defect, n as u64)) {
                return Err(Error::NotNil { cap: n });
            }
            n
        }
        None => nilpotency_index(r, &defect, DEFAULT_NILPOTENCY_CAP)
            .ok_or(Error::NotNil { cap: DEFAULT_NILPOTENCY_CAP })?,
    };
    let top = 2 * n - 1;
    let binom = binomial_row(r, top);
    let g = r.sub(&r.one(), f);
    // f^i for i = n..=top and g^j for j = 0..n
    let mut f_pow = r.pow(f, n as u64);
    let mut g_pows = vec![r.one()];
    for _ in 1..n {
        let last = g_pows.last().unwrap();
        g_pows.push(r.mul(last, &g));
    }
    let mut e = r.zero();
    for i in n..=top {
        let j = (top - i) as usize;
        let term = r.mul(&r.mul(&binom[i as usize], &f_pow), &g_pows[j]);
        e = r.add(&e, &term);
        f_pow = r.mul(&f_pow, f);
    }
    Ok(e)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LiftMode {
    Checked,
    /// Skips the final `e^2 = e` check.
    Unchecked,
}

/// `f^s`. In checked mode a non-idempotent result is an error, which means
/// the caller's nilpotency hypothesis was wrong.
pub fn power_lift<R: CommutativeRing>(r: &R, f: &R::Element, s: u64, mode: LiftMode) -> Result<R::Element> {
    if s == 0 {
        return Err(Error::domain("power lift exponent must be at least 1"));
    }
    let e = r.pow(f, s);
    if mode == LiftMode::Checked && !r.is_idempotent(&e) {
        return Err(Error::LiftFailed(format!(
            "{}^{s} is not idempotent",
            r.format_element(f)
        )));
    }
    Ok(e)
}

/// `(e + n)^p - e` lies in the ideal `pnR`. Checked by scanning `R`, so
/// `None` is returned for rings too large to scan.
pub fn check_power_congruence<R: CommutativeRing>(
    r: &R,
    e: &R::Element,
    n: &R::Element,
    p: u64,
) -> Option<bool> {
    if r.cardinality().finite()? > MEMBERSHIP_SCAN_CAP {
        return None;
    }
    let target = r.sub(&r.pow(&r.add(e, n), p), e);
    let pn = r.scale_int(n, p as i128);
    Some(r.elements()?.any(|x| r.mul(&pn, &x) == target))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ChainProvenance {
    PrincipalNilpotent,
    PrimePower,
    ValidatedNumerically,
    Trusted,
}

impl fmt::Display for ChainProvenance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ChainProvenance::PrincipalNilpotent => "principal-nilpotent",
            ChainProvenance::PrimePower => "prime-power",
            ChainProvenance::ValidatedNumerically => "validated-numerically",
            ChainProvenance::Trusted => "trusted",
        })
    }
}

/// One link `N_i ⊃ N_{i+1}` of a chain: `N_i^t ⊆ N_{i+1}` and `s N_i ⊆ N_{i+1}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ChainStep {
    pub nilpotency: u32,
    pub characteristic: u64,
}

type Congruence<E> = Arc<dyn Fn(&E, &E) -> bool + Send + Sync>;

/// A chain `R ⊃ N_1 ⊃ ... ⊃ N_k = 0` with its per-link data. Lifting along it
/// raises to `s_1 s_2 ... s_{k-1}`, one factor at a time.
#[derive(Clone)]
pub struct CncChain<E> {
    steps: Vec<ChainStep>,
    provenance: ChainProvenance,
    /// `x ≡ y (mod N_1)`, when decidable.
    congruence: Option<Congruence<E>>,
}

impl<E> fmt::Debug for CncChain<E> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("CncChain")
            .field("steps", &self.steps)
            .field("provenance", &self.provenance)
            .field("congruence", &self.congruence.is_some())
            .finish()
    }
}

impl<E: 'static> CncChain<E> {
    /// Validates every link: `t >= 2`, `s >= 1`, and every prime factor of
    /// `s` is at least `t`.
    pub fn new(steps: Vec<ChainStep>, provenance: ChainProvenance) -> Result<Self> {
        for (i, st) in steps.iter().enumerate() {
            if st.nilpotency < 2 || st.characteristic < 1 {
                return Err(Error::domain(format!(
                    "chain step {}: need t >= 2 and s >= 1, got t = {}, s = {}",
                    i + 1,
                    st.nilpotency,
                    st.characteristic
                )));
            }
            if let Some(q) = arith::prime_divisors(st.characteristic)
                .into_iter()
                .find(|&q| q < st.nilpotency as u64)
            {
                return Err(Error::domain(format!(
                    "chain step {}: prime factor {q} of s = {} is below t = {}",
                    i + 1,
                    st.characteristic,
                    st.nilpotency
                )));
            }
        }
        Ok(CncChain {
            steps,
            provenance,
            congruence: None,
        })
    }

    /// A chain given only by its `(t_i, s_i)` data.
    pub fn trusted(steps: Vec<ChainStep>) -> Result<Self> {
        Self::new(steps, ChainProvenance::Trusted)
    }

    /// `k = 1`: `N_1 = 0`, so every lift is the identity.
    pub fn identity() -> Self {
        CncChain {
            steps: Vec::new(),
            provenance: ChainProvenance::Trusted,
            congruence: None,
        }
    }

    /// `k - 1` links with `t = 2` and the same `s`.
    pub fn uniform(s: u64, links: u32, provenance: ChainProvenance) -> Result<Self> {
        let step = ChainStep {
            nilpotency: 2,
            characteristic: s,
        };
        Self::new(vec![step; links as usize], provenance)
    }

    pub fn with_congruence(mut self, f: impl Fn(&E, &E) -> bool + Send + Sync + 'static) -> Self {
        self.congruence = Some(Arc::new(f));
        self
    }

    pub fn steps(&self) -> &[ChainStep] {
        &self.steps
    }

    /// Number of ideals `k`.
    pub fn length(&self) -> usize {
        self.steps.len() + 1
    }

    pub fn provenance(&self) -> ChainProvenance {
        self.provenance
    }

    /// `x ≡ y (mod N_1)`, or `None` if the chain cannot decide it.
    pub fn congruent(&self, x: &E, y: &E) -> Option<bool> {
        self.congruence.as_ref().map(|c| c(x, y))
    }

    /// Run-length form of `s_1, ..., s_{k-1}`: `[(s, count), ...]`.
    pub fn tower(&self) -> Vec<(u64, u32)> {
        let mut runs: Vec<(u64, u32)> = Vec::new();
        for st in &self.steps {
            match runs.last_mut() {
                Some((s, c)) if *s == st.characteristic => *c += 1,
                _ => runs.push((st.characteristic, 1)),
            }
        }
        runs
    }

    /// `s_1 ... s_{k-1}` when it fits in 64 bits.
    pub fn exponent(&self) -> Option<u64> {
        self.steps
            .iter()
            .try_fold(1u64, |acc, st| acc.checked_mul(st.characteristic))
    }
}

/// Outcome of one chain lift.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LiftReport<E> {
    pub input: E,
    pub lifted: E,
    pub tower: Vec<(u64, u32)>,
    pub idempotent: bool,
    /// `lifted ≡ input (mod N_1)`.
    pub congruent: bool,
    pub mults: u64,
}

impl<E> LiftReport<E> {
    pub fn verified(&self) -> bool {
        self.idempotent && self.congruent
    }

    pub fn to_json<R: ZmAlgebra<Element = E>>(&self, ring: &R) -> Value {
        let tower = match self.tower.as_slice() {
            [] => json!([1, 0]),
            [(s, c)] => json!([s, c]),
            runs => json!(runs.iter().map(|(s, c)| json!([s, c])).collect::<Vec<_>>()),
        };
        json!({
            "input": ring.element_json(&self.input),
            "lifted": ring.element_json(&self.lifted),
            "tower": tower,
            "verified": self.verified(),
            "mults": self.mults,
        })
    }
}

/// `x ≡ y (mod N_1)` via the chain when it can decide, otherwise the weaker
/// test that `x - y` is nilpotent.
fn congruent_mod_chain<R: CommutativeRing>(
    r: &R,
    chain: &CncChain<R::Element>,
    x: &R::Element,
    y: &R::Element,
) -> bool
where
    R::Element: 'static,
{
    chain
        .congruent(x, y)
        .unwrap_or_else(|| nilpotency_index(r, &r.sub(x, y), DEFAULT_NILPOTENCY_CAP).is_some())
}

/// Lifts `f + N_1` to `f^(s_1 ... s_{k-1})`, applying each `s_i` in turn.
pub fn chain_lift<R: CommutativeRing>(
    r: &R,
    f: &R::Element,
    chain: &CncChain<R::Element>,
) -> Result<LiftReport<R::Element>>
where
    R::Element: 'static,
{
    let mut mults = 1;
    let sq = r.square(f);
    if sq == *f {
        return Ok(LiftReport {
            input: f.clone(),
            lifted: f.clone(),
            tower: chain.tower(),
            idempotent: true,
            congruent: true,
            mults,
        });
    }
    if !congruent_mod_chain(r, chain, &sq, f) {
        return Err(Error::domain(format!(
            "{} is not idempotent modulo the first ideal of the chain",
            r.format_element(f)
        )));
    }
    let mut e = f.clone();
    for st in chain.steps() {
        e = r.pow_counted(&e, st.characteristic, &mut mults);
    }
    mults += 1;
    let idempotent = r.is_idempotent(&e);
    let congruent = congruent_mod_chain(r, chain, &e, f);
    if !(idempotent && congruent) {
        return Err(Error::LiftFailed(format!(
            "{} lifted to {} (idempotent: {idempotent}, congruent: {congruent})",
            r.format_element(f),
            r.format_element(&e)
        )));
    }
    Ok(LiftReport {
        input: f.clone(),
        lifted: e,
        tower: chain.tower(),
        idempotent,
        congruent,
        mults,
    })
}

/// Chain `⟨a⟩ ⊃ ⟨a^2⟩ ⊃ ... ⊃ ⟨a^k⟩ = 0` with `t_i = 2` and `s_i = s`, where `s`
/// is the characteristic of `R/⟨a⟩`.
///
/// `k` defaults to the nilpotency index of `a`. In rings small enough to
/// scan, `s * 1 ∈ aR` is checked and congruence mod `aR` becomes decidable.
pub fn chain_for_nilpotent_ideal<R>(
    r: &R,
    a: &R::Element,
    k: Option<u32>,
    s: u64,
) -> Result<CncChain<R::Element>>
where
    R: CommutativeRing + 'static,
    R::Element: 'static,
{
    let index = nilpotency_index(r, a, DEFAULT_NILPOTENCY_CAP).ok_or_else(|| {
        Error::domain(format!("{} is not nilpotent", r.format_element(a)))
    })?;
    if let Some(k) = k {
        if k != index {
            return Err(Error::domain(format!(
                "{} has nilpotency index {index}, not {k}",
                r.format_element(a)
            )));
        }
    }
    if index == 1 {
        return Ok(CncChain::identity());
    }
    let scannable = r
        .cardinality()
        .finite()
        .is_some_and(|n| n <= MEMBERSHIP_SCAN_CAP);
    if !scannable {
        return CncChain::uniform(s, index - 1, ChainProvenance::PrincipalNilpotent);
    }
    let ideal: std::collections::BTreeSet<R::Element> = r
        .elements()
        .expect("finite ring")
        .map(|x| r.mul(a, &x))
        .collect();
    if !ideal.contains(&r.from_int(s as i128)) {
        return Err(Error::domain(format!(
            "{s} * 1 is not in the ideal generated by {}",
            r.format_element(a)
        )));
    }
    let ring = r.clone();
    let ideal = Arc::new(ideal);
    Ok(
        CncChain::uniform(s, index - 1, ChainProvenance::ValidatedNumerically)?
            .with_congruence(move |x, y| ideal.contains(&ring.sub(x, y))),
    )
}

/// For base modulus `m` with radical `rad` and largest exponent `k`: the
/// chain `rad R ⊃ rad^2 R ⊃ ... ⊃ rad^k R = 0`, so the lift exponent is
/// `rad^(k-1)`. Congruence is coefficient-wise mod `rad`.
pub fn chain_for_prime_power<R>(r: &R) -> Result<CncChain<R::Element>>
where
    R: ZmAlgebra + 'static,
    R::Element: 'static,
{
    let m = r.base_modulus();
    if m < 2 {
        return Ok(CncChain::identity());
    }
    let fac = arith::factorize(m)?;
    let rad = fac.radical();
    let k = fac.max_exponent();
    let ring = r.clone();
    Ok(CncChain::uniform(rad, k - 1, ChainProvenance::PrimePower)?.with_congruence(move |x, y| {
        ring.coefficients(x)
            .iter()
            .zip(ring.coefficients(y))
            .all(|(a, b)| a % rad == b % rad)
    }))
}

/// The chain `N_1 G ⊃ N_2 G ⊃ ...` induced on `RG`, with the same `(t_i, s_i)`.
pub fn chain_for_group_ring<R>(
    base: &CncChain<R::Element>,
    _ring: &GroupRing<R>,
) -> CncChain<<GroupRing<R> as CommutativeRing>::Element>
where
    R: CommutativeRing + 'static,
    R::Element: 'static,
{
    let congruence = base.congruence.clone().map(|c| {
        move |x: &crate::group_ring::GroupRingElement<R::Element>,
              y: &crate::group_ring::GroupRingElement<R::Element>| {
            x.coeffs().iter().zip(y.coeffs()).all(|(a, b)| c(a, b))
        }
    });
    let chain = CncChain {
        steps: base.steps.clone(),
        provenance: base.provenance,
        congruence: None,
    };
    match congruence {
        Some(c) => chain.with_congruence(c),
        None => chain,
    }
}

pub fn verify_idempotent<R: CommutativeRing>(r: &R, x: &R::Element) -> bool {
    r.is_idempotent(x)
}

pub fn verify_orthogonal<R: CommutativeRing>(r: &R, x: &R::Element, y: &R::Element) -> bool {
    r.is_zero(&r.mul(x, y))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FamilyCheck {
    pub orthogonal: bool,
    pub sums_to_one: bool,
    pub all_idempotent: bool,
    pub primitive_certified: bool,
}

impl FamilyCheck {
    pub fn complete_orthogonal(&self) -> bool {
        self.orthogonal && self.sums_to_one && self.all_idempotent
    }
}

/// Checks a candidate family. It is certified primitive when it is a complete
/// orthogonal set of nonzero idempotents whose size equals the number of
/// components `expected_components` of the ring.
pub fn verify_family<R: CommutativeRing>(
    r: &R,
    members: &[R::Element],
    expected_components: Option<usize>,
) -> FamilyCheck {
    let all_idempotent = members.iter().all(|x| r.is_idempotent(x));
    let orthogonal = members.iter().enumerate().all(|(i, x)| {
        members[i + 1..].iter().all(|y| verify_orthogonal(r, x, y))
    });
    let sums_to_one = r.sum(members) == r.one();
    let nonzero = members.iter().all(|x| !r.is_zero(x));
    let primitive_certified = all_idempotent
        && orthogonal
        && sums_to_one
        && nonzero
        && expected_components == Some(members.len());
    FamilyCheck {
        orthogonal,
        sums_to_one,
        all_idempotent,
        primitive_certified,
    }
}
