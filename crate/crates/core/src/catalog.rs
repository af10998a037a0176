//! Idempotent families: base providers over prime fields, the brute-force
//! oracle, enumeration by lifting, and CRT combination.

use crate::arith::{self, PrimePowerFactorization};
use crate::error::{Error, Result};
use crate::group::{all_subgroups, frobenius_orbit_count, AbelianGroup};
use crate::group_ring::GroupRing;
use crate::lifting::{chain_for_prime_power, chain_lift, verify_family, FamilyCheck};
use crate::poly::{berlekamp_factor, null_space, Polynomial, DEFAULT_FACTOR_DEGREE_BOUND};
use crate::quotient::{PolyAlgebra, PolyQuotientRing};
use crate::residue::ResidueRing;
use crate::ring::{Cardinality, CommutativeRing, Exponent, ZmAlgebra};
use rayon::prelude::*;
use serde_json::{json, Value};
use std::fmt;

/// Default cardinality cap for exhaustive scans.
pub const DEFAULT_BRUTE_FORCE_CAP: u128 = 1 << 20;

/// Complete idempotent sets larger than this are summarized by their
/// primitive family and count.
pub const DEFAULT_MATERIALIZE_CAP: u128 = 1 << 16;

/// Largest characteristic for which the Frobenius split loops over `F_p`.
const MAX_SPLIT_PRIME: u64 = 1 << 16;

/// Largest dimension handed to the Frobenius split.
const MAX_SPLIT_DIMENSION: usize = 4096;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CatalogOptions {
    pub brute_force_cap: u128,
    pub materialize_cap: u128,
}

impl Default for CatalogOptions {
    fn default() -> Self {
        CatalogOptions {
            brute_force_cap: DEFAULT_BRUTE_FORCE_CAP,
            materialize_cap: DEFAULT_MATERIALIZE_CAP,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Provenance {
    BruteForce,
    Factorization,
    HatFamily,
    FrobeniusSplit,
    Lifted,
    CrtCombined,
}

impl fmt::Display for Provenance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Provenance::BruteForce => "brute-force",
            Provenance::Factorization => "factorization",
            Provenance::HatFamily => "hat-family",
            Provenance::FrobeniusSplit => "frobenius-split",
            Provenance::Lifted => "lifted",
            Provenance::CrtCombined => "crt-combined",
        })
    }
}

/// A verified list of idempotents of one ring, sorted by coefficient vector.
#[derive(Debug, Clone)]
pub struct IdempotentFamily<R: CommutativeRing> {
    ring: R,
    members: Vec<R::Element>,
    complete: bool,
    orthogonal_primitive: bool,
    provenance: Provenance,
}

impl<R: CommutativeRing> IdempotentFamily<R> {
    /// Sorts and deduplicates `members`, then re-checks every claim: each
    /// member is idempotent, a complete family has power-of-two size, and a
    /// primitive family is orthogonal, nonzero and sums to one.
    pub fn new(
        ring: R,
        mut members: Vec<R::Element>,
        complete: bool,
        orthogonal_primitive: bool,
        provenance: Provenance,
    ) -> Result<Self> {
        members.sort();
        members.dedup();
        if let Some(x) = members.iter().find(|x| !ring.is_idempotent(x)) {
            return Err(Error::Verification(format!(
                "{} is not idempotent in {}",
                ring.format_element(x),
                ring.describe()
            )));
        }
        if complete && !members.len().is_power_of_two() {
            return Err(Error::Verification(format!(
                "complete family of {} has {} members",
                ring.describe(),
                members.len()
            )));
        }
        if orthogonal_primitive {
            let check = verify_family(&ring, &members, Some(members.len()));
            if !check.primitive_certified {
                return Err(Error::Verification(format!(
                    "family in {} is not a complete orthogonal set of nonzero idempotents ({check:?})",
                    ring.describe()
                )));
            }
        }
        Ok(IdempotentFamily {
            ring,
            members,
            complete,
            orthogonal_primitive,
            provenance,
        })
    }

    pub fn ring(&self) -> &R {
        &self.ring
    }

    pub fn members(&self) -> &[R::Element] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn is_complete(&self) -> bool {
        self.complete
    }

    pub fn is_orthogonal_primitive(&self) -> bool {
        self.orthogonal_primitive
    }

    pub fn provenance(&self) -> Provenance {
        self.provenance
    }

    pub fn check(&self, expected_components: Option<usize>) -> FamilyCheck {
        verify_family(&self.ring, &self.members, expected_components)
    }

    /// Primitive idempotents of a complete family: the nonzero members with
    /// no smaller nonzero idempotent below them.
    pub fn primitives(&self) -> Result<IdempotentFamily<R>> {
        if !self.complete {
            return Err(Error::domain("primitive extraction needs a complete family"));
        }
        let r = &self.ring;
        let nonzero: Vec<&R::Element> = self.members.iter().filter(|x| !r.is_zero(x)).collect();
        let prim: Vec<R::Element> = nonzero
            .iter()
            .filter(|e| {
                !nonzero
                    .iter()
                    .any(|f| f != *e && r.mul(e, f) == **f)
            })
            .map(|e| (*e).clone())
            .collect();
        IdempotentFamily::new(r.clone(), prim, false, true, self.provenance)
    }

    /// All `2^n` subset sums of a primitive family.
    pub fn boolean_closure(&self, cap: u128) -> Result<IdempotentFamily<R>> {
        if !self.orthogonal_primitive {
            return Err(Error::domain("closure needs an orthogonal primitive family"));
        }
        let size = 1u128.checked_shl(self.len() as u32).unwrap_or(u128::MAX);
        if self.len() >= 127 || size > cap {
            return Err(Error::size("idempotent set", format!("2^{}", self.len()), cap));
        }
        let r = &self.ring;
        let mut all = vec![r.zero()];
        for p in &self.members {
            let shifted: Vec<R::Element> = all.iter().map(|x| r.add(x, p)).collect();
            all.extend(shifted);
        }
        IdempotentFamily::new(r.clone(), all, true, false, self.provenance)
    }
}

impl<R: ZmAlgebra> IdempotentFamily<R> {
    pub fn members_json(&self) -> Vec<Value> {
        self.members
            .iter()
            .map(|x| serde_json::to_value(self.ring.element_json(x)).expect("serializable"))
            .collect()
    }
}

/// `E(R)` summarized by its primitive family; the complete set is kept only
/// when it is small enough.
#[derive(Debug, Clone)]
pub struct IdempotentCatalog<R: CommutativeRing> {
    pub primitive: IdempotentFamily<R>,
    pub complete: Option<IdempotentFamily<R>>,
}

impl<R: CommutativeRing> IdempotentCatalog<R> {
    pub fn ring(&self) -> &R {
        self.primitive.ring()
    }

    /// `|E(R)| = 2^(number of primitive idempotents)`.
    pub fn count(&self) -> Cardinality {
        Cardinality::Finite(2).pow(self.primitive.len() as u32)
    }

    pub fn provenance(&self) -> Provenance {
        self.complete
            .as_ref()
            .map_or(self.primitive.provenance(), |c| c.provenance())
    }
}

impl<R: ZmAlgebra> IdempotentCatalog<R> {
    /// `{"ring", "count", "complete", "provenance", "primitive", "members"?}`
    pub fn to_json(&self) -> Value {
        let count = match self.count() {
            Cardinality::Finite(n) if n <= u64::MAX as u128 => json!(n as u64),
            c => json!(c.to_string()),
        };
        let mut v = json!({
            "ring": self.ring().describe(),
            "count": count,
            "complete": self.complete.is_some(),
            "provenance": self.provenance().to_string(),
            "primitive": self.primitive.members_json(),
        });
        if let Some(c) = &self.complete {
            v["members"] = Value::Array(c.members_json());
        }
        v
    }
}

/// Every `x` with `x^2 = x`, by scanning the ring's canonical enumeration.
pub fn brute_force_idempotents<R: CommutativeRing>(r: &R, cap: u128) -> Result<IdempotentFamily<R>> {
    let n = match r.cardinality() {
        Cardinality::Finite(n) if n <= cap => n,
        c => return Err(Error::size(r.describe(), c, cap)),
    };
    let members: Vec<R::Element> = (0..n as u64)
        .into_par_iter()
        .filter_map(|i| {
            let x = r.element_at(i as u128).expect("index below cardinality");
            r.is_idempotent(&x).then_some(x)
        })
        .collect();
    IdempotentFamily::new(r.clone(), members, true, false, Provenance::BruteForce)
}

/// `F_p[x]/(x^n - 1) = F_p C_n`: one primitive idempotent per irreducible
/// factor `f_i` of `x^n - 1`, namely `s_i m_i` with `m_i = (x^n - 1)/f_i` and
/// `s_i m_i = 1 (mod f_i)`.
pub fn cyclic_base_idempotents(n: u64, p: u64) -> Result<IdempotentFamily<GroupRing<ResidueRing>>> {
    let group = if n == 1 {
        AbelianGroup::trivial()
    } else {
        AbelianGroup::new(&[n])?
    };
    cyclic_primitives(&GroupRing::new(ResidueRing::new(p)?, group))
}

fn cyclic_primitives(r: &GroupRing<ResidueRing>) -> Result<IdempotentFamily<GroupRing<ResidueRing>>> {
    let p = r.base().modulus();
    let n = r.group().order() as u64;
    if !r.group().is_cyclic() {
        return Err(Error::Unsupported(format!("{} is not cyclic", r.group().describe())));
    }
    if !arith::is_prime(p) {
        return Err(Error::domain(format!("{p} is not prime")));
    }
    if n.is_multiple_of(p) {
        return Err(Error::NonSemisimple { order: n, p });
    }
    let mut xn1 = vec![0u64; n as usize + 1];
    xn1[0] = p - 1;
    xn1[n as usize] = 1;
    let modulus = Polynomial::new(xn1, p);
    let fz = berlekamp_factor(&modulus, DEFAULT_FACTOR_DEGREE_BOUND)?;
    let members = fz
        .factors
        .iter()
        .map(|f| {
            let e = f.inverse.mul(&f.cofactor).rem(&modulus)?;
            let mut c = e.coeffs().to_vec();
            c.resize(n as usize, 0);
            r.from_coefficients(&c)
        })
        .collect::<Result<Vec<_>>>()?;
    IdempotentFamily::new(r.clone(), members, false, true, Provenance::Factorization)
}

/// `{Ĝ} ∪ {K̂ - Ĝ : K of prime index}` over `F_p G`, returned only if it is
/// certified as the full primitive family (its size must equal the number of
/// Frobenius orbits). For `C_q x C_q` the subgroups of prime index are exactly
/// the minimal nontrivial ones.
pub fn hat_family(group: &AbelianGroup, p: u64) -> Result<IdempotentFamily<GroupRing<ResidueRing>>> {
    hat_primitives(&GroupRing::new(ResidueRing::new(p)?, group.clone()))
}

fn hat_primitives(r: &GroupRing<ResidueRing>) -> Result<IdempotentFamily<GroupRing<ResidueRing>>> {
    let p = r.base().modulus();
    if !arith::is_prime(p) {
        return Err(Error::domain(format!("{p} is not prime")));
    }
    let group = r.group();
    let order = group.order();
    let components = frobenius_orbit_count(group, p)?;
    let subgroups = all_subgroups(group)?;
    let whole = subgroups.last().expect("G itself");
    let g_hat = r.hat(whole)?;
    let mut members = vec![g_hat.clone()];
    for k in &subgroups {
        let index = (order / k.order()) as u64;
        if arith::is_prime(index) {
            members.push(r.sub(&r.hat(k)?, &g_hat));
        }
    }
    let check = verify_family(r, &members, Some(components));
    if !check.primitive_certified {
        return Err(Error::CertificationFailed(format!(
            "hat candidates over {} give {} members for {} components ({check:?})",
            r.describe(),
            members.len(),
            components
        )));
    }
    IdempotentFamily::new(r.clone(), members, false, true, Provenance::HatFamily)
}

/// Primitive idempotents of any finite commutative `F_p`-algebra.
///
/// The fixed points of `x -> x^p` form the `F_p`-span `B` of the primitive
/// idempotents (the kernel of the linear map `x^p - x`). Each basis vector
/// `y` of `B` splits an idempotent `e` into the pieces
/// `e_c = e - (ye - ce)^(p-1)`, `c ∈ F_p`, until `dim B` pieces remain.
pub fn frobenius_split<R: ZmAlgebra>(r: &R) -> Result<IdempotentFamily<R>> {
    let p = r.base_modulus();
    if !arith::is_prime(p) {
        return Err(Error::domain(format!("{} has non-prime characteristic {p}", r.describe())));
    }
    if p > MAX_SPLIT_PRIME {
        return Err(Error::size("Frobenius split characteristic", p, MAX_SPLIT_PRIME as u128));
    }
    let d = r.dimension();
    if d > MAX_SPLIT_DIMENSION {
        return Err(Error::size("Frobenius split dimension", d, MAX_SPLIT_DIMENSION as u128));
    }
    let columns: Vec<Vec<u64>> = (0..d)
        .into_par_iter()
        .map(|j| {
            let mut unit = vec![0u64; d];
            unit[j] = 1;
            let b = r.from_coefficients(&unit).expect("basis vector");
            r.coefficients(&r.sub(&r.pow(&b, p), &b))
        })
        .collect();
    let matrix: Vec<Vec<u64>> = (0..d).map(|i| columns.iter().map(|c| c[i]).collect()).collect();
    let kernel: Vec<R::Element> = null_space(matrix, p)
        .iter()
        .map(|v| r.from_coefficients(v))
        .collect::<Result<_>>()?;
    let target = kernel.len();
    let mut family = vec![r.one()];
    for y in &kernel {
        if family.len() == target {
            break;
        }
        let mut next = Vec::with_capacity(target);
        for e in &family {
            let ye = r.mul(y, e);
            let mut covered = r.zero();
            for c in 0..p {
                if covered == *e {
                    break;
                }
                let shifted = r.sub(&ye, &r.scale_int(e, c as i128));
                let piece = r.sub(e, &r.pow(&shifted, p - 1));
                if !r.is_zero(&piece) {
                    covered = r.add(&covered, &piece);
                    next.push(piece);
                }
            }
        }
        family = next;
    }
    if family.len() != target {
        return Err(Error::CertificationFailed(format!(
            "Frobenius split of {} found {} of {} primitive idempotents",
            r.describe(),
            family.len(),
            target
        )));
    }
    IdempotentFamily::new(r.clone(), family, false, true, Provenance::FrobeniusSplit)
}

/// Rings whose reductions mod a prime have a primitive-idempotent provider.
pub trait BaseProvider: ZmAlgebra {
    /// Primitive idempotents of this ring, whose base modulus must be prime.
    /// The default tries the Frobenius split, then brute force.
    fn base_primitives(&self, opts: &CatalogOptions) -> Result<IdempotentFamily<Self>> {
        generic_base_primitives(self, opts)
    }
}

fn generic_base_primitives<R: ZmAlgebra>(r: &R, opts: &CatalogOptions) -> Result<IdempotentFamily<R>> {
    match frobenius_split(r) {
        Ok(f) => Ok(f),
        Err(split_err) => match brute_force_idempotents(r, opts.brute_force_cap) {
            Ok(all) => all.primitives(),
            Err(_) => Err(Error::Unsupported(format!(
                "no base provider for {} ({split_err})",
                r.describe()
            ))),
        },
    }
}

impl BaseProvider for ResidueRing {}

impl BaseProvider for PolyQuotientRing {}

impl BaseProvider for GroupRing<PolyQuotientRing> {}

impl BaseProvider for GroupRing<ResidueRing> {
    /// Hat family when certified, then cyclic factorization, then the
    /// generic providers.
    fn base_primitives(&self, opts: &CatalogOptions) -> Result<IdempotentFamily<Self>> {
        if let Ok(f) = hat_primitives(self) {
            return Ok(f);
        }
        if self.group().is_cyclic() {
            if let Ok(f) = cyclic_primitives(self) {
                return Ok(f);
            }
        }
        generic_base_primitives(self, opts)
    }
}

/// One sum-form term `c * f^alpha` per prime power `p^r` of `m`:
/// `c = s m/p^r` with `s (m/p^r) = 1 (mod p^r)` and `alpha = p^(r-1)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CrtTerm {
    pub prime: u64,
    pub coefficient: u64,
    pub exponent: u64,
}

pub fn crt_terms(m: u64) -> Result<Vec<CrtTerm>> {
    let fac = arith::factorize(m)?;
    Ok(fac
        .parts
        .iter()
        .map(|part| CrtTerm {
            prime: part.prime,
            coefficient: part.crt_coefficient(m),
            exponent: part.prime_power / part.prime,
        })
        .collect())
}

/// The power form `(sum t_i c_i f_i)^(rad^(k-1))`: per-prime coefficients
/// `t_i c_i` with `c_i = rad/p_i` and `t_i c_i = 1 (mod p_i)`, plus `rad` and
/// `k - 1` where `k` is the largest exponent.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PowerForm {
    pub coefficients: Vec<(u64, u64)>,
    pub radical: u64,
    pub tower: u32,
}

pub fn power_form(m: u64) -> Result<PowerForm> {
    let fac = arith::factorize(m)?;
    let rad = fac.radical();
    let coefficients = fac
        .primes()
        .map(|p| {
            let c = rad / p;
            let t = arith::mod_inverse(c % p, p).unwrap_or(1);
            (p, t * c)
        })
        .collect();
    Ok(PowerForm {
        coefficients,
        radical: rad,
        tower: fac.max_exponent() - 1,
    })
}

fn check_parts<R: ZmAlgebra>(
    ring: &R,
    fac: &PrimePowerFactorization,
    families: &[IdempotentFamily<R>],
) -> Result<()> {
    if families.len() != fac.parts.len() {
        return Err(Error::domain(format!(
            "{} has {} prime factors but {} families were given",
            ring.base_modulus(),
            fac.parts.len(),
            families.len()
        )));
    }
    for (part, fam) in fac.parts.iter().zip(families) {
        if fam.ring().base_modulus() != part.prime {
            return Err(Error::domain(format!(
                "family over {} does not match the prime {}",
                fam.ring().describe(),
                part.prime
            )));
        }
    }
    Ok(())
}

/// `sum_i c_i f_i^alpha_i` for one chosen idempotent `f_i` of `R/p_i R` per
/// prime, computed in `R`.
pub fn crt_combine_one<R: ZmAlgebra>(ring: &R, choices: &[(&R, &R::Element)]) -> Result<R::Element> {
    let terms = crt_terms(ring.base_modulus())?;
    if terms.len() != choices.len() {
        return Err(Error::domain("one idempotent per prime factor is required"));
    }
    let e = terms
        .iter()
        .zip(choices)
        .map(|(t, (base, f))| {
            let lifted = ring.pow(&base.transfer(f, ring), t.exponent);
            ring.scale_int(&lifted, t.coefficient as i128)
        })
        .fold(ring.zero(), |acc, x| ring.add(&acc, &x));
    if !ring.is_idempotent(&e) {
        return Err(Error::CombineFailed(format!(
            "{} is not idempotent",
            ring.format_element(&e)
        )));
    }
    Ok(e)
}

/// `(sum_i t_i c_i f_i)^(rad^(k-1))`, computed in `R`.
pub fn crt_combine_powerform_one<R: ZmAlgebra>(
    ring: &R,
    choices: &[(&R, &R::Element)],
) -> Result<R::Element> {
    let form = power_form(ring.base_modulus())?;
    if form.coefficients.len() != choices.len() {
        return Err(Error::domain("one idempotent per prime factor is required"));
    }
    let g = form
        .coefficients
        .iter()
        .zip(choices)
        .map(|((_, tc), (base, f))| ring.scale_int(&base.transfer(f, ring), *tc as i128))
        .fold(ring.zero(), |acc, x| ring.add(&acc, &x));
    let e = ring.pow_exponent(
        &g,
        Exponent::Tower {
            base: form.radical,
            count: form.tower,
        },
    );
    if !ring.is_idempotent(&e) {
        return Err(Error::CombineFailed(format!(
            "{} is not idempotent",
            ring.format_element(&e)
        )));
    }
    Ok(e)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CombineForm {
    /// `sum c_i f_i^alpha_i`
    Sum,
    /// `(sum t_i c_i f_i)^(rad^(k-1))`
    Power,
}

/// Combines one idempotent family per prime factor of the base modulus into
/// idempotents of `R`, over every choice of members. The result is complete
/// when every input family is.
pub fn crt_combine<R: ZmAlgebra>(
    ring: &R,
    families: &[IdempotentFamily<R>],
    form: CombineForm,
    cap: u128,
) -> Result<IdempotentFamily<R>> {
    let fac = arith::factorize(ring.base_modulus())?;
    check_parts(ring, &fac, families)?;
    let total = families
        .iter()
        .try_fold(1u128, |acc, f| acc.checked_mul(f.len() as u128))
        .unwrap_or(u128::MAX);
    if total > cap {
        return Err(Error::size("combined family", total, cap));
    }
    let mut choices: Vec<Vec<usize>> = vec![Vec::new()];
    for fam in families {
        choices = choices
            .into_iter()
            .flat_map(|c| {
                (0..fam.len()).map(move |i| {
                    let mut c = c.clone();
                    c.push(i);
                    c
                })
            })
            .collect();
    }
    let members = choices
        .par_iter()
        .map(|pick| {
            let sel: Vec<(&R, &R::Element)> = families
                .iter()
                .zip(pick)
                .map(|(f, &i)| (f.ring(), &f.members()[i]))
                .collect();
            match form {
                CombineForm::Sum => crt_combine_one(ring, &sel),
                CombineForm::Power => crt_combine_powerform_one(ring, &sel),
            }
        })
        .collect::<Result<Vec<_>>>()?;
    let complete = families.iter().all(|f| f.is_complete());
    let fam = IdempotentFamily::new(ring.clone(), members, complete, false, Provenance::CrtCombined)?;
    if fam.len() as u128 != total {
        return Err(Error::CombineFailed(format!(
            "{} combinations gave only {} distinct idempotents",
            total,
            fam.len()
        )));
    }
    Ok(fam)
}

/// The primitive family of `R` from primitive families of each `R/p_i R`:
/// each `f` is embedded as `c_i f^alpha_i` (zero at the other primes).
pub fn crt_primitive_family<R: ZmAlgebra>(
    ring: &R,
    families: &[IdempotentFamily<R>],
) -> Result<IdempotentFamily<R>> {
    let m = ring.base_modulus();
    let fac = arith::factorize(m)?;
    check_parts(ring, &fac, families)?;
    let terms = crt_terms(m)?;
    let mut members = Vec::new();
    for (t, fam) in terms.iter().zip(families) {
        for f in fam.members() {
            let lifted = ring.pow(&fam.ring().transfer(f, ring), t.exponent);
            members.push(ring.scale_int(&lifted, t.coefficient as i128));
        }
    }
    let provenance = if terms.len() == 1 {
        if terms[0].exponent == 1 {
            families[0].provenance()
        } else {
            Provenance::Lifted
        }
    } else {
        Provenance::CrtCombined
    };
    IdempotentFamily::new(ring.clone(), members, false, true, provenance)
}

/// `E(R)`: primitive idempotents of each `R/pR` from the base providers,
/// lifted through the prime-power chain and glued by the CRT. The complete
/// set is materialized when it has at most `materialize_cap` members, by
/// combining (and so lifting) every base idempotent.
pub fn enumerate_idempotents<R: BaseProvider>(ring: &R, opts: &CatalogOptions) -> Result<IdempotentCatalog<R>> {
    let m = ring.base_modulus();
    if m == 1 {
        return Ok(IdempotentCatalog {
            primitive: IdempotentFamily::new(ring.clone(), Vec::new(), false, true, Provenance::BruteForce)?,
            complete: Some(IdempotentFamily::new(
                ring.clone(),
                vec![ring.zero()],
                true,
                false,
                Provenance::BruteForce,
            )?),
        });
    }
    let fac = arith::factorize(m)?;
    let bases = fac
        .parts
        .iter()
        .map(|part| ring.with_base_modulus(part.prime)?.base_primitives(opts))
        .collect::<Result<Vec<_>>>()?;
    for (part, base) in fac.parts.iter().zip(&bases) {
        if part.exponent > 1 {
            check_chain_lifts(ring, part.prime_power, base)?;
        }
    }
    let primitive = crt_primitive_family(ring, &bases)?;
    let count = primitive.len();
    let complete = if count < 127 && (1u128 << count) <= opts.materialize_cap {
        let completes = bases
            .iter()
            .map(|b| b.boolean_closure(opts.materialize_cap))
            .collect::<Result<Vec<_>>>()?;
        let all = crt_combine(ring, &completes, CombineForm::Sum, opts.materialize_cap)?;
        let provenance = primitive.provenance();
        let all = IdempotentFamily::new(ring.clone(), all.members, true, false, provenance)?;
        if all.len() as u128 != 1u128 << count {
            return Err(Error::Verification(format!(
                "{} idempotents found for {} primitive ones",
                all.len(),
                count
            )));
        }
        Some(all)
    } else {
        None
    };
    Ok(IdempotentCatalog { primitive, complete })
}

/// Lifts each base primitive along the prime-power chain of `R/p^r R` and
/// checks that the lifts stay distinct, which is `|E(R)| = |E(R/N_1)|` on the
/// primitive level.
fn check_chain_lifts<R: ZmAlgebra + 'static>(ring: &R, prime_power: u64, base: &IdempotentFamily<R>) -> Result<()>
where
    R::Element: 'static,
{
    let local = ring.with_base_modulus(prime_power)?;
    let chain = chain_for_prime_power(&local)?;
    let mut lifted = base
        .members()
        .iter()
        .map(|f| chain_lift(&local, &base.ring().transfer(f, &local), &chain).map(|r| r.lifted))
        .collect::<Result<Vec<_>>>()?;
    lifted.sort();
    lifted.dedup();
    if lifted.len() != base.len() {
        return Err(Error::Verification("lifting merged distinct idempotents".into()));
    }
    Ok(())
}

/// Polynomial CRT over `F_p[x]/(m(x))`, optionally under a group ring: with
/// `m = prod p_i^r_i` and Bézout data `s_i m_i = 1 (mod p_i^r_i)`, each
/// choice of idempotents `f_i` of the rings over `F_p[x]/(p_i)` gives
/// `sum s_i m_i f_i^(p^(r_i - 1))`.
///
/// `families[i]` must live over the `i`-th factor returned by
/// [`berlekamp_factor`] for the ring's modulus.
pub fn poly_crt_combine<R: PolyAlgebra + ZmAlgebra>(
    ring: &R,
    families: &[IdempotentFamily<R>],
    cap: u128,
) -> Result<IdempotentFamily<R>> {
    let p = ring.base_modulus();
    if !arith::is_prime(p) {
        return Err(Error::Unsupported(format!(
            "polynomial CRT needs coefficients in a prime field, got Z({p})"
        )));
    }
    let modulus = ring.quotient().modulus_poly().clone();
    let fz = berlekamp_factor(&modulus, DEFAULT_FACTOR_DEGREE_BOUND)?;
    if fz.factors.len() != families.len() {
        return Err(Error::domain(format!(
            "{} has {} irreducible factors but {} families were given",
            modulus,
            fz.factors.len(),
            families.len()
        )));
    }
    for (f, fam) in fz.factors.iter().zip(families) {
        if fam.ring().quotient().modulus_poly() != &f.factor {
            return Err(Error::domain(format!(
                "family over {} does not match the factor {}",
                fam.ring().describe(),
                f.factor
            )));
        }
    }
    let total = families
        .iter()
        .try_fold(1u128, |acc, f| acc.checked_mul(f.len() as u128))
        .unwrap_or(u128::MAX);
    if total > cap {
        return Err(Error::size("combined family", total, cap));
    }
    // c_i f^alpha_i for every member of every family
    let mut parts: Vec<Vec<R::Element>> = Vec::new();
    for (f, fam) in fz.factors.iter().zip(families) {
        let alpha = p.pow(f.multiplicity - 1);
        let c = f.inverse.mul(&f.cofactor).rem(&modulus)?;
        parts.push(
            fam.members()
                .iter()
                .map(|x| {
                    let lifted = ring.pow(&fam.ring().map_quotient(x, ring), alpha);
                    ring.scale_by_poly(&lifted, &c)
                })
                .collect(),
        );
    }
    let mut members = vec![ring.zero()];
    for part in &parts {
        members = members
            .iter()
            .flat_map(|acc| part.iter().map(move |x| ring.add(acc, x)))
            .collect();
    }
    if let Some(x) = members.iter().find(|x| !ring.is_idempotent(x)) {
        return Err(Error::CombineFailed(format!(
            "{} is not idempotent",
            ring.format_element(x)
        )));
    }
    let complete = families.iter().all(|f| f.is_complete());
    let primitive = families.iter().all(|f| f.is_orthogonal_primitive()) && families.len() == 1;
    IdempotentFamily::new(ring.clone(), members, complete, primitive, Provenance::CrtCombined)
}

/// [`poly_crt_combine`] over the complete idempotent sets of each factor
/// ring, found by the base providers.
pub fn poly_crt_idempotents<R: PolyAlgebra + BaseProvider>(
    ring: &R,
    opts: &CatalogOptions,
) -> Result<IdempotentFamily<R>> {
    let p = ring.base_modulus();
    if !arith::is_prime(p) {
        return Err(Error::Unsupported(format!(
            "polynomial CRT needs coefficients in a prime field, got Z({p})"
        )));
    }
    let fz = berlekamp_factor(ring.quotient().modulus_poly(), DEFAULT_FACTOR_DEGREE_BOUND)?;
    let families = fz
        .factors
        .iter()
        .map(|f| {
            ring.with_quotient(&f.factor)?
                .base_primitives(opts)?
                .boolean_closure(opts.materialize_cap)
        })
        .collect::<Result<Vec<_>>>()?;
    poly_crt_combine(ring, &families, opts.materialize_cap)
}
