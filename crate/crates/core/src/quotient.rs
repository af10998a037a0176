//! Quotient rings `Z_m[x]/(q(x))` for monic `q`: Galois rings, `Z_{p^k}[i]`,
//! and the coefficient rings of the polynomial CRT.

use crate::arith::{self, mul_mod};
use crate::error::{Error, Result};
use crate::poly::Polynomial;
use crate::ring::{
    Cardinality, CoefficientsJson, CommutativeRing, ElementJson, NamedGenerators, ZmAlgebra,
};

/// Residue of a polynomial modulo the ring's monic modulus: exactly
/// `deg q` coefficients, lowest degree first.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PolyQuotientElement {
    coeffs: Vec<u64>,
}

impl PolyQuotientElement {
    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PolyQuotientRing {
    base_modulus: u64,
    modulus: Polynomial,
    degree: usize,
    /// Integer coefficients of the modulus, kept for base changes.
    lifted: Vec<u64>,
    var: char,
}

impl PolyQuotientRing {
    /// `Z_m[x]/(q)`; `q` must be monic of degree at least 1.
    pub fn new(m: u64, q: &Polynomial) -> Result<Self> {
        Self::with_var(m, q, 'x')
    }

    /// `Z_m[i] = Z_m[x]/(x^2 + 1)`, printed with `i`.
    pub fn gaussian(m: u64) -> Result<Self> {
        Self::with_var(m, &Polynomial::new(vec![1, 0, 1], u64::MAX), 'i')
    }

    pub fn with_var(m: u64, q: &Polynomial, var: char) -> Result<Self> {
        if m == 0 {
            return Err(Error::domain("modulus must be at least 1"));
        }
        let degree = q.degree().unwrap_or(0);
        if degree == 0 || !q.is_monic() {
            return Err(Error::domain(format!(
                "modulus polynomial {q} must be monic of degree >= 1"
            )));
        }
        let modulus = q.reduce_modulus(m);
        let lifted = if m > 1 {
            modulus.coeffs().to_vec()
        } else {
            q.coeffs().to_vec()
        };
        Ok(PolyQuotientRing {
            base_modulus: m,
            modulus,
            degree,
            lifted,
            var,
        })
    }

    pub fn modulus_poly(&self) -> &Polynomial {
        &self.modulus
    }

    pub fn var(&self) -> char {
        self.var
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn is_gaussian(&self) -> bool {
        self.var == 'i'
    }

    /// The same base ring modulo another monic polynomial.
    pub fn with_modulus_poly(&self, q: &Polynomial) -> Result<Self> {
        Self::with_var(self.base_modulus, q, 'x')
    }

    /// Integer coefficients of the modulus polynomial, lowest degree first.
    pub fn modulus_coefficients(&self) -> &[u64] {
        &self.lifted
    }

    pub fn from_poly(&self, f: &Polynomial) -> PolyQuotientElement {
        let f = f.reduce_modulus(self.base_modulus);
        let r = if self.base_modulus == 1 {
            Polynomial::zero(1)
        } else {
            f.rem(&self.modulus).expect("monic modulus")
        };
        let mut coeffs = r.coeffs().to_vec();
        coeffs.resize(self.degree(), 0);
        PolyQuotientElement { coeffs }
    }

    pub fn to_poly(&self, x: &PolyQuotientElement) -> Polynomial {
        Polynomial::new(x.coeffs.clone(), self.base_modulus)
    }

    fn constant(&self, c: u64) -> PolyQuotientElement {
        let mut coeffs = vec![0; self.degree()];
        coeffs[0] = c % self.base_modulus;
        PolyQuotientElement { coeffs }
    }
}

impl CommutativeRing for PolyQuotientRing {
    type Element = PolyQuotientElement;

    fn zero(&self) -> PolyQuotientElement {
        self.constant(0)
    }

    fn one(&self) -> PolyQuotientElement {
        self.constant(1)
    }

    fn add(&self, a: &PolyQuotientElement, b: &PolyQuotientElement) -> PolyQuotientElement {
        let m = self.base_modulus as u128;
        PolyQuotientElement {
            coeffs: a
                .coeffs
                .iter()
                .zip(&b.coeffs)
                .map(|(&x, &y)| ((x as u128 + y as u128) % m) as u64)
                .collect(),
        }
    }

    fn neg(&self, a: &PolyQuotientElement) -> PolyQuotientElement {
        let m = self.base_modulus;
        PolyQuotientElement {
            coeffs: a.coeffs.iter().map(|&x| (m - x) % m).collect(),
        }
    }

    fn mul(&self, a: &PolyQuotientElement, b: &PolyQuotientElement) -> PolyQuotientElement {
        let m = self.base_modulus;
        let d = self.degree();
        if m == 1 {
            return self.zero();
        }
        let mut buf = vec![0u64; 2 * d - 1];
        for (i, &x) in a.coeffs.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.coeffs.iter().enumerate() {
                buf[i + j] = ((buf[i + j] as u128 + x as u128 * y as u128) % m as u128) as u64;
            }
        }
        // x^d = -(q_0 + ... + q_{d-1} x^{d-1})
        let q = self.modulus.coeffs();
        for k in (d..buf.len()).rev() {
            let c = buf[k];
            if c == 0 {
                continue;
            }
            buf[k] = 0;
            for (j, &qj) in q.iter().take(d).enumerate() {
                let t = mul_mod(c, qj, m);
                buf[k - d + j] = (buf[k - d + j] + m - t) % m;
            }
        }
        buf.truncate(d);
        PolyQuotientElement { coeffs: buf }
    }

    fn from_int(&self, n: i128) -> PolyQuotientElement {
        self.constant(n.rem_euclid(self.base_modulus as i128) as u64)
    }

    fn characteristic(&self) -> u64 {
        self.base_modulus
    }

    fn cardinality(&self) -> Cardinality {
        Cardinality::Finite(self.base_modulus as u128).pow(self.degree() as u32)
    }

    fn element_at(&self, mut index: u128) -> Option<PolyQuotientElement> {
        let total = self.cardinality().finite()?;
        if index >= total {
            return None;
        }
        let m = self.base_modulus as u128;
        let mut coeffs = vec![0u64; self.degree()];
        for c in coeffs.iter_mut().rev() {
            *c = (index % m) as u64;
            index /= m;
        }
        Some(PolyQuotientElement { coeffs })
    }

    fn format_element(&self, x: &PolyQuotientElement) -> String {
        self.to_poly(x).to_text(self.var)
    }

    fn describe(&self) -> String {
        if self.is_gaussian() {
            format!("Z({})[i]", self.base_modulus)
        } else {
            format!(
                "Z({})[x]/({})",
                self.base_modulus,
                Polynomial::new(self.lifted.clone(), u64::MAX).to_text('x')
            )
        }
    }
}

impl ZmAlgebra for PolyQuotientRing {
    fn base_modulus(&self) -> u64 {
        self.base_modulus
    }

    fn with_base_modulus(&self, d: u64) -> Result<Self> {
        let q = Polynomial::new(self.lifted.clone(), u64::MAX);
        Self::with_var(d, &q, self.var)
    }

    fn coefficients(&self, x: &PolyQuotientElement) -> Vec<u64> {
        x.coeffs.clone()
    }

    fn from_coefficients(&self, c: &[u64]) -> Result<PolyQuotientElement> {
        if c.len() != self.degree() {
            return Err(Error::domain(format!(
                "expected {} coefficients, got {}",
                self.degree(),
                c.len()
            )));
        }
        Ok(PolyQuotientElement {
            coeffs: c.iter().map(|&v| v % self.base_modulus).collect(),
        })
    }

    fn dimension(&self) -> usize {
        self.degree()
    }

    fn element_json(&self, x: &PolyQuotientElement) -> ElementJson {
        ElementJson {
            group: Vec::new(),
            modulus: self.base_modulus,
            poly: Some(self.lifted.clone()),
            coeffs: CoefficientsJson::Flat(x.coeffs.clone()),
        }
    }

    fn element_from_json(&self, j: &ElementJson) -> Result<PolyQuotientElement> {
        match &j.coeffs {
            CoefficientsJson::Flat(c) if j.modulus == self.base_modulus => {
                self.from_coefficients(c)
            }
            _ => Err(Error::domain("element JSON does not match the ring")),
        }
    }
}

impl NamedGenerators for PolyQuotientRing {
    fn generator(&self, name: char) -> Option<PolyQuotientElement> {
        (name == self.var).then(|| self.from_poly(&Polynomial::x(self.base_modulus)))
    }
}

/// Rings built over a polynomial quotient `Z_m[x]/(q)` whose modulus `q` can
/// be swapped for a divisor or multiple (the polynomial CRT needs both).
pub trait PolyAlgebra: CommutativeRing + Sized {
    fn quotient(&self) -> &PolyQuotientRing;

    /// The same construction over `Z_m[x]/(q)` for another monic `q`.
    fn with_quotient(&self, q: &Polynomial) -> Result<Self>;

    /// Reads `x` into `target` by reducing every coefficient polynomial
    /// modulo the target's modulus.
    fn map_quotient(&self, x: &Self::Element, target: &Self) -> Self::Element;

    /// Multiplies by the coefficient-ring element `c(x)`.
    fn scale_by_poly(&self, x: &Self::Element, c: &Polynomial) -> Self::Element;
}

impl PolyAlgebra for PolyQuotientRing {
    fn quotient(&self) -> &PolyQuotientRing {
        self
    }

    fn with_quotient(&self, q: &Polynomial) -> Result<Self> {
        self.with_modulus_poly(q)
    }

    fn map_quotient(&self, x: &PolyQuotientElement, target: &Self) -> PolyQuotientElement {
        target.from_poly(&self.to_poly(x))
    }

    fn scale_by_poly(&self, x: &PolyQuotientElement, c: &Polynomial) -> PolyQuotientElement {
        self.mul(x, &self.from_poly(c))
    }
}

/// The idempotents `{0, 1, (p+1)/2 + (x/2)i, (p+1)/2 - (x/2)i}` of
/// `Z_p[i]` for a prime `p = 1 (mod 4)`, where `x = ((p-1)/2)!` and `/2`
/// is multiplication by the inverse of 2 modulo `p`.
pub fn gaussian_idempotents(p: u64) -> Result<(PolyQuotientRing, Vec<PolyQuotientElement>)> {
    if !arith::is_prime(p) {
        return Err(Error::domain(format!("{p} is not prime")));
    }
    if p % 4 != 1 {
        return Err(Error::Unsupported(format!(
            "-1 is not a square mod {p}; Z_{p}[i] has only the trivial idempotents"
        )));
    }
    let ring = PolyQuotientRing::gaussian(p)?;
    let x = (1..=(p - 1) / 2).fold(1u64, |acc, k| mul_mod(acc, k, p));
    let half = arith::mod_inverse(2, p).expect("odd prime");
    let a = p.div_ceil(2);
    let b = mul_mod(x, half, p);
    let plus = ring.from_coefficients(&[a, b])?;
    let minus = ring.from_coefficients(&[a, (p - b) % p])?;
    let out = vec![ring.zero(), ring.one(), plus, minus];
    for e in &out {
        if !ring.is_idempotent(e) {
            return Err(Error::Verification(format!(
                "{} is not idempotent in {}",
                ring.format_element(e),
                ring.describe()
            )));
        }
    }
    Ok((ring, out))
}
