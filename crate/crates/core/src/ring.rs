//! The commutative-ring interface every other module programs against.

use crate::arith;
use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};
use std::fmt::Debug;
use std::hash::Hash;

/// Number of elements of a ring, when it is representable.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Cardinality {
    Finite(u128),
    TooLarge,
}

impl Cardinality {
    pub fn finite(self) -> Option<u128> {
        match self {
            Cardinality::Finite(n) => Some(n),
            Cardinality::TooLarge => None,
        }
    }

    pub fn pow(self, exp: u32) -> Cardinality {
        match self {
            Cardinality::Finite(n) => n
                .checked_pow(exp)
                .map_or(Cardinality::TooLarge, Cardinality::Finite),
            Cardinality::TooLarge => Cardinality::TooLarge,
        }
    }
}

impl std::fmt::Display for Cardinality {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Cardinality::Finite(n) => write!(f, "{n}"),
            Cardinality::TooLarge => f.write_str("too large"),
        }
    }
}

/// An exponent given either directly or as the tower `base^count`, which is
/// never materialized as an integer.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Exponent {
    Flat(u64),
    Tower { base: u64, count: u32 },
}

impl Exponent {
    /// The flat value, if it fits in 64 bits.
    pub fn value(self) -> Option<u64> {
        match self {
            Exponent::Flat(e) => Some(e),
            Exponent::Tower { base, count } => base.checked_pow(count),
        }
    }
}

/// A finite commutative ring with identity.
///
/// Ring descriptors are immutable values; elements are plain data and the
/// descriptor supplies the operations.
pub trait CommutativeRing: Clone + Debug + Send + Sync + 'static {
    type Element: Clone + Eq + Ord + Hash + Debug + Send + Sync + 'static;

    fn zero(&self) -> Self::Element;
    fn one(&self) -> Self::Element;
    fn add(&self, a: &Self::Element, b: &Self::Element) -> Self::Element;
    fn neg(&self, a: &Self::Element) -> Self::Element;
    fn mul(&self, a: &Self::Element, b: &Self::Element) -> Self::Element;

    /// Image of an integer under the unique map from the integers.
    fn from_int(&self, n: i128) -> Self::Element;

    /// Structural characteristic: smallest `s >= 1` with `s * 1 = 0`.
    fn characteristic(&self) -> u64;

    fn cardinality(&self) -> Cardinality;

    /// The element at position `index` of the canonical enumeration.
    fn element_at(&self, index: u128) -> Option<Self::Element>;

    /// Canonical text serialization.
    fn format_element(&self, x: &Self::Element) -> String;

    /// Human-readable ring name, e.g. `Z(200){C3}`.
    fn describe(&self) -> String;

    fn sub(&self, a: &Self::Element, b: &Self::Element) -> Self::Element {
        self.add(a, &self.neg(b))
    }

    fn is_zero(&self, a: &Self::Element) -> bool {
        *a == self.zero()
    }

    fn square(&self, a: &Self::Element) -> Self::Element {
        self.mul(a, a)
    }

    fn is_idempotent(&self, a: &Self::Element) -> bool {
        self.square(a) == *a
    }

    fn scale_int(&self, a: &Self::Element, n: i128) -> Self::Element {
        self.mul(&self.from_int(n), a)
    }

    fn sum<'a, I>(&self, items: I) -> Self::Element
    where
        I: IntoIterator<Item = &'a Self::Element>,
        Self::Element: 'a,
    {
        items
            .into_iter()
            .fold(self.zero(), |acc, x| self.add(&acc, x))
    }

    /// `a^exp` by binary exponentiation.
    fn pow(&self, a: &Self::Element, exp: u64) -> Self::Element {
        self.pow_counted(a, exp, &mut 0)
    }

    /// `a^exp`, adding the number of ring multiplications to `mults`.
    fn pow_counted(&self, a: &Self::Element, mut exp: u64, mults: &mut u64) -> Self::Element {
        let mut acc: Option<Self::Element> = None;
        let mut base = a.clone();
        while exp > 0 {
            if exp & 1 == 1 {
                acc = Some(match acc {
                    None => base.clone(),
                    Some(v) => {
                        *mults += 1;
                        self.mul(&v, &base)
                    }
                });
            }
            exp >>= 1;
            if exp > 0 {
                *mults += 1;
                base = self.square(&base);
            }
        }
        acc.unwrap_or_else(|| self.one())
    }

    /// `a^(base^count)` as `count` successive `base`-th powers.
    fn pow_tower(&self, a: &Self::Element, base: u64, count: u32, mults: &mut u64) -> Self::Element {
        let mut x = a.clone();
        for _ in 0..count {
            x = self.pow_counted(&x, base, mults);
        }
        x
    }

    fn pow_exponent(&self, a: &Self::Element, exp: Exponent) -> Self::Element {
        match exp {
            Exponent::Flat(e) => self.pow(a, e),
            Exponent::Tower { base, count } => self.pow_tower(a, base, count, &mut 0),
        }
    }

    /// Iterator over all elements in canonical order, if the ring is small
    /// enough for its cardinality to be represented.
    fn elements(&self) -> Option<Box<dyn Iterator<Item = Self::Element> + '_>> {
        let n = self.cardinality().finite()?;
        Some(Box::new((0..n).map(move |i| {
            self.element_at(i).expect("index below cardinality")
        })))
    }
}

/// Default bound for [`characteristic_of`].
pub const DEFAULT_CHARACTERISTIC_BOUND: u64 = 1 << 63;

/// Verified characteristic: the smallest `s >= 1` with `s * 1 = 0`, checked
/// against the ring's own arithmetic.
pub fn characteristic_of<R: CommutativeRing>(ring: &R, bound: u64) -> Result<u64> {
    let s = ring.characteristic();
    if s == 0 || s > bound {
        return Err(Error::CharacteristicOverflow { bound });
    }
    if !ring.is_zero(&ring.from_int(s as i128)) {
        return Err(Error::Verification(format!(
            "{} * 1 is not zero in {}",
            s,
            ring.describe()
        )));
    }
    for p in arith::prime_divisors(s) {
        if ring.is_zero(&ring.from_int((s / p) as i128)) {
            return Err(Error::Verification(format!(
                "{} * 1 is already zero in {}",
                s / p,
                ring.describe()
            )));
        }
    }
    Ok(s)
}

/// Integer coefficients of a ring element in the ring's standard basis, in
/// the JSON shape shared by every front end.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum CoefficientsJson {
    Flat(Vec<u64>),
    Nested(Vec<Vec<u64>>),
}

/// `{"group": [...], "modulus": m, "poly": [...]?, "coeffs": [...]}`
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ElementJson {
    pub group: Vec<u64>,
    pub modulus: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub poly: Option<Vec<u64>>,
    pub coeffs: CoefficientsJson,
}

/// Rings that are free modules over `Z/mZ` with a fixed standard basis:
/// residue rings, polynomial quotients, and group rings over those.
///
/// Changing the base modulus gives the ring `R/dR` (for `d | m`) or lets
/// least non-negative representatives be read back into `R`.
pub trait ZmAlgebra: CommutativeRing + Sized {
    fn base_modulus(&self) -> u64;

    /// The same construction over `Z/dZ`.
    fn with_base_modulus(&self, d: u64) -> Result<Self>;

    /// Flat coefficient vector in the standard basis.
    fn coefficients(&self, x: &Self::Element) -> Vec<u64>;

    /// Element from a flat coefficient vector; entries are reduced modulo the
    /// base modulus.
    fn from_coefficients(&self, c: &[u64]) -> Result<Self::Element>;

    /// Rank of the ring as a `Z/mZ` module.
    fn dimension(&self) -> usize;

    fn element_json(&self, x: &Self::Element) -> ElementJson;

    fn element_from_json(&self, j: &ElementJson) -> Result<Self::Element>;

    /// Re-reads the coefficients of `x` in `target` (same basis, another
    /// base modulus).
    fn transfer(&self, x: &Self::Element, target: &Self) -> Self::Element {
        target
            .from_coefficients(&self.coefficients(x))
            .expect("same basis")
    }
}

/// Named generators available to element literals: `x`/`i` for polynomial
/// quotients, `g` or `a, b, ...` for group rings.
pub trait NamedGenerators: CommutativeRing {
    fn generator(&self, name: char) -> Option<Self::Element>;
}
