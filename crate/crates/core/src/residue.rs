//! Integer residue rings `Z/mZ`.

use crate::arith::mul_mod;
use crate::error::{Error, Result};
use crate::ring::{
    Cardinality, CoefficientsJson, CommutativeRing, ElementJson, NamedGenerators, ZmAlgebra,
};
use std::fmt;

/// A residue `value mod modulus`, always kept in `0..modulus`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ResidueElement {
    value: u64,
    modulus: u64,
}

impl ResidueElement {
    pub fn new(value: i128, modulus: u64) -> Self {
        assert!(modulus >= 1, "modulus must be positive");
        ResidueElement {
            value: value.rem_euclid(modulus as i128) as u64,
            modulus,
        }
    }

    pub fn value(self) -> u64 {
        self.value
    }

    pub fn modulus(self) -> u64 {
        self.modulus
    }
}

impl fmt::Display for ResidueElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

/// The ring `Z/mZ`. `m = 1` is the zero ring.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct ResidueRing {
    modulus: u64,
}

impl ResidueRing {
    pub fn new(modulus: u64) -> Result<Self> {
        if modulus == 0 {
            return Err(Error::domain("modulus must be at least 1"));
        }
        Ok(ResidueRing { modulus })
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn elem(&self, v: i128) -> ResidueElement {
        ResidueElement::new(v, self.modulus)
    }

    pub fn inverse(&self, a: &ResidueElement) -> Option<ResidueElement> {
        crate::arith::mod_inverse(a.value, self.modulus).map(|v| self.elem(v as i128))
    }
}

impl CommutativeRing for ResidueRing {
    type Element = ResidueElement;

    fn zero(&self) -> ResidueElement {
        self.elem(0)
    }

    fn one(&self) -> ResidueElement {
        self.elem(1)
    }

    fn add(&self, a: &ResidueElement, b: &ResidueElement) -> ResidueElement {
        debug_assert_eq!(a.modulus, self.modulus);
        let s = a.value as u128 + b.value as u128;
        ResidueElement {
            value: (s % self.modulus as u128) as u64,
            modulus: self.modulus,
        }
    }

    fn neg(&self, a: &ResidueElement) -> ResidueElement {
        let v = if a.value == 0 { 0 } else { self.modulus - a.value };
        ResidueElement {
            value: v,
            modulus: self.modulus,
        }
    }

    fn mul(&self, a: &ResidueElement, b: &ResidueElement) -> ResidueElement {
        debug_assert_eq!(a.modulus, self.modulus);
        ResidueElement {
            value: mul_mod(a.value, b.value, self.modulus),
            modulus: self.modulus,
        }
    }

    fn from_int(&self, n: i128) -> ResidueElement {
        self.elem(n)
    }

    fn characteristic(&self) -> u64 {
        self.modulus
    }

    fn cardinality(&self) -> Cardinality {
        Cardinality::Finite(self.modulus as u128)
    }

    fn element_at(&self, index: u128) -> Option<ResidueElement> {
        (index < self.modulus as u128).then(|| self.elem(index as i128))
    }

    fn format_element(&self, x: &ResidueElement) -> String {
        x.value.to_string()
    }

    fn describe(&self) -> String {
        format!("Z({})", self.modulus)
    }
}

impl ZmAlgebra for ResidueRing {
    fn base_modulus(&self) -> u64 {
        self.modulus
    }

    fn with_base_modulus(&self, d: u64) -> Result<Self> {
        ResidueRing::new(d)
    }

    fn coefficients(&self, x: &ResidueElement) -> Vec<u64> {
        vec![x.value]
    }

    fn from_coefficients(&self, c: &[u64]) -> Result<ResidueElement> {
        match c {
            [v] => Ok(self.elem(*v as i128)),
            _ => Err(Error::domain(format!("expected 1 coefficient, got {}", c.len()))),
        }
    }

    fn dimension(&self) -> usize {
        1
    }

    fn element_json(&self, x: &ResidueElement) -> ElementJson {
        ElementJson {
            group: Vec::new(),
            modulus: self.modulus,
            poly: None,
            coeffs: CoefficientsJson::Flat(vec![x.value]),
        }
    }

    fn element_from_json(&self, j: &ElementJson) -> Result<ResidueElement> {
        match &j.coeffs {
            CoefficientsJson::Flat(c) if j.modulus == self.modulus => self.from_coefficients(c),
            _ => Err(Error::domain("element JSON does not match the ring")),
        }
    }
}

impl NamedGenerators for ResidueRing {
    fn generator(&self, _name: char) -> Option<ResidueElement> {
        None
    }
}
