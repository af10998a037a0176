//! Dense univariate polynomials over `Z/mZ`.

mod factor;

pub(crate) use factor::null_space;
pub use factor::{berlekamp_factor, PolyFactor, PolyFactorization, DEFAULT_FACTOR_DEGREE_BOUND};

use crate::arith::{self, mul_mod};
use crate::error::{Error, Result};
use std::fmt;

/// A polynomial with coefficients in `Z/mZ`, lowest degree first, trimmed so
/// that the leading coefficient is nonzero.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Polynomial {
    coeffs: Vec<u64>,
    modulus: u64,
}

impl Polynomial {
    pub fn new(coeffs: Vec<u64>, modulus: u64) -> Self {
        assert!(modulus >= 1, "modulus must be positive");
        let mut coeffs: Vec<u64> = coeffs.into_iter().map(|c| c % modulus).collect();
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        Polynomial { coeffs, modulus }
    }

    pub fn from_signed(coeffs: &[i128], modulus: u64) -> Self {
        let c = coeffs
            .iter()
            .map(|&v| v.rem_euclid(modulus as i128) as u64)
            .collect();
        Polynomial::new(c, modulus)
    }

    pub fn zero(modulus: u64) -> Self {
        Polynomial::new(Vec::new(), modulus)
    }

    pub fn constant(c: u64, modulus: u64) -> Self {
        Polynomial::new(vec![c], modulus)
    }

    pub fn one(modulus: u64) -> Self {
        Polynomial::constant(1, modulus)
    }

    /// `c * x^k`
    pub fn monomial(c: u64, k: usize, modulus: u64) -> Self {
        let mut v = vec![0; k + 1];
        v[k] = c;
        Polynomial::new(v, modulus)
    }

    pub fn x(modulus: u64) -> Self {
        Polynomial::monomial(1, 1, modulus)
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    /// Coefficient of `x^k` (zero beyond the degree).
    pub fn coeff(&self, k: usize) -> u64 {
        self.coeffs.get(k).copied().unwrap_or(0)
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.modulus == 1 || self.coeffs == [1]
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> u64 {
        self.coeffs.last().copied().unwrap_or(0)
    }

    pub fn is_monic(&self) -> bool {
        self.leading() == 1 || (self.modulus == 1)
    }

    /// Same polynomial reduced modulo `d`.
    pub fn reduce_modulus(&self, d: u64) -> Polynomial {
        Polynomial::new(self.coeffs.clone(), d)
    }

    fn check(&self, other: &Polynomial) {
        assert_eq!(self.modulus, other.modulus, "polynomials over different rings");
    }

    pub fn add(&self, other: &Polynomial) -> Polynomial {
        self.check(other);
        let m = self.modulus as u128;
        let n = self.coeffs.len().max(other.coeffs.len());
        let c = (0..n)
            .map(|k| ((self.coeff(k) as u128 + other.coeff(k) as u128) % m) as u64)
            .collect();
        Polynomial::new(c, self.modulus)
    }

    pub fn neg(&self) -> Polynomial {
        let m = self.modulus;
        Polynomial::new(
            self.coeffs.iter().map(|&c| (m - c) % m).collect(),
            m,
        )
    }

    pub fn sub(&self, other: &Polynomial) -> Polynomial {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: u64) -> Polynomial {
        let m = self.modulus;
        Polynomial::new(self.coeffs.iter().map(|&a| mul_mod(a, c % m, m)).collect(), m)
    }

    pub fn mul(&self, other: &Polynomial) -> Polynomial {
        self.check(other);
        if self.is_zero() || other.is_zero() {
            return Polynomial::zero(self.modulus);
        }
        let m = self.modulus as u128;
        let mut acc = vec![0u128; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                acc[i + j] = (acc[i + j] + a as u128 * b as u128) % m;
            }
        }
        Polynomial::new(acc.into_iter().map(|v| v as u64).collect(), self.modulus)
    }

    /// Euclidean division; the divisor's leading coefficient must be a unit.
    pub fn div_rem(&self, divisor: &Polynomial) -> Result<(Polynomial, Polynomial)> {
        self.check(divisor);
        let m = self.modulus;
        let d = divisor
            .degree()
            .ok_or_else(|| Error::NonInvertible("division by the zero polynomial".into()))?;
        let lead_inv = arith::mod_inverse(divisor.leading(), m).ok_or_else(|| {
            Error::NonInvertible(format!(
                "leading coefficient {} is not a unit mod {m}",
                divisor.leading()
            ))
        })?;
        let mut rem = self.coeffs.clone();
        if rem.len() <= d {
            return Ok((Polynomial::zero(m), self.clone()));
        }
        let mut quot = vec![0u64; rem.len() - d];
        for k in (d..rem.len()).rev() {
            let c = mul_mod(rem[k], lead_inv, m);
            if c == 0 {
                continue;
            }
            quot[k - d] = c;
            for (j, &b) in divisor.coeffs.iter().enumerate() {
                let t = mul_mod(c, b, m);
                rem[k - d + j] = (rem[k - d + j] + m - t) % m;
            }
        }
        rem.truncate(d);
        Ok((Polynomial::new(quot, m), Polynomial::new(rem, m)))
    }

    pub fn rem(&self, divisor: &Polynomial) -> Result<Polynomial> {
        Ok(self.div_rem(divisor)?.1)
    }

    /// Exact quotient; errors if the division leaves a remainder.
    pub fn div_exact(&self, divisor: &Polynomial) -> Result<Polynomial> {
        let (q, r) = self.div_rem(divisor)?;
        if !r.is_zero() {
            return Err(Error::domain(format!("{divisor} does not divide {self}")));
        }
        Ok(q)
    }

    /// Scales to leading coefficient 1.
    pub fn monic(&self) -> Result<Polynomial> {
        if self.is_zero() {
            return Ok(self.clone());
        }
        let inv = arith::mod_inverse(self.leading(), self.modulus).ok_or_else(|| {
            Error::NonInvertible(format!("leading coefficient of {self} is not a unit"))
        })?;
        Ok(self.scale(inv))
    }

    /// Monic gcd over a prime field.
    pub fn gcd(&self, other: &Polynomial) -> Result<Polynomial> {
        let (g, _, _) = self.ext_gcd(other)?;
        Ok(g)
    }

    /// Returns `(g, s, t)` with `s*self + t*other = g`, `g` monic.
    pub fn ext_gcd(&self, other: &Polynomial) -> Result<(Polynomial, Polynomial, Polynomial)> {
        self.check(other);
        let m = self.modulus;
        if !arith::is_prime(m) {
            return Err(Error::domain(format!("polynomial gcd needs a prime modulus, got {m}")));
        }
        let (mut r0, mut r1) = (self.clone(), other.clone());
        let (mut s0, mut s1) = (Polynomial::one(m), Polynomial::zero(m));
        let (mut t0, mut t1) = (Polynomial::zero(m), Polynomial::one(m));
        while !r1.is_zero() {
            let (q, r) = r0.div_rem(&r1)?;
            let s = s0.sub(&q.mul(&s1));
            let t = t0.sub(&q.mul(&t1));
            (r0, r1) = (r1, r);
            (s0, s1) = (s1, s);
            (t0, t1) = (t1, t);
        }
        if r0.is_zero() {
            return Ok((r0, s0, t0));
        }
        let inv = arith::mod_inverse(r0.leading(), m).expect("field");
        Ok((r0.scale(inv), s0.scale(inv), t0.scale(inv)))
    }

    /// `self^exp mod modulus` for a monic modulus.
    pub fn powmod(&self, exp: u64, modulus: &Polynomial) -> Result<Polynomial> {
        if !modulus.is_monic() {
            return Err(Error::domain("powmod needs a monic modulus"));
        }
        let mut acc = Polynomial::one(self.modulus).rem(modulus)?;
        let mut base = self.rem(modulus)?;
        let mut e = exp;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base).rem(modulus)?;
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base).rem(modulus)?;
            }
        }
        Ok(acc)
    }

    pub fn pow(&self, exp: u32) -> Polynomial {
        let mut acc = Polynomial::one(self.modulus);
        for _ in 0..exp {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn derivative(&self) -> Polynomial {
        let m = self.modulus;
        let c = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(k, &a)| mul_mod(a, k as u64 % m, m))
            .collect();
        Polynomial::new(c, m)
    }

    pub fn eval(&self, x: u64) -> u64 {
        let m = self.modulus;
        self.coeffs
            .iter()
            .rev()
            .fold(0, |acc, &c| ((mul_mod(acc, x, m) as u128 + c as u128) % m as u128) as u64)
    }

    /// Text in the form `c0 + c1*x + c2*x^2` using `var` as the variable.
    pub fn to_text(&self, var: char) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut terms = Vec::new();
        for (k, &c) in self.coeffs.iter().enumerate() {
            if c == 0 {
                continue;
            }
            let t = match (k, c) {
                (0, _) => c.to_string(),
                (1, 1) => var.to_string(),
                (1, _) => format!("{c}*{var}"),
                (_, 1) => format!("{var}^{k}"),
                _ => format!("{c}*{var}^{k}"),
            };
            terms.push(t);
        }
        terms.join(" + ")
    }

    /// Parses `c0 + c1*x + c2*x^2`-style text. Terms may appear in any order,
    /// `*` is optional and `-` subtracts.
    pub fn parse(text: &str, var: char, modulus: u64) -> Result<Polynomial> {
        PolyParser {
            s: text.as_bytes(),
            pos: 0,
            var: var as u8,
            offset: 0,
        }
        .parse(modulus)
    }

    pub(crate) fn parse_at(text: &str, var: char, modulus: u64, offset: usize) -> Result<Polynomial> {
        PolyParser {
            s: text.as_bytes(),
            pos: 0,
            var: var as u8,
            offset,
        }
        .parse(modulus)
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text('x'))
    }
}

struct PolyParser<'a> {
    s: &'a [u8],
    pos: usize,
    var: u8,
    offset: usize,
}

impl PolyParser<'_> {
    fn err(&self, msg: impl Into<String>) -> Error {
        Error::Parse {
            pos: self.pos + self.offset,
            message: msg.into(),
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.s.get(self.pos).copied()
    }

    fn number(&mut self) -> Result<Option<u128>> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Ok(None);
        }
        std::str::from_utf8(&self.s[start..self.pos])
            .unwrap()
            .parse::<u128>()
            .map(Some)
            .map_err(|_| {
                self.pos = start;
                self.err("integer too large")
            })
    }

    fn parse(mut self, modulus: u64) -> Result<Polynomial> {
        let mut acc: Vec<u128> = Vec::new();
        let m = modulus as u128;
        let mut negate = false;
        if self.peek() == Some(b'-') {
            self.pos += 1;
            negate = true;
        }
        loop {
            let coef = self.number()?;
            let mut exp = 0usize;
            let mut saw_var = false;
            if coef.is_some() && self.peek() == Some(b'*') {
                self.pos += 1;
                if self.peek() != Some(self.var) {
                    return Err(self.err(format!("expected '{}' after '*'", self.var as char)));
                }
            }
            if self.peek() == Some(self.var) {
                self.pos += 1;
                saw_var = true;
                exp = 1;
                if self.peek() == Some(b'^') {
                    self.pos += 1;
                    exp = self
                        .number()?
                        .ok_or_else(|| self.err("expected exponent"))? as usize;
                    if exp > 1 << 16 {
                        return Err(self.err("exponent too large"));
                    }
                }
            }
            if coef.is_none() && !saw_var {
                return Err(match self.peek() {
                    Some(c) => self.err(format!("unexpected '{}'", c as char)),
                    None => self.err("unexpected end of polynomial"),
                });
            }
            let c = coef.unwrap_or(1) % m;
            let c = if negate { (m - c) % m } else { c };
            if acc.len() <= exp {
                acc.resize(exp + 1, 0);
            }
            acc[exp] = (acc[exp] + c) % m;
            match self.peek() {
                None => break,
                Some(b'+') => {
                    self.pos += 1;
                    negate = false;
                }
                Some(b'-') => {
                    self.pos += 1;
                    negate = true;
                }
                Some(c) => return Err(self.err(format!("unexpected '{}'", c as char))),
            }
        }
        Ok(Polynomial::new(acc.into_iter().map(|v| v as u64).collect(), modulus))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str, m: u64) -> Polynomial {
        Polynomial::parse(s, 'x', m).unwrap()
    }

    #[test]
    fn gcd_over_f2() {
        assert_eq!(p("x^3 + 1", 2).gcd(&p("x + 1", 2)).unwrap(), p("x + 1", 2));
    }

    #[test]
    fn gcd_over_f5() {
        assert_eq!(p("x^7 - 1", 5).gcd(&p("x - 1", 5)).unwrap(), p("x + 4", 5));
    }

    #[test]
    fn powmod_wraps_exponent() {
        let q = p("x^3 - 1", 5);
        assert_eq!(p("x", 5).powmod(7, &q).unwrap(), p("x", 5));
        assert_eq!(p("x", 5).powmod(0, &q).unwrap(), p("1", 5));
    }

    #[test]
    fn div_rem_reconstructs() {
        let a = p("3 + 2x + 4x^4 + x^5", 7);
        let b = p("2 + 3x^2", 7);
        let (q, r) = a.div_rem(&b).unwrap();
        assert_eq!(q.mul(&b).add(&r), a);
        assert!(r.degree().unwrap_or(0) < 2);
    }

    #[test]
    fn non_invertible_leading_coefficient() {
        let a = p("x^3 + 1", 8);
        let b = p("2x + 1", 8);
        assert!(matches!(a.div_rem(&b), Err(Error::NonInvertible(_))));
    }

    #[test]
    fn gcd_needs_prime_modulus() {
        assert!(matches!(p("x", 8).gcd(&p("x + 2", 8)), Err(Error::Domain(_))));
    }

    #[test]
    fn ext_gcd_bezout() {
        let a = p("x^4 + 3x + 1", 11);
        let b = p("x^2 + 5", 11);
        let (g, s, t) = a.ext_gcd(&b).unwrap();
        assert_eq!(s.mul(&a).add(&t.mul(&b)), g);
    }

    #[test]
    fn text_round_trip() {
        for s in ["0", "1", "x", "3 + 2*x + x^2", "4*x^7 + 1"] {
            let q = p(s, 5);
            assert_eq!(p(&q.to_text('x'), 5), q);
        }
        assert_eq!(p("x^2+x+1", 8).to_text('x'), "1 + x + x^2");
        assert_eq!(p("2 + 3x", 5).to_text('i'), "2 + 3*i");
    }

    #[test]
    fn parse_errors_are_positioned() {
        match Polynomial::parse("1 + y", 'x', 5) {
            Err(Error::Parse { pos, .. }) => assert_eq!(pos, 4),
            other => panic!("{other:?}"),
        }
        assert!(Polynomial::parse("", 'x', 5).is_err());
        assert!(Polynomial::parse("x^", 'x', 5).is_err());
    }

    #[test]
    fn derivative_and_eval() {
        let f = p("1 + x + x^3", 5);
        assert_eq!(f.derivative(), p("1 + 3x^2", 5));
        assert_eq!(f.eval(2), 1);
    }
}
