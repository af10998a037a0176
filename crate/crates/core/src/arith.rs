//! Integer utilities: extended gcd, modular inverses, deterministic primality
//! and trial-division factorization with CRT data.

use crate::error::{Error, Result};
use serde::Serialize;

/// Extended Euclid: returns `(g, x, y)` with `a*x + b*y = g = gcd(a, b) > 0`.
pub fn ext_gcd(a: i128, b: i128) -> Result<(i128, i128, i128)> {
    if a == 0 && b == 0 {
        return Err(Error::UndefinedGcd);
    }
    let (mut old_r, mut r) = (a, b);
    let (mut old_x, mut x) = (1i128, 0i128);
    let (mut old_y, mut y) = (0i128, 1i128);
    while r != 0 {
        let q = old_r.div_euclid(r);
        (old_r, r) = (r, old_r - q * r);
        (old_x, x) = (x, old_x - q * x);
        (old_y, y) = (y, old_y - q * y);
    }
    if old_r < 0 {
        old_r = -old_r;
        old_x = -old_x;
        old_y = -old_y;
    }
    Ok((old_r, old_x, old_y))
}

pub fn gcd(a: u64, b: u64) -> u64 {
    let (mut a, mut b) = (a, b);
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Inverse of `a` modulo `m`, as the least non-negative representative.
pub fn mod_inverse(a: u64, m: u64) -> Option<u64> {
    if m == 1 {
        return Some(0);
    }
    let (g, x, _) = ext_gcd(a as i128, m as i128).ok()?;
    if g != 1 {
        return None;
    }
    Some(x.rem_euclid(m as i128) as u64)
}

#[inline]
pub fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

pub fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    let mut acc = 1u64;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Deterministic Miller-Rabin, exact for every `u64`.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    const SMALL: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    for &p in &SMALL {
        if n.is_multiple_of(p) {
            return n == p;
        }
    }
    let mut d = n - 1;
    let mut r = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        r += 1;
    }
    'witness: for &a in &SMALL {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..r {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// One prime-power block `p^r` of a factorization together with its CRT data.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PrimePowerPart {
    pub prime: u64,
    pub exponent: u32,
    /// `p^r`
    pub prime_power: u64,
    /// `m / p^r`
    pub cofactor: u64,
    /// The least positive `s` with `s * cofactor = 1 (mod p^r)`.
    pub inverse: u64,
}

impl PrimePowerPart {
    /// `s * m_i mod m`, the CRT idempotent coefficient for this block.
    pub fn crt_coefficient(&self, modulus: u64) -> u64 {
        mul_mod(self.inverse, self.cofactor, modulus)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PrimePowerFactorization {
    pub modulus: u64,
    pub parts: Vec<PrimePowerPart>,
}

impl PrimePowerFactorization {
    pub fn primes(&self) -> impl Iterator<Item = u64> + '_ {
        self.parts.iter().map(|p| p.prime)
    }

    /// Product of the distinct primes.
    pub fn radical(&self) -> u64 {
        self.primes().product()
    }

    pub fn max_exponent(&self) -> u32 {
        self.parts.iter().map(|p| p.exponent).max().unwrap_or(0)
    }

    /// Rebuilds `x mod m` from its residues modulo each prime power.
    pub fn reconstruct(&self, residues: &[u64]) -> u64 {
        let m = self.modulus;
        self.parts
            .iter()
            .zip(residues)
            .fold(0u64, |acc, (part, &r)| {
                let term = mul_mod(part.crt_coefficient(m), r % m, m);
                ((acc as u128 + term as u128) % m as u128) as u64
            })
    }
}

/// Trial-division factorization of `2 <= m < 2^63`.
pub fn factorize(m: u64) -> Result<PrimePowerFactorization> {
    if m < 2 {
        return Err(Error::domain(format!("cannot factor {m}: need m >= 2")));
    }
    if m >= 1 << 63 {
        return Err(Error::domain(format!("{m} is outside the supported range")));
    }
    let mut blocks = Vec::new();
    let mut rest = m;
    let mut p = 2u64;
    while p.saturating_mul(p) <= rest {
        if rest.is_multiple_of(p) {
            let mut e = 0;
            let mut pp = 1u64;
            while rest.is_multiple_of(p) {
                rest /= p;
                pp *= p;
                e += 1;
            }
            blocks.push((p, e, pp));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if rest > 1 {
        blocks.push((rest, 1, rest));
    }
    let parts = blocks
        .into_iter()
        .map(|(prime, exponent, prime_power)| {
            let cofactor = m / prime_power;
            let inverse = if prime_power == 1 {
                0
            } else {
                mod_inverse(cofactor % prime_power, prime_power).expect("coprime cofactor")
            };
            // Least positive representative, so that the trivial case reads s = 1.
            let inverse = if inverse == 0 { prime_power } else { inverse };
            PrimePowerPart {
                prime,
                exponent,
                prime_power,
                cofactor,
                inverse,
            }
        })
        .collect();
    Ok(PrimePowerFactorization { modulus: m, parts })
}

/// Smallest prime factors of `n` (distinct, increasing). `n = 0, 1` have none.
pub fn prime_divisors(n: u64) -> Vec<u64> {
    if n < 2 {
        return Vec::new();
    }
    factorize(n)
        .map(|f| f.primes().collect())
        .unwrap_or_default()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn inverses_by_scan(a: u64, m: u64) -> Vec<u64> {
        (0..m).filter(|x| (a * x) % m == 1 % m).collect()
    }

    #[test]
    fn ext_gcd_identity_case() {
        assert_eq!(ext_gcd(1, 0).unwrap(), (1, 1, 0));
    }

    #[test]
    fn ext_gcd_both_zero() {
        assert_eq!(ext_gcd(0, 0), Err(Error::UndefinedGcd));
    }

    #[test]
    fn ext_gcd_inverse_examples() {
        // Oracle: exhaustive scan of the unit group.
        assert_eq!(inverses_by_scan(117 % 8, 8), vec![5]);
        assert_eq!(inverses_by_scan(104 % 9, 9), vec![2]);

        let (g, x, y) = ext_gcd(117, 8).unwrap();
        assert_eq!(g, 1);
        assert_eq!(117 * x + 8 * y, 1);
        assert_eq!(x.rem_euclid(8), 5);

        let (g, x, y) = ext_gcd(104, 9).unwrap();
        assert_eq!(g, 1);
        assert_eq!(104 * x + 9 * y, 1);
        assert_eq!(x.rem_euclid(9), 2);
    }

    #[test]
    fn ext_gcd_negative_inputs() {
        let (g, x, y) = ext_gcd(-12, 18).unwrap();
        assert_eq!(g, 6);
        assert_eq!(-12 * x + 18 * y, 6);
    }

    #[test]
    fn factorize_200() {
        let f = factorize(200).unwrap();
        let shape: Vec<_> = f.parts.iter().map(|p| (p.prime, p.exponent)).collect();
        assert_eq!(shape, vec![(2, 3), (5, 2)]);
        assert_eq!(f.parts[0].cofactor, 25);
        assert_eq!(f.parts[1].cofactor, 8);
        assert_eq!(f.parts[0].inverse, 1);
        assert_eq!(f.parts[1].inverse, 22);
    }

    #[test]
    fn factorize_936_crt_coefficients() {
        let f = factorize(936).unwrap();
        let shape: Vec<_> = f.parts.iter().map(|p| (p.prime, p.exponent)).collect();
        assert_eq!(shape, vec![(2, 3), (3, 2), (13, 1)]);
        let coeffs: Vec<_> = f.parts.iter().map(|p| p.crt_coefficient(936)).collect();
        assert_eq!(coeffs, vec![585, 208, 144]);
        let inv: Vec<_> = f.parts.iter().map(|p| p.inverse).collect();
        assert_eq!(inv, vec![5, 2, 2]);
    }

    #[test]
    fn factorize_prime() {
        let f = factorize(7).unwrap();
        assert_eq!(f.parts.len(), 1);
        assert_eq!(f.parts[0].cofactor, 1);
        assert_eq!(f.parts[0].inverse, 1);
    }

    #[test]
    fn factorize_rejects_small() {
        assert!(matches!(factorize(1), Err(Error::Domain(_))));
        assert!(matches!(factorize(0), Err(Error::Domain(_))));
    }

    #[test]
    fn factorize_recomposes_up_to_1e5() {
        for m in 2..=100_000u64 {
            let f = factorize(m).unwrap();
            let prod: u64 = f.parts.iter().map(|p| p.prime_power).product();
            assert_eq!(prod, m);
            assert!(f.parts.windows(2).all(|w| w[0].prime < w[1].prime));
            for p in &f.parts {
                assert!(is_prime(p.prime));
                assert_eq!(mul_mod(p.inverse, p.cofactor, p.prime_power), 1 % p.prime_power);
            }
        }
    }

    #[test]
    fn primality_matches_sieve() {
        let n = 20_000usize;
        let mut sieve = vec![true; n];
        sieve[0] = false;
        sieve[1] = false;
        for i in 2..n {
            if sieve[i] {
                for j in (i * i..n).step_by(i) {
                    sieve[j] = false;
                }
            }
        }
        for (i, &p) in sieve.iter().enumerate() {
            assert_eq!(is_prime(i as u64), p, "{i}");
        }
        assert!(is_prime(9_223_372_036_854_775_783));
    }

    #[test]
    fn crt_round_trip() {
        for m in [200u64, 936, 360, 1001, 97] {
            let f = factorize(m).unwrap();
            for x in 0..m {
                let residues: Vec<_> = f.parts.iter().map(|p| x % p.prime_power).collect();
                assert_eq!(f.reconstruct(&residues), x);
            }
        }
    }
}
