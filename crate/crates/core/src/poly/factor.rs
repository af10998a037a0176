//! Deterministic Berlekamp factorization over prime fields.

use super::Polynomial;
use crate::arith::{self, mul_mod};
use crate::error::{Error, Result};

pub const DEFAULT_FACTOR_DEGREE_BOUND: usize = 64;

/// Splitting iterates over every constant of the field, so the prime is capped.
const MAX_SPLIT_PRIME: u64 = 1 << 20;

/// One block `p_i(x)^{r_i}` of a factorization, with the CRT data for it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolyFactor {
    /// Monic irreducible factor `p_i(x)`.
    pub factor: Polynomial,
    pub multiplicity: u32,
    /// `m_i(x) = f(x) / p_i(x)^{r_i}` for the monic input `f`.
    pub cofactor: Polynomial,
    /// `s_i(x)` with `s_i m_i = 1 (mod p_i^{r_i})`, reduced modulo `p_i^{r_i}`.
    pub inverse: Polynomial,
}

impl PolyFactor {
    pub fn prime_power(&self) -> Polynomial {
        self.factor.pow(self.multiplicity)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolyFactorization {
    pub prime: u64,
    /// Leading coefficient of the input.
    pub unit: u64,
    /// Sorted by degree, then coefficients.
    pub factors: Vec<PolyFactor>,
}

impl PolyFactorization {
    /// `unit * prod p_i^{r_i}`.
    pub fn product(&self) -> Polynomial {
        self.factors
            .iter()
            .fold(Polynomial::constant(self.unit, self.prime), |acc, f| {
                acc.mul(&f.prime_power())
            })
    }
}

/// Factors `f` over `F_p` into monic irreducibles with multiplicities.
pub fn berlekamp_factor(f: &Polynomial, degree_bound: usize) -> Result<PolyFactorization> {
    let p = f.modulus();
    if !arith::is_prime(p) {
        return Err(Error::domain(format!("{p} is not prime")));
    }
    let deg = f
        .degree()
        .ok_or_else(|| Error::domain("cannot factor the zero polynomial"))?;
    if deg > degree_bound {
        return Err(Error::size("polynomial degree", deg, degree_bound as u128));
    }
    if p > MAX_SPLIT_PRIME && deg > 1 {
        return Err(Error::Unsupported(format!(
            "deterministic splitting over F_{p} is limited to p <= {MAX_SPLIT_PRIME}"
        )));
    }
    let unit = f.leading();
    let monic = f.monic()?;

    let mut blocks: Vec<(Polynomial, u32)> = Vec::new();
    for (part, mult) in squarefree_decomposition(&monic)? {
        for irr in split_squarefree(&part)? {
            match blocks.iter_mut().find(|(q, _)| *q == irr) {
                Some(entry) => entry.1 += mult,
                None => blocks.push((irr, mult)),
            }
        }
    }
    blocks.sort_by(|a, b| {
        (a.0.degree(), a.0.coeffs()).cmp(&(b.0.degree(), b.0.coeffs()))
    });

    let mut factors = Vec::with_capacity(blocks.len());
    for (factor, multiplicity) in blocks {
        let pp = factor.pow(multiplicity);
        let cofactor = monic.div_exact(&pp)?;
        let (g, s, _) = cofactor.rem(&pp)?.ext_gcd(&pp)?;
        if !g.is_one() {
            return Err(Error::Verification(format!(
                "cofactor of {factor} is not coprime to its block"
            )));
        }
        factors.push(PolyFactor {
            factor,
            multiplicity,
            cofactor,
            inverse: s.rem(&pp)?,
        });
    }
    let out = PolyFactorization {
        prime: p,
        unit,
        factors,
    };
    if out.product() != *f {
        return Err(Error::Verification(format!("factors of {f} do not multiply back")));
    }
    Ok(out)
}

/// `f(x) = g(x^p)` → `g(x)` over `F_p` (Frobenius is the identity on `F_p`).
fn pth_root(f: &Polynomial) -> Polynomial {
    let p = f.modulus() as usize;
    let c: Vec<u64> = f.coeffs().iter().step_by(p).copied().collect();
    Polynomial::new(c, f.modulus())
}

/// Squarefree factorization of a monic polynomial over `F_p`.
fn squarefree_decomposition(f: &Polynomial) -> Result<Vec<(Polynomial, u32)>> {
    let p = f.modulus() as u32;
    let mut out = Vec::new();
    if f.degree().unwrap_or(0) == 0 {
        return Ok(out);
    }
    let fp = f.derivative();
    if fp.is_zero() {
        for (h, e) in squarefree_decomposition(&pth_root(f))? {
            out.push((h, e * p));
        }
        return Ok(out);
    }
    let mut c = f.gcd(&fp)?;
    let mut w = f.div_exact(&c)?;
    let mut i = 1;
    while !w.is_one() {
        let y = w.gcd(&c)?;
        let z = w.div_exact(&y)?;
        if !z.is_one() {
            out.push((z, i));
        }
        i += 1;
        c = c.div_exact(&y)?;
        w = y;
    }
    if !c.is_one() {
        for (h, e) in squarefree_decomposition(&pth_root(&c))? {
            out.push((h, e * p));
        }
    }
    Ok(out)
}

/// Basis of the null space of an `n x n` matrix over `F_p`.
pub(crate) fn null_space(mut a: Vec<Vec<u64>>, p: u64) -> Vec<Vec<u64>> {
    let n = a.len();
    let cols = if n == 0 { 0 } else { a[0].len() };
    let mut pivot_cols = Vec::new();
    let mut row = 0;
    for col in 0..cols {
        let Some(r) = (row..n).find(|&r| a[r][col] != 0) else {
            continue;
        };
        a.swap(row, r);
        let inv = arith::mod_inverse(a[row][col], p).expect("field");
        for v in a[row].iter_mut() {
            *v = mul_mod(*v, inv, p);
        }
        for r in 0..n {
            if r != row && a[r][col] != 0 {
                let factor = a[r][col];
                for c in 0..cols {
                    let t = mul_mod(factor, a[row][c], p);
                    a[r][c] = (a[r][c] + p - t) % p;
                }
            }
        }
        pivot_cols.push(col);
        row += 1;
    }
    let free: Vec<usize> = (0..cols).filter(|c| !pivot_cols.contains(c)).collect();
    free.iter()
        .map(|&fc| {
            let mut v = vec![0u64; cols];
            v[fc] = 1;
            for (r, &pc) in pivot_cols.iter().enumerate() {
                v[pc] = (p - a[r][fc]) % p;
            }
            v
        })
        .collect()
}

/// Splits a monic squarefree polynomial into its irreducible factors.
fn split_squarefree(h: &Polynomial) -> Result<Vec<Polynomial>> {
    let p = h.modulus();
    let n = match h.degree() {
        None | Some(0) => return Ok(Vec::new()),
        Some(1) => return Ok(vec![h.clone()]),
        Some(n) => n,
    };
    // Column i of the Berlekamp matrix holds x^{ip} mod h, minus e_i.
    let xp = Polynomial::x(p).powmod(p, h)?;
    let mut power = Polynomial::one(p);
    let mut matrix = vec![vec![0u64; n]; n];
    for i in 0..n {
        for (j, row) in matrix.iter_mut().enumerate() {
            row[i] = power.coeff(j);
        }
        matrix[i][i] = (matrix[i][i] + p - 1) % p;
        power = power.mul(&xp).rem(h)?;
    }
    let basis = null_space(matrix, p);
    let k = basis.len();
    let mut factors = vec![h.clone()];
    for v in basis {
        if factors.len() == k {
            break;
        }
        let b = Polynomial::new(v, p);
        if b.degree().unwrap_or(0) == 0 {
            continue;
        }
        let mut next = Vec::new();
        for u in factors {
            if u.degree() == Some(1) {
                next.push(u);
                continue;
            }
            for c in 0..p {
                let g = u.gcd(&b.sub(&Polynomial::constant(c, p)))?;
                if g.degree().unwrap_or(0) >= 1 {
                    next.push(g);
                }
            }
        }
        factors = next;
    }
    if factors.len() != k {
        return Err(Error::Verification(format!(
            "Berlekamp split of {h} produced {} factors, expected {k}",
            factors.len()
        )));
    }
    Ok(factors)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str, m: u64) -> Polynomial {
        Polynomial::parse(s, 'x', m).unwrap()
    }

    fn monic_polys_of_degree(d: usize, q: u64) -> Vec<Polynomial> {
        let count = q.pow(d as u32);
        (0..count)
            .map(|mut idx| {
                let mut c = Vec::with_capacity(d + 1);
                for _ in 0..d {
                    c.push(idx % q);
                    idx /= q;
                }
                c.push(1);
                Polynomial::new(c, q)
            })
            .collect()
    }

    /// Oracle: every monic divisor of degree 1..=max_deg, by exhaustive search.
    fn monic_divisors(f: &Polynomial, max_deg: usize) -> Vec<Polynomial> {
        let q = f.modulus();
        (1..=max_deg)
            .flat_map(|d| monic_polys_of_degree(d, q))
            .filter(|g| f.rem(g).unwrap().is_zero())
            .collect()
    }

    fn shape(f: &PolyFactorization) -> Vec<(String, u32)> {
        f.factors
            .iter()
            .map(|b| (b.factor.to_string(), b.multiplicity))
            .collect()
    }

    #[test]
    fn x3_minus_1_over_f2() {
        let f = p("x^3 + 1", 2);
        // Oracle: the proper monic divisors are exactly x+1 and x^2+x+1.
        let divs: Vec<String> = monic_divisors(&f, 2).iter().map(|d| d.to_string()).collect();
        assert_eq!(divs, vec!["1 + x", "1 + x + x^2"]);
        let fac = berlekamp_factor(&f, 64).unwrap();
        assert_eq!(shape(&fac), vec![("1 + x".into(), 1), ("1 + x + x^2".into(), 1)]);
    }

    #[test]
    fn x7_minus_1_over_f5() {
        let f = p("x^7 - 1", 5);
        // Oracle: only x - 1 divides among degrees 1..=3, so the cofactor of
        // degree 6 has no factor of degree <= 3 and is irreducible.
        let divs = monic_divisors(&f, 3);
        assert_eq!(divs, vec![p("x + 4", 5)]);
        let fac = berlekamp_factor(&f, 64).unwrap();
        assert_eq!(fac.factors.len(), 2);
        assert_eq!(fac.factors[0].factor, p("x + 4", 5));
        assert_eq!(fac.factors[1].factor, p("1 + x + x^2 + x^3 + x^4 + x^5 + x^6", 5));
    }

    #[test]
    fn x2_plus_1_over_f5() {
        let fac = berlekamp_factor(&p("x^2 + 1", 5), 64).unwrap();
        assert_eq!(shape(&fac), vec![("2 + x".into(), 1), ("3 + x".into(), 1)]);
    }

    #[test]
    fn multiplicities_are_recovered() {
        let f = p("x + 1", 2).pow(2).mul(&p("x^2 + x + 1", 2).pow(3));
        let fac = berlekamp_factor(&f, 64).unwrap();
        assert_eq!(shape(&fac), vec![("1 + x".into(), 2), ("1 + x + x^2".into(), 3)]);
        let g = p("x + 2", 3).pow(4).mul(&p("x", 3));
        let fac = berlekamp_factor(&g, 64).unwrap();
        assert_eq!(shape(&fac), vec![("x".into(), 1), ("2 + x".into(), 4)]);
    }

    #[test]
    fn non_monic_input_keeps_unit() {
        let f = p("3x^2 + 3", 5);
        let fac = berlekamp_factor(&f, 64).unwrap();
        assert_eq!(fac.unit, 3);
        assert_eq!(fac.product(), f);
    }

    #[test]
    fn bezout_data() {
        let f = p("x + 1", 2).pow(2).mul(&p("x^2 + x + 1", 2));
        let fac = berlekamp_factor(&f, 64).unwrap();
        for b in &fac.factors {
            let pp = b.prime_power();
            assert!(b.inverse.mul(&b.cofactor).rem(&pp).unwrap().is_one());
        }
    }

    #[test]
    fn errors() {
        assert!(matches!(berlekamp_factor(&p("x^2 + 1", 4), 64), Err(Error::Domain(_))));
        assert!(matches!(berlekamp_factor(&Polynomial::zero(5), 64), Err(Error::Domain(_))));
        assert!(matches!(
            berlekamp_factor(&p("x^9 + 1", 5), 8),
            Err(Error::SizeExceeded { .. })
        ));
    }

    #[test]
    fn constants_have_no_factors() {
        let fac = berlekamp_factor(&p("3", 5), 64).unwrap();
        assert!(fac.factors.is_empty());
        assert_eq!(fac.unit, 3);
    }
}
