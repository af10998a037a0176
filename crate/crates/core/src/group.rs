//! Finite abelian groups in invariant-factor form and their subgroups.

use crate::arith;
use crate::error::{Error, Result};
use std::collections::BTreeSet;

/// Largest group order accepted by [`AbelianGroup::new`].
pub const DEFAULT_GROUP_CAP: u64 = 1 << 16;
/// Largest group order accepted by [`all_subgroups`].
pub const SUBGROUP_CAP: u64 = 4096;

const GENERATOR_NAMES: &[char] = &[
    'a', 'b', 'c', 'd', 'f', 'h', 'j', 'k', 'l', 'm', 'n', 'o', 'p', 'q', 'r', 's', 't', 'u',
];

/// `C_{n_1} x ... x C_{n_r}`. Elements are exponent vectors, indexed
/// row-major: `index = sum a_i * prod_{j > i} n_j`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct AbelianGroup {
    factors: Vec<u64>,
    order: usize,
    /// `strides[i] = prod_{j > i} n_j`
    strides: Vec<usize>,
}

impl AbelianGroup {
    pub fn new(factors: &[u64]) -> Result<Self> {
        Self::with_cap(factors, DEFAULT_GROUP_CAP)
    }

    pub fn with_cap(factors: &[u64], cap: u64) -> Result<Self> {
        if let Some(&bad) = factors.iter().find(|&&n| n < 2) {
            return Err(Error::domain(format!("cyclic factor {bad} must be at least 2")));
        }
        let mut order = 1u64;
        for &n in factors {
            order = order
                .checked_mul(n)
                .filter(|&o| o <= cap)
                .ok_or_else(|| Error::size("group order", "more than the cap", cap as u128))?;
        }
        let mut strides = vec![1usize; factors.len()];
        for i in (0..factors.len().saturating_sub(1)).rev() {
            strides[i] = strides[i + 1] * factors[i + 1] as usize;
        }
        Ok(AbelianGroup {
            factors: factors.to_vec(),
            order: order as usize,
            strides,
        })
    }

    pub fn trivial() -> Self {
        AbelianGroup::new(&[]).expect("trivial group")
    }

    pub fn factors(&self) -> &[u64] {
        &self.factors
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn rank(&self) -> usize {
        self.factors.len()
    }

    pub fn is_cyclic(&self) -> bool {
        self.factors.len() <= 1
    }

    pub fn exponents(&self, index: usize) -> Vec<u64> {
        self.factors
            .iter()
            .zip(&self.strides)
            .map(|(&n, &s)| ((index / s) as u64) % n)
            .collect()
    }

    pub fn index_of(&self, exps: &[u64]) -> usize {
        exps.iter()
            .zip(&self.factors)
            .zip(&self.strides)
            .map(|((&a, &n), &s)| (a % n) as usize * s)
            .sum()
    }

    /// Index of `g_i * g_j`.
    pub fn op(&self, i: usize, j: usize) -> usize {
        let mut out = 0;
        for (&n, &s) in self.factors.iter().zip(&self.strides) {
            let n = n as usize;
            let a = (i / s) % n;
            let b = (j / s) % n;
            out += ((a + b) % n) * s;
        }
        out
    }

    pub fn inverse(&self, i: usize) -> usize {
        let e: Vec<u64> = self
            .exponents(i)
            .iter()
            .zip(&self.factors)
            .map(|(&a, &n)| (n - a) % n)
            .collect();
        self.index_of(&e)
    }

    /// Index of `g_i^k`.
    pub fn pow(&self, i: usize, k: u64) -> usize {
        let e: Vec<u64> = self
            .exponents(i)
            .iter()
            .zip(&self.factors)
            .map(|(&a, &n)| ((a as u128 * k as u128) % n as u128) as u64)
            .collect();
        self.index_of(&e)
    }

    pub fn element_order(&self, i: usize) -> u64 {
        self.exponents(i)
            .iter()
            .zip(&self.factors)
            .map(|(&a, &n)| n / arith::gcd(a, n))
            .fold(1, |acc, o| acc / arith::gcd(acc, o) * o)
    }

    /// Generator letters: `g` for a cyclic group, `a, b, ...` otherwise.
    pub fn generator_names(&self) -> Vec<char> {
        if self.rank() == 1 {
            vec!['g']
        } else {
            GENERATOR_NAMES[..self.rank()].to_vec()
        }
    }

    /// Index of the `k`-th generator.
    pub fn generator(&self, k: usize) -> usize {
        self.strides[k]
    }

    /// `e`, `g^2`, `(a b^3)`, ...
    pub fn format_element(&self, index: usize) -> String {
        let exps = self.exponents(index);
        let names = self.generator_names();
        let parts: Vec<String> = exps
            .iter()
            .zip(&names)
            .filter(|(&a, _)| a != 0)
            .map(|(&a, n)| if a == 1 { n.to_string() } else { format!("{n}^{a}") })
            .collect();
        match parts.len() {
            0 => "e".to_string(),
            1 => parts[0].clone(),
            _ => format!("({})", parts.join(" ")),
        }
    }

    /// `C5xC5`, or `1` for the trivial group.
    pub fn describe(&self) -> String {
        if self.factors.is_empty() {
            return "1".into();
        }
        self.factors
            .iter()
            .map(|n| format!("C{n}"))
            .collect::<Vec<_>>()
            .join("x")
    }
}

/// A subgroup, as the sorted list of its element indices.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Subgroup {
    pub generators: Vec<usize>,
    pub elements: Vec<usize>,
}

impl Subgroup {
    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn trivial() -> Self {
        Subgroup {
            generators: Vec::new(),
            elements: vec![0],
        }
    }

    /// The cyclic subgroup generated by `g`.
    pub fn cyclic(group: &AbelianGroup, g: usize) -> Self {
        let mut elements = vec![0];
        let mut x = g;
        while x != 0 {
            elements.push(x);
            x = group.op(x, g);
        }
        elements.sort_unstable();
        Subgroup {
            generators: vec![g],
            elements,
        }
    }

    pub fn whole(group: &AbelianGroup) -> Self {
        Subgroup {
            generators: (0..group.rank()).map(|k| group.generator(k)).collect(),
            elements: (0..group.order()).collect(),
        }
    }

    /// `HK`, which is a subgroup because the group is abelian.
    pub fn join(&self, other: &Subgroup, group: &AbelianGroup) -> Subgroup {
        let set: BTreeSet<usize> = self
            .elements
            .iter()
            .flat_map(|&h| other.elements.iter().map(move |&k| group.op(h, k)))
            .collect();
        let mut generators = self.generators.clone();
        generators.extend(&other.generators);
        Subgroup {
            generators,
            elements: set.into_iter().collect(),
        }
    }

    /// Closure, identity and Lagrange checks.
    pub fn is_valid(&self, group: &AbelianGroup) -> bool {
        let set: BTreeSet<usize> = self.elements.iter().copied().collect();
        set.contains(&0)
            && group.order().is_multiple_of(self.order())
            && self.elements.iter().all(|&a| {
                set.contains(&group.inverse(a))
                    && self.elements.iter().all(|&b| set.contains(&group.op(a, b)))
            })
    }
}

/// Every subgroup of `G`, sorted by order then by element list.
///
/// Starts from the cyclic subgroups and closes under pairwise joins, so every
/// finitely generated (here: every) subgroup is reached.
pub fn all_subgroups(group: &AbelianGroup) -> Result<Vec<Subgroup>> {
    if group.order() as u64 > SUBGROUP_CAP {
        return Err(Error::size("group order", group.order(), SUBGROUP_CAP as u128));
    }
    let mut found: std::collections::BTreeMap<Vec<usize>, Subgroup> = Default::default();
    for g in 0..group.order() {
        let h = Subgroup::cyclic(group, g);
        found.entry(h.elements.clone()).or_insert(h);
    }
    if !group.is_cyclic() {
        let mut frontier: Vec<Subgroup> = found.values().cloned().collect();
        let cyclic: Vec<Subgroup> = frontier.clone();
        while !frontier.is_empty() {
            let mut next = Vec::new();
            for h in &frontier {
                for c in &cyclic {
                    if c.elements.iter().all(|x| h.elements.binary_search(x).is_ok()) {
                        continue;
                    }
                    let j = h.join(c, group);
                    if !found.contains_key(&j.elements) {
                        found.insert(j.elements.clone(), j.clone());
                        next.push(j);
                    }
                }
            }
            frontier = next;
        }
    }
    let mut out: Vec<Subgroup> = found.into_values().collect();
    out.sort_by(|a, b| (a.order(), &a.elements).cmp(&(b.order(), &b.elements)));
    Ok(out)
}

/// Number of orbits of `g -> g^q` on `G`. For `gcd(|G|, q) = 1` and `q = p`
/// prime this is the number of simple components of `F_p G`.
pub fn frobenius_orbit_count(group: &AbelianGroup, q: u64) -> Result<usize> {
    if arith::gcd(group.order() as u64, q) != 1 {
        let p = arith::prime_divisors(q)
            .into_iter()
            .find(|p| (group.order() as u64).is_multiple_of(*p))
            .unwrap_or(q);
        return Err(Error::NonSemisimple {
            order: group.order() as u64,
            p,
        });
    }
    let mut seen = vec![false; group.order()];
    let mut orbits = 0;
    for start in 0..group.order() {
        if seen[start] {
            continue;
        }
        orbits += 1;
        let mut x = start;
        while !seen[x] {
            seen[x] = true;
            x = group.pow(x, q);
        }
    }
    Ok(orbits)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn c3_elements() {
        let g = AbelianGroup::new(&[3]).unwrap();
        let names: Vec<_> = (0..3).map(|i| g.format_element(i)).collect();
        assert_eq!(names, vec!["e", "g", "g^2"]);
    }

    #[test]
    fn c5xc5_indexing() {
        let g = AbelianGroup::new(&[5, 5]).unwrap();
        assert_eq!(g.order(), 25);
        assert_eq!(g.index_of(&[2, 3]), 13);
        assert_eq!(g.exponents(13), vec![2, 3]);
        assert_eq!(g.format_element(13), "(a^2 b^3)");
        assert_eq!(g.op(13, g.inverse(13)), 0);
    }

    #[test]
    fn rejects_bad_factors() {
        assert!(matches!(AbelianGroup::new(&[1]), Err(Error::Domain(_))));
        assert!(matches!(
            AbelianGroup::new(&[256, 257]),
            Err(Error::SizeExceeded { .. })
        ));
    }

    #[test]
    fn trivial_group() {
        let g = AbelianGroup::trivial();
        assert_eq!(g.order(), 1);
        assert_eq!(g.format_element(0), "e");
    }

    #[test]
    fn subgroups_of_c5xc5() {
        let g = AbelianGroup::new(&[5, 5]).unwrap();
        let subs = all_subgroups(&g).unwrap();
        let orders: Vec<_> = subs.iter().map(|s| s.order()).collect();
        assert_eq!(orders, vec![1, 5, 5, 5, 5, 5, 5, 25]);
        // <a>, <b> and <a b^i> for i = 1..4 are exactly the six of order 5.
        let mut expected: Vec<Vec<usize>> = std::iter::once(g.index_of(&[1, 0]))
            .chain(std::iter::once(g.index_of(&[0, 1])))
            .chain((1..5).map(|i| g.index_of(&[1, i])))
            .map(|x| Subgroup::cyclic(&g, x).elements)
            .collect();
        expected.sort();
        let got: Vec<Vec<usize>> = subs[1..7].iter().map(|s| s.elements.clone()).collect();
        assert_eq!(got, expected);
        assert!(subs.iter().all(|s| s.is_valid(&g)));
    }

    #[test]
    fn subgroups_of_prime_cyclic() {
        for n in [3, 7] {
            let g = AbelianGroup::new(&[n]).unwrap();
            let subs = all_subgroups(&g).unwrap();
            assert_eq!(subs.len(), 2);
        }
    }

    #[test]
    fn subgroups_need_more_than_pairs() {
        // C2^3 has 16 subgroups, including the whole group on 3 generators.
        let g = AbelianGroup::new(&[2, 2, 2]).unwrap();
        assert_eq!(all_subgroups(&g).unwrap().len(), 16);
        let g = AbelianGroup::new(&[2, 4]).unwrap();
        assert_eq!(all_subgroups(&g).unwrap().len(), 8);
    }

    #[test]
    fn orbit_counts() {
        let c3 = AbelianGroup::new(&[3]).unwrap();
        assert_eq!(frobenius_orbit_count(&c3, 2).unwrap(), 2);
        let c5c5 = AbelianGroup::new(&[5, 5]).unwrap();
        assert_eq!(frobenius_orbit_count(&c5c5, 2).unwrap(), 7);
        let c7 = AbelianGroup::new(&[7]).unwrap();
        assert_eq!(frobenius_orbit_count(&c7, 5).unwrap(), 2);
        assert!(matches!(
            frobenius_orbit_count(&c3, 3),
            Err(Error::NonSemisimple { order: 3, p: 3 })
        ));
    }

    #[test]
    fn orbit_count_c5xc5_by_enumeration() {
        // identity plus six orbits {x, x^2, x^4, x^3} of size four
        let g = AbelianGroup::new(&[5, 5]).unwrap();
        let mut sizes = Vec::new();
        let mut seen = [false; 25];
        for s in 0..25 {
            if seen[s] {
                continue;
            }
            let orbit: BTreeSet<usize> = [1u64, 2, 4, 8].iter().map(|&k| g.pow(s, k)).collect();
            for &x in &orbit {
                seen[x] = true;
            }
            sizes.push(orbit.len());
        }
        sizes.sort();
        assert_eq!(sizes, vec![1, 4, 4, 4, 4, 4, 4]);
    }
}
