//! Group rings `RG` over finite abelian groups with dense coefficient vectors.

use crate::arith;
use crate::error::{Error, Result};
use crate::group::{AbelianGroup, Subgroup};
use crate::poly::Polynomial;
use crate::quotient::{PolyAlgebra, PolyQuotientRing};
use crate::ring::{
    Cardinality, CoefficientsJson, CommutativeRing, ElementJson, Exponent, NamedGenerators,
    ZmAlgebra,
};
use std::sync::Arc;

/// Dense element of `RG`: one coefficient per group element, in the group's
/// canonical index order.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GroupRingElement<E> {
    coeffs: Vec<E>,
}

impl<E> GroupRingElement<E> {
    pub fn coeffs(&self) -> &[E] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<E> {
        self.coeffs
    }
}

/// Multiplication tables are precomputed up to this group order.
const TABLE_LIMIT: usize = 1024;

#[derive(Debug, Clone)]
pub struct GroupRing<R> {
    base: R,
    group: Arc<AbelianGroup>,
    table: Option<Arc<Vec<u32>>>,
}

impl<R: PartialEq> PartialEq for GroupRing<R> {
    fn eq(&self, other: &Self) -> bool {
        self.base == other.base && self.group == other.group
    }
}

impl<R: CommutativeRing> GroupRing<R> {
    pub fn new(base: R, group: AbelianGroup) -> Self {
        Self::with_group(base, Arc::new(group))
    }

    fn with_group(base: R, group: Arc<AbelianGroup>) -> Self {
        let n = group.order();
        let table = (n <= TABLE_LIMIT).then(|| {
            let mut t = Vec::with_capacity(n * n);
            for i in 0..n {
                for j in 0..n {
                    t.push(group.op(i, j) as u32);
                }
            }
            Arc::new(t)
        });
        GroupRing { base, group, table }
    }

    pub fn base(&self) -> &R {
        &self.base
    }

    pub fn group(&self) -> &AbelianGroup {
        &self.group
    }

    /// The same group over another base ring.
    pub fn rebase<S: CommutativeRing>(&self, base: S) -> GroupRing<S> {
        GroupRing {
            base,
            group: self.group.clone(),
            table: self.table.clone(),
        }
    }

    #[inline]
    fn op(&self, i: usize, j: usize) -> usize {
        match &self.table {
            Some(t) => t[i * self.group.order() + j] as usize,
            None => self.group.op(i, j),
        }
    }

    pub fn from_coeffs(&self, coeffs: Vec<R::Element>) -> Result<GroupRingElement<R::Element>> {
        if coeffs.len() != self.group.order() {
            return Err(Error::domain(format!(
                "expected {} coefficients, got {}",
                self.group.order(),
                coeffs.len()
            )));
        }
        Ok(GroupRingElement { coeffs })
    }

    /// `c * g_index`
    pub fn term(&self, c: R::Element, index: usize) -> GroupRingElement<R::Element> {
        let mut coeffs = vec![self.base.zero(); self.group.order()];
        coeffs[index] = c;
        GroupRingElement { coeffs }
    }

    pub fn basis(&self, index: usize) -> GroupRingElement<R::Element> {
        self.term(self.base.one(), index)
    }

    pub fn constant(&self, c: R::Element) -> GroupRingElement<R::Element> {
        self.term(c, 0)
    }

    /// Multiplies every coefficient by the base-ring element `c`.
    pub fn scale(&self, x: &GroupRingElement<R::Element>, c: &R::Element) -> GroupRingElement<R::Element> {
        GroupRingElement {
            coeffs: x.coeffs.iter().map(|a| self.base.mul(a, c)).collect(),
        }
    }

    /// Applies `f` to every coefficient.
    pub fn map_coeffs<S: CommutativeRing>(
        &self,
        x: &GroupRingElement<R::Element>,
        target: &GroupRing<S>,
        f: impl Fn(&R::Element) -> S::Element,
    ) -> GroupRingElement<S::Element> {
        debug_assert_eq!(self.group, target.group);
        GroupRingElement {
            coeffs: x.coeffs.iter().map(f).collect(),
        }
    }

    /// Convolution: the coefficient of `g` is `sum_{hk = g} x_h y_k`.
    pub fn gr_mul(
        &self,
        x: &GroupRingElement<R::Element>,
        y: &GroupRingElement<R::Element>,
    ) -> GroupRingElement<R::Element> {
        let n = self.group.order();
        let zero = self.base.zero();
        let mut acc = vec![zero.clone(); n];
        let ys: Vec<(usize, &R::Element)> = y
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| **c != zero)
            .collect();
        for (i, a) in x.coeffs.iter().enumerate() {
            if *a == zero {
                continue;
            }
            for &(j, b) in &ys {
                let k = self.op(i, j);
                acc[k] = self.base.add(&acc[k], &self.base.mul(a, b));
            }
        }
        GroupRingElement { coeffs: acc }
    }

    /// `x^e`, with tower exponents applied as successive powers.
    pub fn gr_pow(&self, x: &GroupRingElement<R::Element>, e: Exponent) -> GroupRingElement<R::Element> {
        self.pow_exponent(x, e)
    }

    /// `(1/|H|) sum_{h in H} h`; needs `|H|` invertible in the base ring.
    pub fn hat(&self, h: &Subgroup) -> Result<GroupRingElement<R::Element>> {
        let order = h.order() as u64;
        let ch = self.base.characteristic();
        let inv = arith::mod_inverse(order % ch.max(1), ch).ok_or_else(|| {
            Error::NonInvertible(format!("|H| = {order} is not invertible in {}", self.base.describe()))
        })?;
        let c = self.base.from_int(inv as i128);
        let mut coeffs = vec![self.base.zero(); self.group.order()];
        for &i in &h.elements {
            coeffs[i] = c.clone();
        }
        Ok(GroupRingElement { coeffs })
    }

    /// Coefficient-wise image of the augmentation-free embedding of a
    /// base-ring element set.
    pub fn support(&self, x: &GroupRingElement<R::Element>) -> Vec<usize> {
        let zero = self.base.zero();
        x.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| **c != zero)
            .map(|(i, _)| i)
            .collect()
    }
}

impl<R: CommutativeRing> CommutativeRing for GroupRing<R> {
    type Element = GroupRingElement<R::Element>;

    fn zero(&self) -> Self::Element {
        GroupRingElement {
            coeffs: vec![self.base.zero(); self.group.order()],
        }
    }

    fn one(&self) -> Self::Element {
        self.constant(self.base.one())
    }

    fn add(&self, a: &Self::Element, b: &Self::Element) -> Self::Element {
        GroupRingElement {
            coeffs: a
                .coeffs
                .iter()
                .zip(&b.coeffs)
                .map(|(x, y)| self.base.add(x, y))
                .collect(),
        }
    }

    fn neg(&self, a: &Self::Element) -> Self::Element {
        GroupRingElement {
            coeffs: a.coeffs.iter().map(|x| self.base.neg(x)).collect(),
        }
    }

    fn mul(&self, a: &Self::Element, b: &Self::Element) -> Self::Element {
        self.gr_mul(a, b)
    }

    fn from_int(&self, n: i128) -> Self::Element {
        self.constant(self.base.from_int(n))
    }

    fn characteristic(&self) -> u64 {
        self.base.characteristic()
    }

    fn cardinality(&self) -> Cardinality {
        self.base.cardinality().pow(self.group.order() as u32)
    }

    fn element_at(&self, mut index: u128) -> Option<Self::Element> {
        let total = self.cardinality().finite()?;
        if index >= total {
            return None;
        }
        let b = self.base.cardinality().finite()?;
        let n = self.group.order();
        let mut coeffs = vec![self.base.zero(); n];
        for c in coeffs.iter_mut().rev() {
            *c = self.base.element_at(index % b)?;
            index /= b;
        }
        Some(GroupRingElement { coeffs })
    }

    fn format_element(&self, x: &Self::Element) -> String {
        let zero = self.base.zero();
        let terms: Vec<String> = x
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| **c != zero)
            .map(|(i, c)| {
                let c = self.base.format_element(c);
                let c = if c.contains(' ') { format!("({c})") } else { c };
                format!("{c}*{}", self.group.format_element(i))
            })
            .collect();
        if terms.is_empty() {
            "0".into()
        } else {
            terms.join(" + ")
        }
    }

    fn describe(&self) -> String {
        format!("{}{{{}}}", self.base.describe(), self.group.describe())
    }
}

impl<R: ZmAlgebra> ZmAlgebra for GroupRing<R> {
    fn base_modulus(&self) -> u64 {
        self.base.base_modulus()
    }

    fn with_base_modulus(&self, d: u64) -> Result<Self> {
        Ok(self.rebase(self.base.with_base_modulus(d)?))
    }

    fn coefficients(&self, x: &Self::Element) -> Vec<u64> {
        x.coeffs
            .iter()
            .flat_map(|c| self.base.coefficients(c))
            .collect()
    }

    fn from_coefficients(&self, c: &[u64]) -> Result<Self::Element> {
        let d = self.base.dimension();
        if c.len() != d * self.group.order() {
            return Err(Error::domain(format!(
                "expected {} coefficients, got {}",
                d * self.group.order(),
                c.len()
            )));
        }
        let coeffs = c
            .chunks(d)
            .map(|chunk| self.base.from_coefficients(chunk))
            .collect::<Result<Vec<_>>>()?;
        Ok(GroupRingElement { coeffs })
    }

    fn dimension(&self) -> usize {
        self.base.dimension() * self.group.order()
    }

    fn element_json(&self, x: &Self::Element) -> ElementJson {
        let inner = self.base.element_json(&self.base.one());
        let coeffs = if self.base.dimension() == 1 && inner.poly.is_none() {
            CoefficientsJson::Flat(self.coefficients(x))
        } else {
            CoefficientsJson::Nested(x.coeffs.iter().map(|c| self.base.coefficients(c)).collect())
        };
        ElementJson {
            group: self.group.factors().to_vec(),
            modulus: self.base_modulus(),
            poly: inner.poly,
            coeffs,
        }
    }

    fn element_from_json(&self, j: &ElementJson) -> Result<Self::Element> {
        if j.group != self.group.factors() || j.modulus != self.base_modulus() {
            return Err(Error::domain("element JSON does not match the ring"));
        }
        match &j.coeffs {
            CoefficientsJson::Flat(c) => self.from_coefficients(c),
            CoefficientsJson::Nested(c) => self.from_coefficients(&c.concat()),
        }
    }
}

impl<R: NamedGenerators> NamedGenerators for GroupRing<R> {
    fn generator(&self, name: char) -> Option<Self::Element> {
        if name == 'e' {
            return Some(self.one());
        }
        if let Some(k) = self.group.generator_names().iter().position(|&c| c == name) {
            return Some(self.basis(self.group.generator(k)));
        }
        self.base.generator(name).map(|c| self.constant(c))
    }
}

impl PolyAlgebra for GroupRing<PolyQuotientRing> {
    fn quotient(&self) -> &PolyQuotientRing {
        &self.base
    }

    fn with_quotient(&self, q: &Polynomial) -> Result<Self> {
        Ok(self.rebase(self.base.with_modulus_poly(q)?))
    }

    fn map_quotient(&self, x: &Self::Element, target: &Self) -> Self::Element {
        self.map_coeffs(x, target, |c| target.base.from_poly(&self.base.to_poly(c)))
    }

    fn scale_by_poly(&self, x: &Self::Element, c: &Polynomial) -> Self::Element {
        self.scale(x, &self.base.from_poly(c))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::all_subgroups;
    use crate::residue::ResidueRing;
    use crate::ring::laws;

    fn zg(m: u64, factors: &[u64]) -> GroupRing<ResidueRing> {
        GroupRing::new(ResidueRing::new(m).unwrap(), AbelianGroup::new(factors).unwrap())
    }

    fn el(r: &GroupRing<ResidueRing>, c: &[i128]) -> GroupRingElement<crate::residue::ResidueElement> {
        r.from_coeffs(c.iter().map(|&v| r.base().elem(v)).collect()).unwrap()
    }

    #[test]
    fn square_of_g_plus_g2_in_z8c3() {
        let r = zg(8, &[3]);
        let x = el(&r, &[0, 1, 1]);
        assert_eq!(r.gr_mul(&x, &x), el(&r, &[2, 1, 1]));
        assert_eq!(r.gr_mul(&x, &r.one()), x);
    }

    #[test]
    fn fourth_power_lifts_in_z8c3() {
        let r = zg(8, &[3]);
        let x = el(&r, &[0, 1, 1]);
        let e = r.gr_pow(&x, Exponent::Flat(4));
        assert_eq!(e, el(&r, &[6, 5, 5]));
        assert_eq!(r.gr_pow(&x, Exponent::Tower { base: 2, count: 2 }), e);
        assert_eq!(r.gr_pow(&x, Exponent::Flat(1)), x);
    }

    #[test]
    fn hat_of_c7_over_z5() {
        let r = zg(5, &[7]);
        let whole = Subgroup::whole(r.group());
        let h = r.hat(&whole).unwrap();
        assert_eq!(h, el(&r, &[3; 7]));
        assert_eq!(r.gr_mul(&h, &h), h);
        assert_eq!(r.hat(&Subgroup::trivial()).unwrap(), r.one());
    }

    #[test]
    fn hat_of_c5xc5_over_z2() {
        let r = zg(2, &[5, 5]);
        let h = r.hat(&Subgroup::whole(r.group())).unwrap();
        assert!(h.coeffs().iter().all(|c| c.value() == 1));
        assert!(r.is_idempotent(&h));
    }

    #[test]
    fn hat_needs_invertible_order() {
        let r = zg(6, &[3]);
        assert!(matches!(
            r.hat(&Subgroup::whole(r.group())),
            Err(Error::NonInvertible(_))
        ));
    }

    #[test]
    fn every_hat_is_idempotent() {
        for (m, f) in [(2u64, vec![5u64, 5]), (7, vec![2, 4]), (5, vec![6]), (9, vec![2, 2, 2])] {
            let r = zg(m, &f);
            for h in all_subgroups(r.group()).unwrap() {
                if arith::gcd(h.order() as u64, m) != 1 {
                    continue;
                }
                let e = r.hat(&h).unwrap();
                assert_eq!(r.gr_mul(&e, &e), e, "{m} {f:?} {:?}", h.elements);
            }
        }
    }

    #[test]
    fn axioms_on_z6_c2xc3() {
        let r = zg(6, &[2, 3]);
        let a = el(&r, &[1, 5, 0, 3, 2, 2]);
        let b = el(&r, &[0, 0, 4, 1, 1, 5]);
        let c = el(&r, &[2, 3, 1, 0, 0, 1]);
        laws::check_triple(&r, &a, &b, &c);
    }

    #[test]
    fn formatting() {
        let r = zg(200, &[3]);
        assert_eq!(r.format_element(&el(&r, &[184, 8, 8])), "184*e + 8*g + 8*g^2");
        assert_eq!(r.format_element(&r.zero()), "0");
        let r2 = zg(2, &[5, 5]);
        assert_eq!(r2.format_element(&r2.basis(7)), "1*(a b^2)");
        let q = GroupRing::new(PolyQuotientRing::gaussian(5).unwrap(), AbelianGroup::new(&[3]).unwrap());
        let x = q.term(q.base().from_coefficients(&[3, 1]).unwrap(), 2);
        assert_eq!(q.format_element(&x), "(3 + i)*g^2");
    }

    #[test]
    fn json_shape() {
        let r = zg(200, &[3]);
        let j = r.element_json(&el(&r, &[184, 8, 8]));
        let s = serde_json::to_string(&j).unwrap();
        assert_eq!(s, r#"{"group":[3],"modulus":200,"coeffs":[184,8,8]}"#);
        assert_eq!(r.element_from_json(&j).unwrap(), el(&r, &[184, 8, 8]));
    }

    #[test]
    fn enumeration_is_complete() {
        let r = zg(2, &[3]);
        let all: std::collections::BTreeSet<_> = r.elements().unwrap().collect();
        assert_eq!(all.len(), 8);
    }
}
