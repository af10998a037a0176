use idemlift::arith::{ext_gcd, is_prime};
use idemlift::expr::PolyLayer;
use idemlift::prelude::*;
use proptest::prelude::*;
use proptest::sample::select;

fn ring_laws<R: CommutativeRing>(r: &R, a: &R::Element, b: &R::Element, c: &R::Element) {
    assert_eq!(r.add(&r.add(a, b), c), r.add(a, &r.add(b, c)));
    assert_eq!(r.add(a, b), r.add(b, a));
    assert_eq!(r.add(a, &r.zero()), *a);
    assert!(r.is_zero(&r.add(a, &r.neg(a))));
    assert_eq!(r.mul(&r.mul(a, b), c), r.mul(a, &r.mul(b, c)));
    assert_eq!(r.mul(a, b), r.mul(b, a));
    assert_eq!(r.mul(a, &r.one()), *a);
    assert_eq!(r.mul(a, &r.add(b, c)), r.add(&r.mul(a, b), &r.mul(a, c)));
}

fn groups() -> impl Strategy<Value = Vec<u64>> {
    select(vec![vec![], vec![2], vec![3], vec![4], vec![6], vec![2, 2], vec![2, 3], vec![3, 3]])
}

fn group_ring(m: u64, g: &[u64]) -> GroupRing<ResidueRing> {
    GroupRing::new(ResidueRing::new(m).unwrap(), AbelianGroup::new(g).unwrap())
}

fn element<R: CommutativeRing>(r: &R, seed: u128) -> R::Element {
    let n = r.cardinality().finite().unwrap();
    r.element_at(seed % n).unwrap()
}

proptest! {
    #[test]
    fn residue_ring_axioms(m in 1u64..10_000, a: i64, b: i64, c: i64) {
        let r = ResidueRing::new(m).unwrap();
        ring_laws(&r, &r.from_int(a as i128), &r.from_int(b as i128), &r.from_int(c as i128));
    }

    #[test]
    fn group_ring_axioms(m in 2u64..40, g in groups(), seeds: [u128; 3]) {
        let r = group_ring(m, &g);
        let [a, b, c] = seeds.map(|s| element(&r, s));
        ring_laws(&r, &a, &b, &c);
    }

    #[test]
    fn quotient_ring_axioms(m in 2u64..30, q in prop::collection::vec(0u64..30, 1..4), seeds: [u128; 3]) {
        let mut q = q;
        q.push(1);
        let r = PolyQuotientRing::new(m, &Polynomial::new(q, m)).unwrap();
        let [a, b, c] = seeds.map(|s| element(&r, s));
        ring_laws(&r, &a, &b, &c);
    }

    #[test]
    fn ext_gcd_is_bezout(a in -1_000_000i128..1_000_000, b in -1_000_000i128..1_000_000) {
        prop_assume!(a != 0 || b != 0);
        let (g, x, y) = ext_gcd(a, b).unwrap();
        prop_assert!(g > 0);
        prop_assert_eq!(a * x + b * y, g);
        prop_assert_eq!(a % g, 0);
        prop_assert_eq!(b % g, 0);
    }

    #[test]
    fn crt_round_trip(m in 1u64..1_000_000, x: u64) {
        let fac = factorize(m).unwrap();
        let x = x % m;
        let residues: Vec<u64> = fac.parts.iter().map(|p| x % p.prime_power).collect();
        prop_assert_eq!(fac.reconstruct(&residues), x);
    }

    #[test]
    fn polynomial_bezout(
        p in select(vec![2u64, 3, 5, 7, 13]),
        a in prop::collection::vec(0u64..13, 1..10),
        b in prop::collection::vec(0u64..13, 1..10),
    ) {
        let (a, b) = (Polynomial::new(a, p), Polynomial::new(b, p));
        prop_assume!(!a.is_zero() || !b.is_zero());
        let (g, s, t) = a.ext_gcd(&b).unwrap();
        prop_assert_eq!(s.mul(&a).add(&t.mul(&b)), g.clone());
        prop_assert!(a.rem(&g).unwrap().is_zero());
        prop_assert!(b.rem(&g).unwrap().is_zero());
    }

    #[test]
    fn group_ring_mul_matches_naive_convolution(m in 2u64..50, g in groups(), seeds: [u128; 2]) {
        let r = group_ring(m, &g);
        let (x, y) = (element(&r, seeds[0]), element(&r, seeds[1]));
        let (cx, cy) = (r.coefficients(&x), r.coefficients(&y));
        let order = r.group().order();
        let mut want = vec![0u64; order];
        for i in 0..order {
            for j in 0..order {
                let k = r.group().op(i, j);
                want[k] = (want[k] + cx[i] * cy[j]) % m;
            }
        }
        prop_assert_eq!(r.coefficients(&r.mul(&x, &y)), want);
    }

    #[test]
    fn tower_equals_flat_power(m in 2u64..200, g in groups(), seed: u128, s in 2u64..6, k in 0u32..4) {
        let r = group_ring(m, &g);
        let x = element(&r, seed);
        let tower = r.pow_exponent(&x, Exponent::Tower { base: s, count: k });
        prop_assert_eq!(tower, r.pow(&x, s.pow(k)));
    }

    #[test]
    fn subgroup_hats_are_idempotent(g in groups(), p in select(vec![5u64, 7, 11, 13, 25, 49])) {
        let r = group_ring(p, &g);
        for h in all_subgroups(r.group()).unwrap() {
            let hat = r.hat(&h).unwrap();
            prop_assert!(r.is_idempotent(&hat));
        }
    }

    #[test]
    fn lifts_are_unique(
        (p, k) in select(vec![(2u64, 2u32), (2, 3), (3, 2), (3, 3), (5, 2), (7, 2)]),
        g in groups(),
        pick: usize,
        seed: u128,
    ) {
        let r = group_ring(p.pow(k), &g);
        let cat = enumerate_idempotents(&r, &CatalogOptions::default()).unwrap();
        let all = cat.complete.unwrap();
        let e = &all.members()[pick % all.len()];
        let n = r.scale_int(&element(&r, seed), p as i128);
        let f = r.add(e, &n);
        prop_assert_eq!(&binomial_lift(&r, &f, None).unwrap(), e);
        let chain = chain_for_prime_power(&r).unwrap();
        let rep = chain_lift(&r, &f, &chain).unwrap();
        prop_assert!(rep.verified());
        prop_assert_eq!(&rep.lifted, e);
    }

    #[test]
    fn ring_expressions_round_trip(
        m in 1u64..100_000,
        poly in prop::option::of(prop_oneof![
            Just(PolyLayer::Gaussian),
            prop::collection::vec(0u64..20, 1..4).prop_map(|mut q| { q.push(1); PolyLayer::Quotient(q) }),
        ]),
        group in prop::option::of(prop::collection::vec(2u64..12, 1..4)),
    ) {
        let expr = RingExpression { modulus: m, poly, group };
        let text = expr.to_string();
        let back = RingExpression::parse(&text).unwrap();
        prop_assert_eq!(back.to_string(), text);
        prop_assert_eq!(back.modulus, expr.modulus);
        prop_assert_eq!(back.group, expr.group);
    }

    #[test]
    fn elements_print_and_parse_back(m in 2u64..300, g in groups(), seed: u128) {
        let r = group_ring(m, &g);
        let x = element(&r, seed);
        prop_assert_eq!(parse_element(&r, &r.format_element(&x)).unwrap(), x);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn berlekamp_factors_multiply_back(
        p in select(vec![2u64, 3, 5, 7, 13]),
        c in prop::collection::vec(0u64..13, 2..=13),
    ) {
        let f = Polynomial::new(c, p);
        prop_assume!(f.degree().is_some_and(|d| d >= 1));
        let fz = berlekamp_factor(&f, 64).unwrap();
        prop_assert_eq!(fz.product(), f);
        for b in &fz.factors {
            prop_assert!(b.factor.is_monic());
            let d = b.factor.degree().unwrap();
            if d >= 2 {
                prop_assert!((0..p).all(|x| b.factor.eval(x) != 0), "{} has a root", b.factor);
            }
        }
        prop_assert!(is_prime(fz.prime));
    }
}
