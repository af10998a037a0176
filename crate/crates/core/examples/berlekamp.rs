//! Factor `x^n - 1` over small prime fields and check the CRT data.
use idemlift::prelude::*;

fn main() -> Result<()> {
    for (n, p) in [(7usize, 2u64), (7, 5), (15, 2), (8, 3)] {
        let mut c = vec![0; n + 1];
        c[0] = p - 1;
        c[n] = 1;
        let f = Polynomial::new(c, p);
        let fz = berlekamp_factor(&f, 64)?;
        assert_eq!(fz.product(), f);
        let parts: Vec<String> = fz
            .factors
            .iter()
            .map(|b| match b.multiplicity {
                1 => format!("({})", b.factor),
                k => format!("({})^{k}", b.factor),
            })
            .collect();
        println!("x^{n} - 1 over F_{p} = {}", parts.join(" "));
        for b in &fz.factors {
            // s_i m_i = 1 mod p_i^r_i
            let one = b.inverse.mul(&b.cofactor).rem(&b.prime_power())?;
            assert!(one.is_one());
        }
    }
    Ok(())
}
