//! `Z_936 (C_5 x C_5)`: hat families at 2, 3 and 13 glued by the CRT.
use idemlift::prelude::*;

fn main() -> Result<()> {
    let g = AbelianGroup::new(&[5, 5])?;
    for p in [2, 3, 13] {
        println!("orbits of g -> g^{p}: {}", frobenius_orbit_count(&g, p)?);
    }
    let r = GroupRing::new(ResidueRing::new(936)?, g);
    let cat = enumerate_idempotents(&r, &CatalogOptions::default())?;
    println!("{}: {} primitive, {} idempotents in total", r.describe(), cat.primitive.len(), cat.count());
    for e in cat.primitive.members().iter().take(3) {
        println!("  {}", r.format_element(e));
    }

    // one primitive per prime, combined: idempotent, but two such sums share
    // components whenever they agree at some prime
    let hats: Vec<_> = [2, 3, 13].iter().map(|&p| hat_family(r.group(), p)).collect::<Result<_>>()?;
    let pick = |i: usize, j: usize, k: usize| {
        let rings: Vec<_> = [2, 3, 13].iter().map(|&p| r.with_base_modulus(p)).collect::<Result<Vec<_>>>()?;
        crt_combine_one(
            &r,
            &[
                (&rings[0], &hats[0].members()[i]),
                (&rings[1], &hats[1].members()[j]),
                (&rings[2], &hats[2].members()[k]),
            ],
        )
    };
    let a = pick(0, 0, 0)?;
    let b = pick(0, 1, 1)?;
    println!("a*b == 0: {}", r.is_zero(&r.mul(&a, &b)));
    Ok(())
}
