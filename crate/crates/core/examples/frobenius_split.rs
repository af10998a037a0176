//! Primitive idempotents of any small `F_p`-algebra from the kernel of
//! `x -> x^p - x`, including non-semisimple ones.
use idemlift::prelude::*;

fn main() -> Result<()> {
    let sq = Polynomial::new(vec![1, 0, 1], 2);
    let r = GroupRing::new(PolyQuotientRing::new(2, &sq)?, AbelianGroup::new(&[3])?);
    let split = frobenius_split(&r)?;
    println!("{} ({}):", r.describe(), split.provenance());
    for e in split.members() {
        println!("  {}", r.format_element(e));
    }
    let poly = poly_crt_idempotents(&r, &CatalogOptions::default())?;
    let oracle = brute_force_idempotents(&r, 1 << 20)?;
    assert_eq!(poly.members(), oracle.members());
    println!("polynomial CRT and brute force agree on {} idempotents", poly.len());

    let r = GroupRing::new(ResidueRing::new(3)?, AbelianGroup::new(&[6])?);
    let split = frobenius_split(&r)?;
    println!("{}: {} primitives", r.describe(), split.len());
    Ok(())
}
