//! Idempotents of `Z_m`: one per subset of the prime-power blocks of `m`.
use idemlift::prelude::*;

fn main() -> Result<()> {
    for m in [12, 200, 936] {
        let r = ResidueRing::new(m)?;
        let cat = enumerate_idempotents(&r, &CatalogOptions::default())?;
        let all = cat.complete.as_ref().expect("small catalog");
        let values: Vec<String> = all.members().iter().map(|x| r.format_element(x)).collect();
        println!("Z({m}): {} idempotents: {}", cat.count(), values.join(", "));
        for t in crt_terms(m)? {
            println!("  p = {}: {} * f^{}", t.prime, t.coefficient, t.exponent);
        }
    }
    Ok(())
}
