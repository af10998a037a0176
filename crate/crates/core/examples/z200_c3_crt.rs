//! `Z_200 C_3`: the sum form `25 f^4 + 176 g^5` and the power form
//! `(5f + 6g)^100` produce the same 16 idempotents.
use idemlift::prelude::*;

fn main() -> Result<()> {
    let r = GroupRing::new(ResidueRing::new(200)?, AbelianGroup::new(&[3])?);
    let fams = [2, 5]
        .iter()
        .map(|&p| {
            let rp = r.with_base_modulus(p)?;
            rp.base_primitives(&CatalogOptions::default())?.boolean_closure(1 << 10)
        })
        .collect::<Result<Vec<_>>>()?;
    let sum = crt_combine(&r, &fams, CombineForm::Sum, 1 << 10)?;
    let pow = crt_combine(&r, &fams, CombineForm::Power, 1 << 10)?;
    assert_eq!(sum.members(), pow.members());
    println!("power form: {:?}", power_form(200)?);
    for (i, e) in sum.members().iter().enumerate() {
        println!("h{:<2} = {}", i + 1, r.format_element(e));
    }
    Ok(())
}
