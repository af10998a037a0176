//! `Z_125 C_7`: lift the four idempotents of `Z_5 C_7` with exponent `5^2`.
use idemlift::prelude::*;

fn main() -> Result<()> {
    let r = GroupRing::new(ResidueRing::new(125)?, AbelianGroup::new(&[7])?);
    let base = r.with_base_modulus(5)?;
    let chain = chain_for_prime_power(&r)?;
    println!("chain tower {:?}, provenance {}", chain.tower(), chain.provenance());
    let family = cyclic_base_idempotents(7, 5)?.boolean_closure(1 << 10)?;
    for f in family.members() {
        let rep = chain_lift(&r, &base.transfer(f, &r), &chain)?;
        println!(
            "{:>28}  ->  {}  ({} mults)",
            base.format_element(f),
            r.format_element(&rep.lifted),
            rep.mults
        );
        // the binomial formula gives the same unique lift
        assert_eq!(binomial_lift(&r, &rep.input, None)?, rep.lifted);
    }
    Ok(())
}
