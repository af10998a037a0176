//! `Z_{5^k}[i]`: the idempotents of `Z_5[i]` lift by the power `5^(k-1)`.
use idemlift::prelude::*;

fn main() -> Result<()> {
    let (base, idem) = gaussian_idempotents(5)?;
    let shown: Vec<String> = idem.iter().map(|x| base.format_element(x)).collect();
    println!("E(Z(5)[i]) = {{{}}}", shown.join(", "));
    for k in 2..=4 {
        let m = 5u64.pow(k);
        let r = PolyQuotientRing::gaussian(m)?;
        let chain = chain_for_prime_power(&r)?;
        let lifted: Vec<String> = idem
            .iter()
            .map(|f| {
                let rep = chain_lift(&r, &base.transfer(f, &r), &chain)?;
                assert!(rep.verified());
                Ok(r.format_element(&rep.lifted))
            })
            .collect::<Result<_>>()?;
        println!("E(Z({m})[i]) = {{{}}}  (exponent {})", lifted.join(", "), chain.exponent().unwrap_or(1));
    }
    Ok(())
}
