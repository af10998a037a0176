//! Convolution in `Z_m G` and the hat idempotents of subgroups.
use idemlift::prelude::*;

fn main() -> Result<()> {
    let r = GroupRing::new(ResidueRing::new(13)?, AbelianGroup::new(&[2, 6])?);
    let x = parse_element(&r, "1 + 2a + b^3")?;
    let y = parse_element(&r, "5e + a*b - b^5")?;
    println!("x   = {}", r.format_element(&x));
    println!("y   = {}", r.format_element(&y));
    println!("x*y = {}", r.format_element(&r.mul(&x, &y)));
    println!("x^12 = {}", r.format_element(&r.pow(&x, 12)));

    for h in all_subgroups(r.group())? {
        let hat = r.hat(&h)?;
        assert!(r.is_idempotent(&hat));
        println!("|H| = {:2}: hat has support {:?}", h.order(), r.support(&hat));
    }
    Ok(())
}
