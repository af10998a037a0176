//! Ring expressions as accepted by the command line, parsed and rebuilt.
use idemlift::prelude::*;
use idemlift::with_ring;

fn main() -> Result<()> {
    let inputs = ["Z(200){C3}", "Z(25)[i]", "Z(8)[x]/(x^2+x+1){C5xC5}", "Z(4)[y]/(y^2)", "Z(0)"];
    for text in inputs {
        match RingExpression::parse(text) {
            Ok(expr) => {
                let ring = expr.build()?;
                let size = with_ring!(&ring, r => r.cardinality());
                println!("{text:28} -> {expr}  |R| = {size}");
            }
            Err(e) => println!("{text:28} -> error: {e}"),
        }
    }
    let r = GroupRing::new(ResidueRing::new(200)?, AbelianGroup::new(&[3])?);
    let x = parse_element(&r, "(5 + 6g)^100")?;
    println!("(5 + 6g)^100 = {}", r.format_element(&x));
    Ok(())
}
