// D restricted to the osculating hyperplane a4 = 0.
use foliations::binary::{d_poly, quartic_vars};
use foliations::exceptional::{check_double_tangency, cofactor_discriminant};

fn main() -> foliations::Result<()> {
    let names = quartic_vars();
    println!("D = {}", d_poly().to_text(&names));
    println!(
        "disc of the cubic cofactor = {}",
        cofactor_discriminant().to_text(&names)
    );
    let t = check_double_tangency()?;
    println!("D(a0..a3, 0) = {} * a3^2 * disc: {}", t.constant, t.ok);
    println!("a3 divides exactly twice: {}", t.multiplicity_exactly_two);
    Ok(())
}
