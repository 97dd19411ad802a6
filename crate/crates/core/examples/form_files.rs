//! Polynomial text, 1-form files and the exterior calculus on them.

use foliations::exterior::OneFormFile;
use foliations::poly::parse_poly;
use foliations::{DiffForm, PolyVectorField, VarNames};

fn main() -> foliations::Result<()> {
    let names = VarNames::new(vec!["x".into(), "y".into(), "z".into()]);
    let f = parse_poly("(x + 2*y)^2 - 3/4*z^2", &names)?;
    println!("f = {}", f.to_text(&names));
    println!("df/dy = {}", f.partial(1)?.to_text(&names));
    println!(
        "gcd(f, x^2 - 4*y^2) = {}",
        f.gcd(&parse_poly("x^2 - 4*y^2", &names)?)?.to_text(&names)
    );

    let w = DiffForm::function(f.clone()).d();
    let r = PolyVectorField::radial(3);
    println!(
        "i_R df = {}  (Euler: 2f)",
        w.interior(&r)?.coefficient(&[]).to_text(&names)
    );

    let file = OneFormFile::from_form(&w, &names)?;
    let text = file.to_toml();
    print!("{text}");
    let back = OneFormFile::from_toml(&text)?.to_form()?;
    println!("round trip exact: {}", back == w);
    Ok(())
}
