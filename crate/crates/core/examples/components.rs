//! Forms from the three classical families, each checked for descent and
//! integrability, plus one form that is neither.

use foliations::components::{build_linear_pullback, build_logarithmic, build_rational};
use foliations::exterior::{descends_check, integrability_check};
use foliations::poly::parse_poly;
use foliations::{DiffForm, Scalar, VarNames};
use num_rational::BigRational;

fn report(name: &str, w: &DiffForm, names: &VarNames) -> foliations::Result<()> {
    println!(
        "{name}: descends {}, integrable {}",
        descends_check(w)?.ok,
        integrability_check(w)?.ok
    );
    for (k, v) in w.to_lines(names) {
        println!("    {k}: {v}");
    }
    Ok(())
}

fn main() -> foliations::Result<()> {
    let names = VarNames::indexed("x", 4);
    let p = |s: &str| parse_poly(s, &names);

    let quadric = p("x0*x3 - x1*x2")?;
    let plane = p("x0 + x1")?;
    report(
        "rational (2, 1)",
        &build_rational(&quadric, &plane)?,
        &names,
    )?;

    let q = |v: i64| BigRational::from_integer(v.into());
    let log = build_logarithmic(
        &[p("x0")?, p("x1")?, p("x2^2 - x0*x3")?],
        &[q(2), q(2), q(-2)],
    )?;
    report("logarithmic", &log, &names)?;

    // pullback of x0 dx1 - x1 dx0 from P2 along a rank-3 projection
    let eta = DiffForm::one_form(vec![
        -&parse_poly("x1", &VarNames::indexed("x", 3))?,
        parse_poly("x0", &VarNames::indexed("x", 3))?,
        parse_poly("0", &VarNames::indexed("x", 3))?,
    ])?;
    let m: Vec<Vec<Scalar>> = [[1, 0, 0, 1], [0, 1, 1, 0], [0, 0, 1, -1]]
        .iter()
        .map(|r| r.iter().map(|&v| Scalar::from(v)).collect())
        .collect();
    report("linear pullback", &build_linear_pullback(&m, &eta)?, &names)?;

    let contact = DiffForm::one_form(vec![p("-x1")?, p("x0")?, p("-x3")?, p("x2")?])?;
    report("contact form", &contact, &names)?;
    Ok(())
}
