//! Root multiplicities, orbit labels, Veronese points and the osculating
//! flag at [1:0].

use foliations::binary::{
    form_from_divisor, line_point, osculating_flag, root_pattern, veronese, BinaryForm,
};

fn main() -> foliations::Result<()> {
    let samples = [
        veronese(4, &line_point(1, 2))?,
        form_from_divisor(4, &[(line_point(1, 0), 3), (line_point(0, 1), 1)])?,
        form_from_divisor(4, &[(line_point(1, 1), 2), (line_point(1, -1), 2)])?,
        BinaryForm::parse("t0^2*t1*(t0 + 3*t1)")?,
        BinaryForm::parse("t0^4 - t1^4")?,
        BinaryForm::parse("(t0^2 + t1^2)^2")?,
    ];
    for f in &samples {
        let pat = root_pattern(f);
        println!(
            "{f:<40} {pat} {}",
            pat.orbit_class.map_or("-", |c| c.label())
        );
    }

    let flag = osculating_flag(&line_point(1, 0))?;
    let show = |v: &[num_rational::BigRational]| {
        v.iter()
            .map(|c| c.to_string())
            .collect::<Vec<_>>()
            .join(",")
    };
    println!("\nosculating flag at [1:0]");
    println!("  H:  {}", show(&flag.hyperplane));
    for q in [line_point(0, 1), line_point(2, 5)] {
        let (l, c, t) = (
            flag.line_point(&q)?,
            flag.conic_point(&q)?,
            flag.cubic_point(&q)?,
        );
        println!("  3p+q {l}: in P1 {}", flag.contains(&l, &flag.line));
        println!("  2p+2q {c}: in P2 {}", flag.contains(&c, &flag.plane));
        println!(
            "  p+3q {t}: in H {}, in P2 {}",
            flag.contains(&t, std::slice::from_ref(&flag.hyperplane)),
            flag.contains(&t, &flag.plane)
        );
    }
    Ok(())
}
