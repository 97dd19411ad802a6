//! Q, C, D and j of a few binary quartics, and the resultant check of the
//! discriminant.
//!
//! cargo run --example quartic_invariants

use foliations::binary::{
    certify_discriminant, invariants_qcd, j_invariant, j_prime, BinaryForm, JNormalization,
};

fn main() -> foliations::Result<()> {
    for text in [
        "t0^3*t1 - t0*t1^3",
        "t0^4 + t1^4",
        "t0^4 + 6*t0^2*t1^2 + t1^4",
        "t0^2*t1^2",
    ] {
        let f = BinaryForm::parse(text)?;
        let inv = invariants_qcd(&f)?;
        println!("{text}");
        println!(
            "  weighted coords {:?}",
            f.coords().iter().map(|c| c.to_string()).collect::<Vec<_>>()
        );
        println!("  Q = {}  C = {}  D = {}", inv.q, inv.c, inv.d());
        println!(
            "  j = {}  (raw {}), j' = {}",
            j_invariant(&f, JNormalization::Classical)?,
            j_invariant(&f, JNormalization::Raw)?,
            j_prime(&f)?
        );
    }
    let n = certify_discriminant(50, 20, 7)?;
    println!("Res(dF/dt0, dF/dt1) = 4096 D on {n} random quartics");
    Ok(())
}
