//! From 3C dQ - 2Q dC on P4 to the degree-three form on P3: restrict to
//! a4 = 0, saturate by a3, certify.

use foliations::binary::quartic_vars;
use foliations::exceptional::{build_omega4, derive_omega_bar, explicit_omega_bar};
use foliations::exterior::{descends_check, integrability_check};
use foliations::VarNames;

fn main() -> foliations::Result<()> {
    let omega4 = build_omega4()?;
    println!(
        "omega4 has coefficient degree {:?}",
        omega4.coefficient_degree()
    );
    println!(
        "  descends {}, integrable {}",
        descends_check(&omega4)?.ok,
        integrability_check(&omega4)?.ok
    );

    let rep = derive_omega_bar()?;
    let names = VarNames::new(quartic_vars().names()[..4].to_vec());
    println!(
        "restricted to a4 = 0: divided by {} (unit {})",
        rep.factor.to_text(&names),
        rep.unit
    );
    for (k, v) in rep.omega_bar.to_lines(&names) {
        println!("  {k}: {v}");
    }

    // the same foliation in the coordinates of the affine group action
    let explicit = explicit_omega_bar();
    println!("explicit form, coordinates x0..x3:");
    for (k, v) in explicit.to_lines(&VarNames::indexed("x", 4)) {
        println!("  {k}: {v}");
    }
    println!(
        "  descends {}, integrable {}",
        descends_check(&explicit)?.ok,
        integrability_check(&explicit)?.ok
    );
    Ok(())
}
