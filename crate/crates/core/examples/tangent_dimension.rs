//! Kernel of the linearized integrability map at the exceptional form:
//! a 259 x 80 system over Q. Build with --release for speed.

use foliations::exceptional::{
    affine_fields, contract_volume, derive_omega_bar, explicit_omega_bar, TangentSystem,
};

fn main() -> foliations::Result<()> {
    let f = affine_fields(4)?;
    let sources = [
        ("explicit", explicit_omega_bar()),
        ("derived", derive_omega_bar()?.omega_bar),
        ("i_X i_Y i_R vol", contract_volume(&f.x, &f.y)?),
    ];
    for (name, w) in &sources {
        let sys = TangentSystem::new(w)?;
        let (rows, cols) = sys.shape();
        let t = sys.report()?;
        println!(
            "{name:<16} {rows}x{cols}: ambient {} kernel {} projective {} (orbit route {}), contains form: {}",
            t.ambient_dim, t.raw_kernel_dim, t.projective_dim, t.parametrized_kernel_dim, t.contains_omega_bar
        );
    }
    Ok(())
}
