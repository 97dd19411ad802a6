//! Point counts of singular loci over small prime fields, compared with
//! the orbit strata.
//!
//! cargo run --release --example singular_loci -- 11

use foliations::probe::{closed_form, run_probe, stratum_points, ProbeTarget, Stratum};

fn main() -> foliations::Result<()> {
    let p: u64 = std::env::args()
        .nth(1)
        .and_then(|s| s.parse().ok())
        .unwrap_or(7);
    println!("strata over F_{p}:");
    for s in Stratum::ALL {
        let pts = stratum_points(s, p)?;
        println!(
            "  {:<14} {:>6}  (closed form {:?})",
            s.label(),
            pts.len(),
            closed_form(s, p)
        );
    }
    println!("probes:");
    for t in [
        ProbeTarget::BaseLocus,
        ProbeTarget::SingOmega4,
        ProbeTarget::DeltaSing,
        ProbeTarget::SingOmegaBar,
        ProbeTarget::SingDOmegaBar,
    ] {
        let r = run_probe(t, p)?;
        println!(
            "  {:<18} {:>6} points, expected {:>6}, matches {}  [{}]",
            t.label(),
            r.zeros.len(),
            r.expected_count,
            r.ok(),
            r.reference_label()
        );
    }
    Ok(())
}
