//! Mass error per step of the conservative and the localized (NMC) schemes
//! with perturbed eigenvectors.
//!
//! Run with `cargo run --release --example mass_tracking`.

use eldg::harness::{run_mass_tracking, ProblemId, RunConfig, SchemeName};

fn main() -> eldg::Result<()> {
    let mut cfg = RunConfig::new(ProblemId::WaveSin);
    cfg.meshes = vec![160];
    cfg.cfls = vec![0.1];
    cfg.t_final = 5.0;
    for scheme in [SchemeName::Eldg2, SchemeName::Eldg3, SchemeName::NmcEldg2, SchemeName::NmcEldg3] {
        cfg.scheme = scheme;
        let (rows, out) = run_mass_tracking(&cfg)?;
        let worst = rows.iter().map(|r| r.relative).fold(0.0, f64::max);
        println!("{:<10} {} steps, worst relative drift {worst:.2e}", scheme.as_str(), out.steps);
        for r in rows.iter().step_by(rows.len() / 5) {
            println!("    t = {:6.3}  |dm| = {:.2e} {:.2e}", r.t, r.drift[0], r.drift[1]);
        }
    }
    Ok(())
}
