//! Error versus CFL for ELDG and for its Eulerian reduction (plain RKDG),
//! on Gaussian data transported over many periods.
//!
//! Run with `cargo run --release --example cfl_sweep`.

use eldg::harness::{run_cfl_sweep, ProblemId, RunConfig, SchemeName};

fn main() -> eldg::Result<()> {
    let mut cfg = RunConfig::new(ProblemId::WaveGauss);
    cfg.degree = 2;
    cfg.meshes = vec![80];
    cfg.t_final = 10.0;
    for (scheme, cfls) in [
        (SchemeName::Eldg, vec![0.1, 0.5, 1.0, 2.0, 4.0]),
        (SchemeName::Rkdg, vec![0.1, 0.15, 0.2, 0.3, 0.5]),
    ] {
        cfg.scheme = scheme;
        cfg.cfls = cfls;
        println!("{}", scheme.as_str());
        for r in run_cfl_sweep(&cfg)? {
            match (r.blew_up, r.errors) {
                (false, Some(e)) => println!("  cfl {:<5} steps {:<6} Linf {:.3e}", r.cfl, r.steps, e.linf),
                _ => println!("  cfl {:<5} blow-up", r.cfl),
            }
        }
    }
    Ok(())
}
