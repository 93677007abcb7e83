//! Error table for `u_tt = u_xx` with `u(x, 0) = sin x`, written as CSV.
//!
//! Run with `cargo run --release --example wave_convergence [degree]`.

use eldg::harness::runs::convergence_table;
use eldg::harness::{run_convergence, ProblemId, RunConfig};

fn main() -> eldg::Result<()> {
    let degree: usize = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(1);
    let mut cfg = RunConfig::new(ProblemId::WaveSin);
    cfg.degree = degree;
    cfg.cfls = vec![if degree == 1 { 0.3 } else { 0.18 }];
    let rows = run_convergence(&cfg)?;
    convergence_table(&cfg, &rows)
        .write_to(&mut std::io::stdout().lock())
        .expect("stdout");
    Ok(())
}
