//! Step data for the wave equation with and without the minmod limiter.
//! Prints the largest overshoot of the cell means beyond the exact range.
//!
//! Run with `cargo run --release --example step_limiter`.

use eldg::harness::{problem_1d, solve, ProblemId, RunConfig, SchemeName, State};

fn main() -> eldg::Result<()> {
    let p = problem_1d(ProblemId::WaveStep)?;
    let exact = p.exact.clone().expect("step data has an exact solution");
    for limiter in [None, Some(0.0)] {
        let mut cfg = RunConfig::new(ProblemId::WaveStep);
        cfg.scheme = SchemeName::Eldg3;
        cfg.degree = 2;
        cfg.meshes = vec![160];
        cfg.cfls = vec![0.9];
        cfg.limiter_m = limiter;
        let s = solve(&cfg)?;
        let State::One(u) = &s.outcome.state else { unreachable!() };
        let mut worst: f64 = 0.0;
        let mut v = [0.0; 2];
        for c in 0..2 {
            let (mut lo, mut hi) = (f64::INFINITY, f64::NEG_INFINITY);
            for j in 0..u.n_cells() {
                exact(u.mesh.center(j), s.outcome.time, &mut v);
                lo = lo.min(v[c]);
                hi = hi.max(v[c]);
            }
            for j in 0..u.n_cells() {
                let m = u.cell_mean(j, c);
                worst = worst.max(m - hi).max(lo - m);
            }
        }
        println!(
            "limiter {:<8} overshoot {:.3e}  mass drift {:.1e}",
            limiter.map_or("off".to_string(), |m| format!("M={m}")),
            worst.max(0.0),
            s.outcome.relative_mass_drift()
        );
    }
    Ok(())
}
