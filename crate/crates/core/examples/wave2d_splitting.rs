//! 2D wave system by dimensional splitting: Strang against the fourth-order
//! triple-jump composition at a large time step.
//!
//! Run with `cargo run --release --example wave2d_splitting`.

use eldg::harness::{run_cfl_sweep, ProblemId, RunConfig, SplitOrder};

fn main() -> eldg::Result<()> {
    let mut cfg = RunConfig::new(ProblemId::Wave2dConst);
    cfg.degree = 2;
    cfg.meshes = vec![40];
    cfg.t_final = 1.0;
    cfg.cfls = vec![8.0, 4.0, 2.0];
    for split in [SplitOrder::Strang, SplitOrder::Fourth] {
        cfg.split = split;
        println!("{split:?}");
        for r in run_cfl_sweep(&cfg)? {
            let e = r.errors.map_or(f64::NAN, |e| e.l1);
            println!("  cfl {:<4} steps {:<4} L1 {e:.3e}", r.cfl, r.steps);
        }
    }
    Ok(())
}
