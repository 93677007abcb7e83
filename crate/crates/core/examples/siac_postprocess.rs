//! B-spline post-processing of a DG wave solution: the filtered error
//! converges at order 2k+1 instead of k+1.
//!
//! Run with `cargo run --release --example siac_postprocess`.

use std::f64::consts::PI;
use std::sync::Arc;

use eldg::harness::convergence_order;
use eldg::{build_uniform_mesh, siac_filter, ButcherTableau, DGField, ElStepper, SchemeVariant, WaveSystem};

// `(u_t, u_x)` of `u = sin(x + t)`: a single left-moving wave.
fn exact(x: f64, t: f64) -> [f64; 2] {
    [(x + t).cos(), (x + t).cos()]
}

// L1 error of `f` against u1 sampled on a fine grid.
fn l1(f: impl Fn(f64) -> f64, t: f64) -> f64 {
    let m = 4000;
    let h = 2.0 * PI / m as f64;
    (0..m).map(|i| (i as f64 + 0.5) * h).map(|x| (f(x) - exact(x, t)[0]).abs() * h).sum::<f64>() / (2.0 * PI)
}

fn main() -> eldg::Result<()> {
    let t_final = 1.0;
    for degree in [1, 2] {
        println!("P{degree}");
        let mut last: Option<(usize, f64, f64)> = None;
        for n in [20, 40, 80] {
            let mesh = Arc::new(build_uniform_mesh(0.0, 2.0 * PI, n)?);
            let cfl = if degree == 1 { 0.3 } else { 0.18 };
            let steps = (t_final / (cfl * mesh.max_width())).ceil() as usize;
            let stepper = ElStepper::new(WaveSystem::constant(1.0), degree, SchemeVariant::conservative());
            let mut u = DGField::project(mesh, degree, 2, &[], |x, v| v.copy_from_slice(&exact(x, 0.0)));
            for _ in 0..steps {
                u = stepper.step(&u, t_final / steps as f64, &ButcherTableau::rk4())?;
            }
            let raw = l1(|x| u.eval(0, x), t_final);
            let filtered = siac_filter(&u)?;
            let post = l1(|x| filtered.eval(0, x), t_final);
            let orders = last.map_or((None, None), |(m, r, p)| {
                (convergence_order(r, raw, m, n), convergence_order(p, post, m, n))
            });
            println!(
                "  n={n:<4} raw {raw:.3e} ({}) filtered {post:.3e} ({})",
                orders.0.map_or("--".into(), |o| format!("{o:.2}")),
                orders.1.map_or("--".into(), |o| format!("{o:.2}"))
            );
            last = Some((n, raw, post));
        }
    }
    Ok(())
}
