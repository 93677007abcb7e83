//! Wave equation with variable speed `a(x) = 2 + sin x` and a forcing term,
//! built directly from `WaveSystem` rather than the problem registry.
//!
//! Run with `cargo run --release --example variable_wave`.

use std::f64::consts::PI;
use std::sync::Arc;

use eldg::harness::{convergence_order, error_norms};
use eldg::{build_uniform_mesh, ButcherTableau, DGField, ElStepper, SchemeVariant, WaveSystem};

fn main() -> eldg::Result<()> {
    let sys = WaveSystem::new(Arc::new(|x| 2.0 + x.sin()), Arc::new(|x| x.cos())).with_source(Arc::new(|x, t| {
        let (s, c, a) = ((x - 2.0 * t).sin(), (x - 2.0 * t).cos(), 2.0 + x.sin());
        -4.0 * s + s * a * a - 2.0 * a * x.cos() * c
    }));
    let exact = |x: f64, t: f64, u: &mut [f64]| {
        u[0] = -2.0 * (x - 2.0 * t).cos();
        u[1] = (x - 2.0 * t).cos();
    };
    let t_final = 1.0;
    for degree in [1, 2] {
        let mut prev: Option<(usize, f64)> = None;
        for n in [20, 40, 80] {
            let mesh = Arc::new(build_uniform_mesh(0.0, 2.0 * PI, n)?);
            let steps = (t_final * 3.0 / (0.1 * mesh.max_width())).ceil() as usize;
            let stepper = ElStepper::new(sys.clone(), degree, SchemeVariant::conservative());
            let mut u = DGField::project(mesh, degree, 2, &[], |x, v| exact(x, 0.0, v));
            for _ in 0..steps {
                u = stepper.step(&u, t_final / steps as f64, &ButcherTableau::rk4())?;
            }
            let e = error_norms(&u, &exact, t_final)[0].l1;
            let order = prev.and_then(|(m, p)| convergence_order(p, e, m, n));
            println!("P{degree} n={n:<3} L1(u1) {e:.3e}  order {}", order.map_or("--".into(), |o| format!("{o:.2}")));
            prev = Some((n, e));
        }
    }
    Ok(())
}
