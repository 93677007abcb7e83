//! Scalar transport `u_t + u_x = 0` at time steps far beyond the Eulerian limit.
//!
//! Run with `cargo run --release --example scalar_transport`.

use std::f64::consts::PI;
use std::sync::Arc;

use eldg::harness::error_norms;
use eldg::{build_uniform_mesh, step_scalar, ButcherTableau, ScalarProblem, SchemeVariant};

fn main() -> eldg::Result<()> {
    let problem = ScalarProblem {
        velocity: Arc::new(|_, _| 1.0),
        initial: Arc::new(|x| x.sin()),
        exact: Some(Arc::new(|x, t| (x - t).sin())),
        domain: (0.0, 2.0 * PI),
    };
    let exact = problem.exact.clone().unwrap();
    let t_final = 2.0;
    println!("{:>5} {:>6} {:>7} {:>13} {:>13}", "n", "cfl", "steps", "L1", "mass drift");
    for n in [20, 40, 80] {
        let mesh = Arc::new(build_uniform_mesh(0.0, 2.0 * PI, n)?);
        let dx = mesh.max_width();
        for cfl in [0.5, 2.5, 7.5] {
            let steps = (t_final / (cfl * dx)).ceil() as usize;
            let dt = t_final / steps as f64;
            let mut u = problem.initial_field(Arc::clone(&mesh), 2);
            let m0 = u.total_mass()[0];
            for _ in 0..steps {
                u = step_scalar(&u, dt, &ButcherTableau::rk4(), &problem, SchemeVariant::conservative())?;
            }
            let e = error_norms(&u, &|x, t, v| v[0] = exact(x, t), t_final);
            println!(
                "{n:>5} {cfl:>6} {steps:>7} {:>13.4e} {:>13.2e}",
                e[0].l1,
                (u.total_mass()[0] - m0).abs()
            );
        }
    }
    Ok(())
}
