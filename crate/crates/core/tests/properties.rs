mod common;

use common::*;

#[test]
fn projection_matches_brute_force_quadrature() {
    let gap = projection_gap();
    assert!(gap <= 1e-12, "gap {gap:e}");
}

#[test]
fn eulerian_reduction_equals_classical_rkdg() {
    let gap = rkdg_gap();
    assert!(gap <= 1e-12, "gap {gap:e}");
}

#[test]
fn test_functions_are_constant_along_trajectories() {
    let (spread, slope) = adjoint_gap();
    assert!(spread <= 1e-11, "spread {spread:e}");
    assert!(slope <= 1e-7, "trajectory slope vs alpha {slope:e}");
}

#[test]
fn consistent_pair_is_an_inverse_pair() {
    let gap = eigen_pair_gap();
    assert!(gap <= 1e-12, "gap {gap:e}");
}

#[test]
fn siac_reproduces_polynomials() {
    let (values, moments) = siac_gap();
    assert!(values <= 1e-10, "value gap {values:e}");
    assert!(moments <= 1e-10, "moment gap {moments:e}");
}

#[test]
fn oracle_rejects_the_lagrangian_scheme() {
    use eldg::*;
    use std::f64::consts::PI;
    let mesh = periodic_mesh(0.0, 2.0 * PI, 8);
    let u = DGField::project(mesh.clone(), 2, 2, &[], smooth_pair);
    let ours = ElStepper::new(WaveSystem::constant(1.0), 2, SchemeVariant::conservative())
        .step(&u, 0.3, &ButcherTableau::rk4())
        .unwrap();
    let (a, b, c) = textbook_tableau(TableauTag::Rk4);
    let theirs = rkdg_step(&OracleSystem::wave(|_| 1.0), &u.coeffs, &mesh, 2, 0.0, 0.3, (&a, &b, &c));

    assert!(max_diff(&ours.coeffs, &theirs) > 1e-6);
}
