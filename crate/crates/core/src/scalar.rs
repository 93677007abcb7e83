//! Scalar transport `u_t + (a(x,t) u)_x = 0` as the one-family case of the
//! EL-RK-DG engine.

use std::sync::Arc;

use crate::error::Result;
use crate::field::DGField;
use crate::mesh::{FrameCells, Mesh1D};
use crate::projection::ProjectedField;
use crate::stepper::{ElStepper, SchemeVariant};
use crate::system::{CharSystem, Matrix, SpaceTimeFn, ZERO_MATRIX};
use crate::tableau::ButcherTableau;

/// One-component system with `A = a(x, t)`.
#[derive(Clone)]
pub struct ScalarTransport {
    pub velocity: SpaceTimeFn,
}

impl ScalarTransport {
    pub fn new(velocity: SpaceTimeFn) -> Self {
        Self { velocity }
    }

    pub fn constant(a: f64) -> Self {
        Self::new(Arc::new(move |_, _| a))
    }
}

impl CharSystem for ScalarTransport {
    fn n_components(&self) -> usize {
        1
    }
    fn flux_matrix(&self, x: f64, t: f64) -> Matrix {
        let mut m = ZERO_MATRIX;
        m[0][0] = (self.velocity)(x, t);
        m
    }
    fn eigenvalue(&self, _family: usize, x: f64, t: f64) -> f64 {
        (self.velocity)(x, t)
    }
    fn projector(&self, _family: usize, _x: f64) -> Matrix {
        let mut m = ZERO_MATRIX;
        m[0][0] = 1.0;
        m
    }
    fn projector_dx(&self, _family: usize, _x: f64) -> Matrix {
        ZERO_MATRIX
    }
    fn constant_projectors(&self) -> bool {
        true
    }
}

pub type InitialFn = Arc<dyn Fn(f64) -> f64 + Send + Sync>;

#[derive(Clone)]
pub struct ScalarProblem {
    pub velocity: SpaceTimeFn,
    pub initial: InitialFn,
    pub exact: Option<SpaceTimeFn>,
    pub domain: (f64, f64),
}

impl ScalarProblem {
    pub fn system(&self) -> ScalarTransport {
        ScalarTransport::new(Arc::clone(&self.velocity))
    }

    pub fn initial_field(&self, mesh: Arc<Mesh1D>, degree: usize) -> DGField {
        let f = Arc::clone(&self.initial);
        DGField::project(mesh, degree, 1, &[], move |x, u| u[0] = f(x))
    }
}

/// `d/dt ∫ u ψ_m` on the moving cells of `frame` at time `t`, `[cell][mode]`.
/// `node_velocities` has one entry per background node.
pub fn scalar_rhs(
    field: &ProjectedField,
    frame: &FrameCells,
    mesh: &Arc<Mesh1D>,
    node_velocities: &[f64],
    t: f64,
    problem: &ScalarProblem,
    variant: SchemeVariant,
) -> Result<Vec<f64>> {
    let stepper = ElStepper::new(problem.system(), field.degree, variant);
    let mut res = stepper.system_rhs(
        mesh,
        std::slice::from_ref(frame),
        std::slice::from_ref(field),
        None,
        &[node_velocities.to_vec()],
        t,
    )?;
    Ok(res.remove(0))
}

pub fn step_scalar(
    field: &DGField,
    dt: f64,
    tableau: &ButcherTableau,
    problem: &ScalarProblem,
    variant: SchemeVariant,
) -> Result<DGField> {
    ElStepper::new(problem.system(), field.degree, variant).step(field, dt, tableau)
}
