//! Eulerian-Lagrangian Runge-Kutta discontinuous Galerkin (EL-RK-DG) solvers
//! for linear transport and wave equations on periodic domains.
//!
//! The building blocks are layered:
//!
//! * [`mesh`], [`basis`], [`field`] and [`projection`]: geometry, modal
//!   Legendre data and L2 remapping between overlapping meshes.
//! * [`system`] and [`stepper`]: characteristic systems and the conservative
//!   EL-RK stepper (plus the non-conservative localized variant).
//! * [`scalar`]: scalar transport on top of the same engine.
//! * [`limiter`] and [`siac`]: minmod limiting and B-spline post-processing.
//! * [`splitting`]: 2D wave systems by dimensional splitting.
//! * [`harness`]: problem registry, error norms, studies and CSV output.

pub mod basis;
pub mod stepper;
pub mod error;
pub mod field;
pub mod harness;
pub mod limiter;
pub mod mesh;
pub mod projection;
pub mod scalar;
pub mod siac;
pub mod splitting;
pub mod system;
pub mod tableau;

pub use basis::{ModalBasis, QuadratureRule};
pub use stepper::{el_rk_step, forward_euler_step, ElStepper, NodeVelocity, SchemeVariant, Weighting};
pub use error::{EldgError, Result};
pub use field::DGField;
pub use mesh::{build_uniform_mesh, trace_upstream, DynamicElement, Mesh1D, UpstreamMesh};
pub use projection::{l2_project, overlap_decompose, OverlapDecomposition};
pub use system::{CharSystem, ConstantSystem, LineWaveSystem, WaveSystem};
pub use tableau::{ButcherTableau, TableauTag};
pub use scalar::{step_scalar, ScalarProblem, ScalarTransport};
pub use siac::{siac_filter, SiacKernel};
pub use splitting::{Field2D, Mesh2D, Splitting2D};
