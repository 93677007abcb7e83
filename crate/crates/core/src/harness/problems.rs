//! Registry of the benchmark problems with exact solutions and sources.

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use crate::error::{EldgError, Result};
use crate::scalar::ScalarTransport;
use crate::splitting::{Constant2D, Field2D, SplitSystem2D, Wave2D};
use crate::system::{CharSystem, ConstantSystem, ScalarFn, SpaceTimeFn, WaveSystem};

pub type VecFn1 = Arc<dyn Fn(f64, &mut [f64]) + Send + Sync>;
pub type ExactFn1 = Arc<dyn Fn(f64, f64, &mut [f64]) + Send + Sync>;
pub type VecFn2 = Arc<dyn Fn(f64, f64, &mut [f64]) + Send + Sync>;
pub type ExactFn2 = Arc<dyn Fn(f64, f64, f64, &mut [f64]) + Send + Sync>;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ProblemId {
    ScalarConst,
    WaveSin,
    WaveGauss,
    WaveStep,
    WaveVariable,
    Wave2dConst,
    Wave2dGauss,
    Wave2dVariable,
}

impl ProblemId {
    pub const ALL: [ProblemId; 8] = [
        Self::ScalarConst,
        Self::WaveSin,
        Self::WaveGauss,
        Self::WaveStep,
        Self::WaveVariable,
        Self::Wave2dConst,
        Self::Wave2dGauss,
        Self::Wave2dVariable,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Self::ScalarConst => "scalar-const",
            Self::WaveSin => "wave-sin",
            Self::WaveGauss => "wave-gauss",
            Self::WaveStep => "wave-step",
            Self::WaveVariable => "wave-variable",
            Self::Wave2dConst => "wave2d-const",
            Self::Wave2dGauss => "wave2d-gauss",
            Self::Wave2dVariable => "wave2d-variable",
        }
    }

    pub fn is_2d(self) -> bool {
        matches!(self, Self::Wave2dConst | Self::Wave2dGauss | Self::Wave2dVariable)
    }

    pub fn default_t_final(self) -> f64 {
        match self {
            Self::WaveStep => 2.85,
            Self::WaveGauss => 50.5,
            Self::Wave2dGauss => 0.5,
            Self::Wave2dVariable => 0.1,
            _ => 1.0,
        }
    }
}

impl fmt::Display for ProblemId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for ProblemId {
    type Err = EldgError;
    fn from_str(s: &str) -> Result<Self> {
        Self::ALL
            .iter()
            .copied()
            .find(|p| p.as_str() == s)
            .ok_or_else(|| EldgError::InvalidArgument(format!("unknown problem '{s}'")))
    }
}

/// Named scheme settings: node-velocity perturbation, eigenvector
/// perturbation and the weighting of the family projectors.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SchemeName {
    Eldg,
    Eldg1,
    Eldg2,
    Eldg3,
    NmcEldg,
    NmcEldg1,
    NmcEldg2,
    NmcEldg3,
    /// All node velocities zero: Eulerian RK-DG.
    Rkdg,
}

impl SchemeName {
    pub const ALL: [SchemeName; 9] = [
        Self::Eldg,
        Self::Eldg1,
        Self::Eldg2,
        Self::Eldg3,
        Self::NmcEldg,
        Self::NmcEldg1,
        Self::NmcEldg2,
        Self::NmcEldg3,
        Self::Rkdg,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Self::Eldg => "eldg",
            Self::Eldg1 => "eldg1",
            Self::Eldg2 => "eldg2",
            Self::Eldg3 => "eldg3",
            Self::NmcEldg => "nmc-eldg",
            Self::NmcEldg1 => "nmc-eldg1",
            Self::NmcEldg2 => "nmc-eldg2",
            Self::NmcEldg3 => "nmc-eldg3",
            Self::Rkdg => "rkdg",
        }
    }

    pub fn perturbs_velocity(self) -> bool {
        matches!(self, Self::Eldg1 | Self::Eldg3 | Self::NmcEldg1 | Self::NmcEldg3)
    }

    pub fn perturbs_eigenvectors(self) -> bool {
        matches!(self, Self::Eldg2 | Self::Eldg3 | Self::NmcEldg2 | Self::NmcEldg3)
    }

    pub fn is_nmc(self) -> bool {
        matches!(self, Self::NmcEldg | Self::NmcEldg1 | Self::NmcEldg2 | Self::NmcEldg3)
    }
}

impl fmt::Display for SchemeName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for SchemeName {
    type Err = EldgError;
    fn from_str(s: &str) -> Result<Self> {
        Self::ALL
            .iter()
            .copied()
            .find(|p| p.as_str() == s)
            .ok_or_else(|| EldgError::InvalidArgument(format!("unknown scheme '{s}'")))
    }
}

/// Smooth periodic perturbation profile `sin(2π (x − lo) / L)` and its derivative.
pub fn perturbation_profile(domain: (f64, f64)) -> (ScalarFn, ScalarFn) {
    let (lo, hi) = domain;
    let k = 2.0 * PI / (hi - lo);
    (
        Arc::new(move |x| (k * (x - lo)).sin()),
        Arc::new(move |x| k * (k * (x - lo)).cos()),
    )
}

#[derive(Clone)]
enum Kind1D {
    Scalar(SpaceTimeFn),
    Wave {
        a: ScalarFn,
        a_dx: ScalarFn,
        source: Option<SpaceTimeFn>,
    },
}

/// A periodic 1D problem.
#[derive(Clone)]
pub struct Problem1D {
    pub id: ProblemId,
    pub domain: (f64, f64),
    pub n_components: usize,
    /// Discontinuities of the initial data (used by the initial projection).
    pub breakpoints: Vec<f64>,
    pub initial: VecFn1,
    pub exact: Option<ExactFn1>,
    /// `max |λ|` over the domain, for the CFL definition.
    pub max_speed: f64,
    kind: Kind1D,
}

impl Problem1D {
    /// The characteristic system with the eigenvector approximation of `scheme`;
    /// `dx` scales the perturbations.
    pub fn system(&self, scheme: SchemeName, dx: f64) -> Result<Box<dyn CharSystem>> {
        match &self.kind {
            Kind1D::Scalar(a) => Ok(Box::new(ScalarTransport::new(Arc::clone(a)))),
            Kind1D::Wave { a, a_dx, source } => {
                let mut sys = WaveSystem::new(Arc::clone(a), Arc::clone(a_dx));
                if let Some(f) = source {
                    sys = sys.with_source(Arc::clone(f));
                }
                if scheme.perturbs_eigenvectors() {
                    let (p, dp) = perturbation_profile(self.domain);
                    let (a1, a2) = (Arc::clone(a), Arc::clone(a_dx));
                    let p1 = Arc::clone(&p);
                    let ap: ScalarFn = Arc::new(move |x| a1(x) + dx * p1(x));
                    let ap_dx: ScalarFn = Arc::new(move |x| a2(x) + dx * dp(x));
                    sys = sys.with_eigen_speed(ap, Some(ap_dx), 1e-3);
                }
                sys.validate(self.domain.0, self.domain.1, 1024)?;
                Ok(Box::new(sys))
            }
        }
    }

    /// Flux matrix and source of the continuous problem (for residual checks).
    pub fn flux_and_source(&self, x: f64, t: f64) -> (Vec<Vec<f64>>, Vec<f64>) {
        match &self.kind {
            Kind1D::Scalar(a) => (vec![vec![a(x, t)]], vec![0.0]),
            Kind1D::Wave { a, source, .. } => {
                let av = a(x);
                let f = source.as_ref().map_or(0.0, |s| s(x, t));
                (vec![vec![0.0, -av * av], vec![-1.0, 0.0]], vec![f, 0.0])
            }
        }
    }
}

fn periodic_gauss(s: f64, period: f64) -> f64 {
    let s = (s + 0.5 * period).rem_euclid(period) - 0.5 * period;
    (-2..=2)
        .map(|p| {
            let d = s - p as f64 * period;
            (-d * d / 0.005).exp()
        })
        .sum()
}

/// `u_tt = u_xx` from characteristic data: `w1 = (−u1+u2)/2` moves right,
/// `w2 = (u1+u2)/2` moves left.
fn unit_wave_exact(u0: VecFn1, domain: (f64, f64)) -> ExactFn1 {
    let (lo, hi) = domain;
    let len = hi - lo;
    let wrap = move |x: f64| lo + (x - lo).rem_euclid(len);
    Arc::new(move |x, t, out| {
        let mut a = [0.0; 2];
        let mut b = [0.0; 2];
        u0(wrap(x - t), &mut a);
        u0(wrap(x + t), &mut b);
        let w1 = 0.5 * (-a[0] + a[1]);
        let w2 = 0.5 * (b[0] + b[1]);
        out[0] = -w1 + w2;
        out[1] = w1 + w2;
    })
}

pub fn problem_1d(id: ProblemId) -> Result<Problem1D> {
    let two_pi = (0.0, 2.0 * PI);
    let unit: ScalarFn = Arc::new(|_| 1.0);
    let zero: ScalarFn = Arc::new(|_| 0.0);
    let p = match id {
        ProblemId::ScalarConst => Problem1D {
            id,
            domain: two_pi,
            n_components: 1,
            breakpoints: vec![],
            initial: Arc::new(|x, u| u[0] = x.sin()),
            exact: Some(Arc::new(|x, t, u| u[0] = (x - t).sin())),
            max_speed: 1.0,
            kind: Kind1D::Scalar(Arc::new(|_, _| 1.0)),
        },
        ProblemId::WaveSin => Problem1D {
            id,
            domain: two_pi,
            n_components: 2,
            breakpoints: vec![],
            initial: Arc::new(|x, u| {
                u[0] = x.cos();
                u[1] = x.cos();
            }),
            exact: Some(Arc::new(|x, t, u| {
                u[0] = (x + t).cos();
                u[1] = (x + t).cos();
            })),
            max_speed: 1.0,
            kind: Kind1D::Wave {
                a: unit,
                a_dx: zero,
                source: None,
            },
        },
        ProblemId::WaveGauss => Problem1D {
            id,
            domain: (-1.0, 1.0),
            n_components: 2,
            breakpoints: vec![],
            initial: Arc::new(|x, u| {
                u[0] = periodic_gauss(x, 2.0);
                u[1] = 0.0;
            }),
            exact: Some(Arc::new(|x, t, u| {
                let (gp, gm) = (periodic_gauss(x + t, 2.0), periodic_gauss(x - t, 2.0));
                u[0] = 0.5 * (gp + gm);
                u[1] = 0.5 * (gp - gm);
            })),
            max_speed: 1.0,
            kind: Kind1D::Wave {
                a: unit,
                a_dx: zero,
                source: None,
            },
        },
        ProblemId::WaveStep => {
            let u0: VecFn1 = Arc::new(|x, u| {
                u[0] = if (0.95 * PI..=1.05 * PI).contains(&x) { 1.0 } else { 0.5 };
                u[1] = 1.0;
            });
            Problem1D {
                id,
                domain: two_pi,
                n_components: 2,
                breakpoints: vec![0.95 * PI, 1.05 * PI],
                initial: Arc::clone(&u0),
                exact: Some(unit_wave_exact(u0, two_pi)),
                max_speed: 1.0,
                kind: Kind1D::Wave {
                    a: unit,
                    a_dx: zero,
                    source: None,
                },
            }
        }
        ProblemId::WaveVariable => {
            let source: SpaceTimeFn = Arc::new(|x, t| {
                let s = (x - 2.0 * t).sin();
                let c = (x - 2.0 * t).cos();
                let a = 2.0 + x.sin();
                -4.0 * s + s * a * a - 2.0 * a * x.cos() * c
            });
            Problem1D {
                id,
                domain: two_pi,
                n_components: 2,
                breakpoints: vec![],
                initial: Arc::new(|x, u| {
                    u[0] = -2.0 * x.cos();
                    u[1] = x.cos();
                }),
                exact: Some(Arc::new(|x, t, u| {
                    u[0] = -2.0 * (x - 2.0 * t).cos();
                    u[1] = (x - 2.0 * t).cos();
                })),
                max_speed: 3.0,
                kind: Kind1D::Wave {
                    a: Arc::new(|x| 2.0 + x.sin()),
                    a_dx: Arc::new(|x| x.cos()),
                    source: Some(source),
                },
            }
        }
        _ => return Err(EldgError::InvalidArgument(format!("{id} is not a 1D problem"))),
    };
    Ok(p)
}

/// 2D systems used by the registry.
#[derive(Clone)]
pub enum System2D {
    Constant(Constant2D),
    Wave(Wave2D),
}

impl SplitSystem2D for System2D {
    type Line = Box<dyn CharSystem>;
    fn n_components(&self) -> usize {
        match self {
            Self::Constant(s) => s.n_components(),
            Self::Wave(s) => s.n_components(),
        }
    }
    fn x_line(&self, y: f64) -> Box<dyn CharSystem> {
        match self {
            Self::Constant(s) => Box::new(s.x_line(y)),
            Self::Wave(s) => Box::new(s.x_line(y)),
        }
    }
    fn y_line(&self, x: f64) -> Box<dyn CharSystem> {
        match self {
            Self::Constant(s) => Box::new(s.y_line(x)),
            Self::Wave(s) => Box::new(s.y_line(x)),
        }
    }
}

#[derive(Clone)]
pub struct Problem2D {
    pub id: ProblemId,
    pub domain_x: (f64, f64),
    pub domain_y: (f64, f64),
    pub n_components: usize,
    pub initial: VecFn2,
    pub exact: Option<ExactFn2>,
    /// Maximum eigenvalue magnitudes `(a, b)` of the x and y matrices.
    pub max_speeds: (f64, f64),
    pub system: System2D,
}

impl Problem2D {
    pub fn initial_field(&self, mesh: crate::splitting::Mesh2D) -> Field2D {
        let f = Arc::clone(&self.initial);
        Field2D::from_fn(mesh, self.n_components, move |x, y, u| f(x, y, u))
    }

    /// `(A, B)` of the continuous problem at `(x, y)`.
    pub fn matrices(&self, x: f64, y: f64) -> (Vec<Vec<f64>>, Vec<Vec<f64>>) {
        let n = self.n_components;
        let ax = self.system.x_line(y).flux_matrix(x, 0.0);
        let by = self.system.y_line(x).flux_matrix(y, 0.0);
        let cut = |m: [[f64; 3]; 3]| (0..n).map(|r| m[r][..n].to_vec()).collect::<Vec<_>>();
        (cut(ax), cut(by))
    }
}

pub fn problem_2d(id: ProblemId) -> Result<Problem2D> {
    let two_pi = (0.0, 2.0 * PI);
    let p = match id {
        ProblemId::Wave2dConst => {
            let s2 = 2f64.sqrt();
            let x = ConstantSystem::new(
                &[vec![-1.0, 0.0], vec![0.0, 1.0]],
                &[-1.0, 1.0],
                &[vec![1.0, 0.0], vec![0.0, 1.0]],
            )?;
            let y = ConstantSystem::new(
                &[vec![0.0, -1.0], vec![-1.0, 0.0]],
                &[1.0, -1.0],
                &[vec![1.0, 1.0], vec![-1.0, 1.0]],
            )?;
            let exact: ExactFn2 = Arc::new(move |x, y, t, u| {
                let sp = (x + y + s2 * t).sin();
                let cm = (x + y - s2 * t).cos();
                let c = 1.0 / (2.0 * s2);
                u[0] = c * sp - c * cm;
                u[1] = (s2 - 1.0) * c * sp + (s2 + 1.0) * c * cm;
            });
            let e0 = Arc::clone(&exact);
            Problem2D {
                id,
                domain_x: two_pi,
                domain_y: two_pi,
                n_components: 2,
                initial: Arc::new(move |x, y, u| e0(x, y, 0.0, u)),
                exact: Some(exact),
                max_speeds: (1.0, 1.0),
                system: System2D::Constant(Constant2D { x, y }),
            }
        }
        ProblemId::Wave2dGauss => Problem2D {
            id,
            domain_x: (-1.0, 1.0),
            domain_y: (-1.0, 1.0),
            n_components: 3,
            initial: Arc::new(|x, y, u| {
                u[0] = periodic_gauss(x, 2.0) * periodic_gauss(y, 2.0);
                u[1] = 0.0;
                u[2] = 0.0;
            }),
            exact: None,
            max_speeds: (1.0, 1.0),
            system: System2D::Wave(Wave2D::constant(1.0, 1.0)),
        },
        ProblemId::Wave2dVariable => {
            let a: Arc<dyn Fn(f64, f64) -> f64 + Send + Sync> = Arc::new(|x, y| 1.0 + 0.5 * (x + y).sin());
            let a_dx: Arc<dyn Fn(f64, f64) -> f64 + Send + Sync> = Arc::new(|x, y| 0.5 * (x + y).cos());
            let b: Arc<dyn Fn(f64, f64) -> f64 + Send + Sync> = Arc::new(|x, y| {
                let a = 1.0 + 0.5 * (x + y).sin();
                (4.0 - a * a).sqrt()
            });
            let b_dy: Arc<dyn Fn(f64, f64) -> f64 + Send + Sync> = Arc::new(|x, y| {
                let a = 1.0 + 0.5 * (x + y).sin();
                -a * 0.5 * (x + y).cos() / (4.0 - a * a).sqrt()
            });
            let exact: ExactFn2 = Arc::new(|x, y, t, u| {
                let c = (x + y + 2.0 * t).cos();
                u[0] = 2.0 * c;
                u[1] = c;
                u[2] = c;
            });
            let e0 = Arc::clone(&exact);
            Problem2D {
                id,
                domain_x: two_pi,
                domain_y: two_pi,
                n_components: 3,
                initial: Arc::new(move |x, y, u| e0(x, y, 0.0, u)),
                exact: Some(exact),
                max_speeds: (1.5, 3.75f64.sqrt()),
                system: System2D::Wave(Wave2D { a, a_dx, b, b_dy }),
            }
        }
        _ => return Err(EldgError::InvalidArgument(format!("{id} is not a 2D problem"))),
    };
    Ok(p)
}
