//! Linear hyperbolic systems `U_t + (A(x,t) U)_x = F` together with the
//! approximate eigen-structure used to split them into characteristic families.
//!
//! The scheme never needs `R_p` and `R_p^{-1}` separately, only the family
//! projectors `P_i(x) = r_p^{(i)}(x) l_p^{(i)}(x)`: row `r` of `P_i` is the
//! weight `r^p_{ri} l_p^{(i)}` applied to `U` for solution row `r`. A
//! consistent pair satisfies `Σ_i P_i(x) = I` everywhere.

use std::sync::Arc;

use nalgebra::DMatrix;

use crate::error::{EldgError, Result};

/// Systems have at most three components (the 2D wave system split by direction).
pub const MAX_COMPONENTS: usize = 3;

pub type Vector = [f64; MAX_COMPONENTS];
pub type Matrix = [[f64; MAX_COMPONENTS]; MAX_COMPONENTS];

pub const ZERO_MATRIX: Matrix = [[0.0; MAX_COMPONENTS]; MAX_COMPONENTS];

pub type ScalarFn = Arc<dyn Fn(f64) -> f64 + Send + Sync>;
pub type SpaceTimeFn = Arc<dyn Fn(f64, f64) -> f64 + Send + Sync>;

/// Fourth-order central difference from samples at `x-2h, x-h, x+h, x+2h`.
#[inline]
pub fn fd4(m2: f64, m1: f64, p1: f64, p2: f64, h: f64) -> f64 {
    (m2 - 8.0 * m1 + 8.0 * p1 - p2) / (12.0 * h)
}

#[inline]
pub fn mat_vec(m: &Matrix, v: &Vector, n: usize) -> Vector {
    let mut out = [0.0; MAX_COMPONENTS];
    for r in 0..n {
        let mut s = 0.0;
        for c in 0..n {
            s += m[r][c] * v[c];
        }
        out[r] = s;
    }
    out
}

#[inline]
pub fn mat_mul(a: &Matrix, b: &Matrix, n: usize) -> Matrix {
    let mut out = ZERO_MATRIX;
    for r in 0..n {
        for c in 0..n {
            out[r][c] = (0..n).map(|k| a[r][k] * b[k][c]).sum();
        }
    }
    out
}

pub trait CharSystem: Send + Sync {
    fn n_components(&self) -> usize;

    /// Coefficient matrix `A(x, t)`.
    fn flux_matrix(&self, x: f64, t: f64) -> Matrix;

    /// Eigenvalue `λ^{(family)}(x, t)` of `A`.
    fn eigenvalue(&self, family: usize, x: f64, t: f64) -> f64;

    /// Family projector `r_p^{(i)} l_p^{(i)}` of the consistent pair.
    fn projector(&self, family: usize, x: f64) -> Matrix;

    /// Step used by the default finite-difference [`CharSystem::projector_dx`].
    fn fd_step(&self) -> f64 {
        1e-3
    }

    /// `d/dx` of [`CharSystem::projector`]; fourth-order central differences
    /// unless overridden. Round-off noise here breaks the cancellation between
    /// families, so the step should stay well above `sqrt(eps)`.
    fn projector_dx(&self, family: usize, x: f64) -> Matrix {
        let h = self.fd_step();
        let n = self.n_components();
        let p: Vec<Matrix> = [-2.0, -1.0, 1.0, 2.0].iter().map(|s| self.projector(family, x + s * h)).collect();
        let mut out = ZERO_MATRIX;
        for r in 0..n {
            for c in 0..n {
                out[r][c] = fd4(p[0][r][c], p[1][r][c], p[2][r][c], p[3][r][c], h);
            }
        }
        out
    }

    /// True when every projector is independent of `x` (no correction term).
    fn constant_projectors(&self) -> bool {
        false
    }

    /// Right-hand side `F(x, t)`, if any.
    fn source(&self, _x: f64, _t: f64) -> Option<Vector> {
        None
    }

    fn has_source(&self) -> bool {
        false
    }
}

macro_rules! forward_char_system {
    ($($ty:ty),*) => {$(
impl<S: CharSystem + ?Sized> CharSystem for $ty {
    fn n_components(&self) -> usize {
        (**self).n_components()
    }
    fn flux_matrix(&self, x: f64, t: f64) -> Matrix {
        (**self).flux_matrix(x, t)
    }
    fn eigenvalue(&self, family: usize, x: f64, t: f64) -> f64 {
        (**self).eigenvalue(family, x, t)
    }
    fn projector(&self, family: usize, x: f64) -> Matrix {
        (**self).projector(family, x)
    }
    fn fd_step(&self) -> f64 {
        (**self).fd_step()
    }
    fn projector_dx(&self, family: usize, x: f64) -> Matrix {
        (**self).projector_dx(family, x)
    }
    fn constant_projectors(&self) -> bool {
        (**self).constant_projectors()
    }
    fn source(&self, x: f64, t: f64) -> Option<Vector> {
        (**self).source(x, t)
    }
    fn has_source(&self) -> bool {
        (**self).has_source()
    }
}
    )*};
}

forward_char_system!(&S, Box<S>, std::sync::Arc<S>);

/// Residual `max |Σ_i P_i(x) - I|` at `x`.
pub fn pair_residual<S: CharSystem + ?Sized>(sys: &S, x: f64) -> f64 {
    let n = sys.n_components();
    let mut sum = ZERO_MATRIX;
    for i in 0..n {
        let p = sys.projector(i, x);
        for r in 0..n {
            for c in 0..n {
                sum[r][c] += p[r][c];
            }
        }
    }
    let mut err: f64 = 0.0;
    for r in 0..n {
        for c in 0..n {
            let id = if r == c { 1.0 } else { 0.0 };
            err = err.max((sum[r][c] - id).abs());
        }
    }
    err
}

/// The 1D wave equation `u_tt = (a² u_x)_x + f` as a first-order system in
/// `U = (u_t, u_x)`: `A = [[0, -a²], [-1, 0]]`, `F = (f, 0)`.
///
/// Eigenvalues are `±a`. The eigenvectors are built from a separate
/// continuous speed `a_p`, which defaults to `a`.
#[derive(Clone)]
pub struct WaveSystem {
    a: ScalarFn,
    a_p: ScalarFn,
    a_p_dx: Option<ScalarFn>,
    source: Option<SpaceTimeFn>,
    fd_step: f64,
}

impl std::fmt::Debug for WaveSystem {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("WaveSystem")
            .field("analytic_a_p_dx", &self.a_p_dx.is_some())
            .field("has_source", &self.source.is_some())
            .finish()
    }
}

impl WaveSystem {
    /// Wave system with speed `a` and its analytic derivative `a_dx`; the
    /// eigenvectors use `a` itself.
    pub fn new(a: ScalarFn, a_dx: ScalarFn) -> Self {
        Self {
            a: a.clone(),
            a_p: a,
            a_p_dx: Some(a_dx),
            source: None,
            fd_step: 1e-3,
        }
    }

    pub fn constant(speed: f64) -> Self {
        Self::new(Arc::new(move |_| speed), Arc::new(|_| 0.0))
    }

    pub fn with_source(mut self, f: SpaceTimeFn) -> Self {
        self.source = Some(f);
        self
    }

    /// Replace the eigenvector speed. Without `a_p_dx` the projector
    /// derivative falls back to central differences with step `fd_step`.
    pub fn with_eigen_speed(mut self, a_p: ScalarFn, a_p_dx: Option<ScalarFn>, fd_step: f64) -> Self {
        self.a_p = a_p;
        self.a_p_dx = a_p_dx;
        self.fd_step = fd_step;
        self
    }

    pub fn speed(&self, x: f64) -> f64 {
        (self.a)(x)
    }

    pub fn eigen_speed(&self, x: f64) -> f64 {
        (self.a_p)(x)
    }

    /// Check that `a` and `a_p` stay positive on `samples` points of `[lo, hi]`.
    pub fn validate(&self, lo: f64, hi: f64, samples: usize) -> Result<()> {
        for s in 0..=samples {
            let x = lo + (hi - lo) * s as f64 / samples.max(1) as f64;
            let a = (self.a)(x);
            let ap = (self.a_p)(x);
            if !(a > 0.0) || !(ap > 0.0) || !a.is_finite() || !ap.is_finite() {
                return Err(EldgError::SingularDecomposition { x });
            }
        }
        Ok(())
    }

    /// `(R_p(x), R_p^{-1}(x))` as 2×2 row-major arrays.
    pub fn eigen_pair(&self, x: f64) -> ([[f64; 2]; 2], [[f64; 2]; 2]) {
        let ap = (self.a_p)(x);
        (
            [[-ap, ap], [1.0, 1.0]],
            [[-0.5 / ap, 0.5], [0.5 / ap, 0.5]],
        )
    }
}

/// Wave system from a positive speed function; fails if `a` vanishes on the
/// sampled domain (the left eigenvectors contain `1 / (2a)`).
pub fn wave_system_from(
    a: ScalarFn,
    a_dx: ScalarFn,
    f: Option<SpaceTimeFn>,
    domain: (f64, f64),
) -> Result<WaveSystem> {
    let mut sys = WaveSystem::new(a, a_dx);
    if let Some(f) = f {
        sys = sys.with_source(f);
    }
    sys.validate(domain.0, domain.1, 512)?;
    Ok(sys)
}

impl CharSystem for WaveSystem {
    fn n_components(&self) -> usize {
        2
    }

    fn flux_matrix(&self, x: f64, _t: f64) -> Matrix {
        let a = (self.a)(x);
        let mut m = ZERO_MATRIX;
        m[0][1] = -a * a;
        m[1][0] = -1.0;
        m
    }

    fn eigenvalue(&self, family: usize, x: f64, _t: f64) -> f64 {
        let a = (self.a)(x);
        if family == 0 {
            a
        } else {
            -a
        }
    }

    fn projector(&self, family: usize, x: f64) -> Matrix {
        let ap = (self.a_p)(x);
        let s = if family == 0 { -1.0 } else { 1.0 };
        let mut m = ZERO_MATRIX;
        m[0][0] = 0.5;
        m[0][1] = s * 0.5 * ap;
        m[1][0] = s * 0.5 / ap;
        m[1][1] = 0.5;
        m
    }

    fn fd_step(&self) -> f64 {
        self.fd_step
    }

    fn projector_dx(&self, family: usize, x: f64) -> Matrix {
        let Some(dx) = &self.a_p_dx else {
            let h = self.fd_step;
            let p: Vec<Matrix> = [-2.0, -1.0, 1.0, 2.0].iter().map(|s| self.projector(family, x + s * h)).collect();
            let mut out = ZERO_MATRIX;
            for (r, c) in [(0, 1), (1, 0)] {
                out[r][c] = fd4(p[0][r][c], p[1][r][c], p[2][r][c], p[3][r][c], h);
            }
            return out;
        };
        let ap = (self.a_p)(x);
        let d = dx(x);
        let s = if family == 0 { -1.0 } else { 1.0 };
        let mut m = ZERO_MATRIX;
        m[0][1] = s * 0.5 * d;
        m[1][0] = -s * 0.5 * d / (ap * ap);
        m
    }

    fn source(&self, x: f64, t: f64) -> Option<Vector> {
        self.source.as_ref().map(|f| [f(x, t), 0.0, 0.0])
    }

    fn has_source(&self) -> bool {
        self.source.is_some()
    }
}

/// One direction of the 2D wave system `u_tt = (c_x² u_x)_x + (c_y² u_y)_y`
/// in `U = (u_t, u_x, u_y)`, frozen on a grid line.
///
/// Along the sweep axis the flux matrix couples component 0 with component
/// `coupled` (1 for x-lines, 2 for y-lines); the remaining component is
/// carried by a stationary third family.
#[derive(Clone)]
pub struct LineWaveSystem {
    speed: ScalarFn,
    speed_dx: ScalarFn,
    coupled: usize,
}

impl LineWaveSystem {
    /// `speed(s)` and its derivative along the line coordinate `s`;
    /// `coupled` is 1 for an x-sweep and 2 for a y-sweep.
    pub fn new(speed: ScalarFn, speed_dx: ScalarFn, coupled: usize) -> Self {
        assert!(coupled == 1 || coupled == 2);
        Self { speed, speed_dx, coupled }
    }

    fn passive(&self) -> usize {
        3 - self.coupled
    }
}

impl CharSystem for LineWaveSystem {
    fn n_components(&self) -> usize {
        3
    }

    fn flux_matrix(&self, x: f64, _t: f64) -> Matrix {
        let c = (self.speed)(x);
        let mut m = ZERO_MATRIX;
        m[0][self.coupled] = -c * c;
        m[self.coupled][0] = -1.0;
        m
    }

    fn eigenvalue(&self, family: usize, x: f64, _t: f64) -> f64 {
        match family {
            0 => (self.speed)(x),
            1 => -(self.speed)(x),
            _ => 0.0,
        }
    }

    fn projector(&self, family: usize, x: f64) -> Matrix {
        let q = self.coupled;
        let mut m = ZERO_MATRIX;
        if family == 2 {
            let p = self.passive();
            m[p][p] = 1.0;
            return m;
        }
        let c = (self.speed)(x);
        let s = if family == 0 { -1.0 } else { 1.0 };
        m[0][0] = 0.5;
        m[0][q] = s * 0.5 * c;
        m[q][0] = s * 0.5 / c;
        m[q][q] = 0.5;
        m
    }

    fn projector_dx(&self, family: usize, x: f64) -> Matrix {
        let mut m = ZERO_MATRIX;
        if family == 2 {
            return m;
        }
        let q = self.coupled;
        let c = (self.speed)(x);
        let d = (self.speed_dx)(x);
        let s = if family == 0 { -1.0 } else { 1.0 };
        m[0][q] = s * 0.5 * d;
        m[q][0] = -s * 0.5 * d / (c * c);
        m
    }
}

/// Constant-coefficient system with a prescribed real eigen-decomposition.
#[derive(Debug, Clone)]
pub struct ConstantSystem {
    n: usize,
    matrix: Matrix,
    eigenvalues: Vector,
    projectors: [Matrix; MAX_COMPONENTS],
}

impl ConstantSystem {
    /// `matrix` is `A`; the columns of `right` are eigenvectors for `eigenvalues`.
    /// Fails if `right` is singular or `A R ≠ R Λ`.
    pub fn new(matrix: &[Vec<f64>], eigenvalues: &[f64], right: &[Vec<f64>]) -> Result<Self> {
        let n = eigenvalues.len();
        if n == 0 || n > MAX_COMPONENTS || matrix.len() != n || right.len() != n {
            return Err(EldgError::InvalidArgument(format!(
                "system size {n} unsupported or inconsistent"
            )));
        }
        let r = DMatrix::from_fn(n, n, |i, j| right[i][j]);
        let a = DMatrix::from_fn(n, n, |i, j| matrix[i][j]);
        let l = r
            .clone()
            .try_inverse()
            .ok_or(EldgError::SingularDecomposition { x: f64::NAN })?;
        let lam = DMatrix::from_diagonal(&nalgebra::DVector::from_column_slice(eigenvalues));
        let resid = (&a * &r - &r * &lam).abs().max();
        if resid > 1e-12 * a.abs().max().max(1.0) {
            return Err(EldgError::InvalidArgument(format!(
                "right eigenvectors do not diagonalize the matrix (residual {resid:e})"
            )));
        }
        let mut projectors = [ZERO_MATRIX; MAX_COMPONENTS];
        for (i, p) in projectors.iter_mut().enumerate().take(n) {
            for row in 0..n {
                for col in 0..n {
                    p[row][col] = r[(row, i)] * l[(i, col)];
                }
            }
        }
        let mut m = ZERO_MATRIX;
        let mut ev = [0.0; MAX_COMPONENTS];
        for i in 0..n {
            ev[i] = eigenvalues[i];
            for j in 0..n {
                m[i][j] = matrix[i][j];
            }
        }
        Ok(Self {
            n,
            matrix: m,
            eigenvalues: ev,
            projectors,
        })
    }
}

impl CharSystem for ConstantSystem {
    fn n_components(&self) -> usize {
        self.n
    }
    fn flux_matrix(&self, _x: f64, _t: f64) -> Matrix {
        self.matrix
    }
    fn eigenvalue(&self, family: usize, _x: f64, _t: f64) -> f64 {
        self.eigenvalues[family]
    }
    fn projector(&self, family: usize, _x: f64) -> Matrix {
        self.projectors[family]
    }
    fn projector_dx(&self, _family: usize, _x: f64) -> Matrix {
        ZERO_MATRIX
    }
    fn constant_projectors(&self) -> bool {
        true
    }
}
