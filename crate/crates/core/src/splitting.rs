//! 2D linear hyperbolic systems `U_t + (A U)_x + (B U)_y = 0` by dimensional
//! splitting. The solution is stored as point values on the `(k+1)²`
//! tensor-product Gauss nodes of every cell. Each sweep advances the 1D
//! problems along all node lines of one direction with an EL-RK step.

use std::sync::Arc;

use rayon::prelude::*;

use crate::basis::{legendre_all, QuadratureRule};
use crate::error::{EldgError, Result};
use crate::field::DGField;
use crate::mesh::Mesh1D;
use crate::stepper::{ElStepper, SchemeVariant};
use crate::system::{CharSystem, ConstantSystem, LineWaveSystem, ScalarFn};
use crate::tableau::ButcherTableau;

/// A 2D system that can be restricted to x-lines and y-lines.
pub trait SplitSystem2D: Send + Sync {
    type Line: CharSystem;
    fn n_components(&self) -> usize;
    /// 1D system `U_t + (A U)_x = 0` along the line at height `y`.
    fn x_line(&self, y: f64) -> Self::Line;
    /// 1D system `U_t + (B U)_y = 0` along the line at abscissa `x`.
    fn y_line(&self, x: f64) -> Self::Line;
}

pub type PlaneFn = Arc<dyn Fn(f64, f64) -> f64 + Send + Sync>;

/// `u_tt = (a² u_x)_x + (b² u_y)_y` in `U = (u_t, u_x, u_y)`.
#[derive(Clone)]
pub struct Wave2D {
    pub a: PlaneFn,
    pub a_dx: PlaneFn,
    pub b: PlaneFn,
    pub b_dy: PlaneFn,
}

impl Wave2D {
    pub fn constant(a: f64, b: f64) -> Self {
        Self {
            a: Arc::new(move |_, _| a),
            a_dx: Arc::new(|_, _| 0.0),
            b: Arc::new(move |_, _| b),
            b_dy: Arc::new(|_, _| 0.0),
        }
    }
}

impl SplitSystem2D for Wave2D {
    type Line = LineWaveSystem;
    fn n_components(&self) -> usize {
        3
    }
    fn x_line(&self, y: f64) -> LineWaveSystem {
        let (a, d) = (Arc::clone(&self.a), Arc::clone(&self.a_dx));
        let speed: ScalarFn = Arc::new(move |x| a(x, y));
        let speed_dx: ScalarFn = Arc::new(move |x| d(x, y));
        LineWaveSystem::new(speed, speed_dx, 1)
    }
    fn y_line(&self, x: f64) -> LineWaveSystem {
        let (b, d) = (Arc::clone(&self.b), Arc::clone(&self.b_dy));
        let speed: ScalarFn = Arc::new(move |y| b(x, y));
        let speed_dx: ScalarFn = Arc::new(move |y| d(x, y));
        LineWaveSystem::new(speed, speed_dx, 2)
    }
}

/// Constant matrices `A` and `B`, each with its own eigen-decomposition.
#[derive(Debug, Clone)]
pub struct Constant2D {
    pub x: ConstantSystem,
    pub y: ConstantSystem,
}

impl SplitSystem2D for Constant2D {
    type Line = ConstantSystem;
    fn n_components(&self) -> usize {
        self.x.n_components()
    }
    fn x_line(&self, _y: f64) -> ConstantSystem {
        self.x.clone()
    }
    fn y_line(&self, _x: f64) -> ConstantSystem {
        self.y.clone()
    }
}

/// Tensor-product mesh with `(k+1)` Gauss nodes per cell and direction.
#[derive(Debug, Clone)]
pub struct Mesh2D {
    pub x: Arc<Mesh1D>,
    pub y: Arc<Mesh1D>,
    pub degree: usize,
    /// Gauss nodes and weights on `[-1, 1]`.
    pub gauss: QuadratureRule,
}

impl Mesh2D {
    pub fn new(x: Arc<Mesh1D>, y: Arc<Mesh1D>, degree: usize) -> Self {
        Self {
            x,
            y,
            degree,
            gauss: QuadratureRule::gauss_legendre(degree + 1),
        }
    }

    pub fn n_cols(&self) -> usize {
        self.x.n_cells() * (self.degree + 1)
    }

    pub fn n_rows(&self) -> usize {
        self.y.n_cells() * (self.degree + 1)
    }

    /// Physical coordinate of global node `g` along `mesh`.
    fn node_coord(&self, mesh: &Mesh1D, g: usize) -> f64 {
        let np = self.degree + 1;
        let (lo, hi) = mesh.cell(g / np);
        lo + 0.5 * (self.gauss.nodes[g % np] + 1.0) * (hi - lo)
    }

    pub fn x_node(&self, gx: usize) -> f64 {
        self.node_coord(&self.x, gx)
    }

    pub fn y_node(&self, gy: usize) -> f64 {
        self.node_coord(&self.y, gy)
    }
}

/// Nodal `Q^k` data, laid out `[(row · n_cols + col) · n + comp]`.
#[derive(Debug, Clone)]
pub struct Field2D {
    pub mesh: Mesh2D,
    pub n_components: usize,
    pub data: Vec<f64>,
    pub time: f64,
}

impl Field2D {
    /// Point values of `f` at every Gauss node.
    pub fn from_fn(mesh: Mesh2D, n_components: usize, f: impl Fn(f64, f64, &mut [f64])) -> Self {
        let (nr, nc) = (mesh.n_rows(), mesh.n_cols());
        let mut data = vec![0.0; nr * nc * n_components];
        for gy in 0..nr {
            let y = mesh.y_node(gy);
            for gx in 0..nc {
                let x = mesh.x_node(gx);
                let i = (gy * nc + gx) * n_components;
                f(x, y, &mut data[i..i + n_components]);
            }
        }
        Self {
            mesh,
            n_components,
            data,
            time: 0.0,
        }
    }

    #[inline]
    pub fn value(&self, gy: usize, gx: usize, comp: usize) -> f64 {
        self.data[(gy * self.mesh.n_cols() + gx) * self.n_components + comp]
    }

    /// Integral of each component over the domain.
    pub fn total_mass(&self) -> Vec<f64> {
        let np = self.mesh.degree + 1;
        let w = &self.mesh.gauss.weights;
        let nc = self.mesh.n_cols();
        let mut m = vec![0.0; self.n_components];
        for gy in 0..self.mesh.n_rows() {
            let hy = self.mesh.y.width(gy / np);
            let wy = w[gy % np] * 0.5 * hy;
            for gx in 0..nc {
                let hx = self.mesh.x.width(gx / np);
                let wx = w[gx % np] * 0.5 * hx;
                for (c, mc) in m.iter_mut().enumerate() {
                    *mc += wx * wy * self.data[(gy * nc + gx) * self.n_components + c];
                }
            }
        }
        m
    }

    /// Tensor Legendre coefficients `[comp][my][mx]` of cell `(cx, cy)`.
    pub fn cell_modes(&self, cx: usize, cy: usize) -> Vec<f64> {
        let np = self.mesh.degree + 1;
        let t = NodalTransform::new(self.mesh.degree);
        let n = self.n_components;
        let mut out = vec![0.0; n * np * np];
        for c in 0..n {
            for my in 0..np {
                for mx in 0..np {
                    let mut s = 0.0;
                    for qy in 0..np {
                        for qx in 0..np {
                            let v = self.value(cy * np + qy, cx * np + qx, c);
                            s += t.to_modal[my * np + qy] * t.to_modal[mx * np + qx] * v;
                        }
                    }
                    out[(c * np + my) * np + mx] = s;
                }
            }
        }
        out
    }

    pub fn is_finite(&self) -> bool {
        self.data.iter().all(|v| v.is_finite())
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().fold(0.0, |m, v| m.max(v.abs()))
    }
}

/// Maps between `k+1` Gauss point values and Legendre coefficients on one cell.
#[derive(Debug, Clone)]
pub struct NodalTransform {
    np: usize,
    /// `to_modal[m · np + q] = (2m+1)/2 · w_q P_m(ξ_q)`.
    pub to_modal: Vec<f64>,
    /// `to_nodal[q · np + m] = P_m(ξ_q)`.
    pub to_nodal: Vec<f64>,
}

impl NodalTransform {
    pub fn new(degree: usize) -> Self {
        let np = degree + 1;
        let g = QuadratureRule::gauss_legendre(np);
        let mut to_modal = vec![0.0; np * np];
        let mut to_nodal = vec![0.0; np * np];
        let mut p = vec![0.0; np];
        for q in 0..np {
            legendre_all(g.nodes[q], &mut p);
            for m in 0..np {
                to_nodal[q * np + m] = p[m];
                to_modal[m * np + q] = 0.5 * (2 * m + 1) as f64 * g.weights[q] * p[m];
            }
        }
        Self { np, to_modal, to_nodal }
    }

    pub fn modal(&self, values: &[f64], out: &mut [f64]) {
        for m in 0..self.np {
            out[m] = (0..self.np).map(|q| self.to_modal[m * self.np + q] * values[q]).sum();
        }
    }

    pub fn nodal(&self, coeffs: &[f64], out: &mut [f64]) {
        for q in 0..self.np {
            out[q] = (0..self.np).map(|m| self.to_nodal[q * self.np + m] * coeffs[m]).sum();
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Axis {
    X,
    Y,
}

/// Triple-jump weights `(γ1, γ2, γ3)` composing Strang steps into a fourth order method.
pub fn triple_jump_weights() -> (f64, f64, f64) {
    let c = 2f64.powf(1.0 / 3.0);
    let g1 = 1.0 / (2.0 - c);
    (g1, -c / (2.0 - c), g1)
}

/// Dimensional-splitting driver.
pub struct Splitting2D<S: SplitSystem2D> {
    pub sys: S,
    pub tableau: ButcherTableau,
    pub variant: SchemeVariant,
}

impl<S: SplitSystem2D> Splitting2D<S> {
    pub fn new(sys: S, tableau: ButcherTableau, variant: SchemeVariant) -> Self {
        Self { sys, tableau, variant }
    }

    /// Advance every line along `axis` by `dt`.
    pub fn sweep(&self, state: &Field2D, dt: f64, axis: Axis) -> Result<Field2D> {
        if state.n_components != self.sys.n_components() {
            return Err(EldgError::InvalidArgument("component count mismatch".into()));
        }
        let mesh = &state.mesh;
        let k = mesh.degree;
        let np = k + 1;
        let n = state.n_components;
        let (n_lines, line_mesh) = match axis {
            Axis::X => (mesh.n_rows(), Arc::clone(&mesh.x)),
            Axis::Y => (mesh.n_cols(), Arc::clone(&mesh.y)),
        };
        let ncols = mesh.n_cols();
        let ncell = line_mesh.n_cells();
        let transform = NodalTransform::new(k);
        let idx = |line: usize, g: usize| -> usize {
            match axis {
                Axis::X => (line * ncols + g) * n,
                Axis::Y => (g * ncols + line) * n,
            }
        };

        let lines: Vec<Result<Vec<f64>>> = (0..n_lines)
            .into_par_iter()
            .map(|line| {
                let mut coeffs = vec![0.0; ncell * n * np];
                let mut vals = vec![0.0; np];
                for cell in 0..ncell {
                    for c in 0..n {
                        for q in 0..np {
                            vals[q] = state.data[idx(line, cell * np + q) + c];
                        }
                        let o = (cell * n + c) * np;
                        transform.modal(&vals, &mut coeffs[o..o + np]);
                    }
                }
                let mut u = DGField::from_coeffs(Arc::clone(&line_mesh), k, n, coeffs)?;
                u.time = state.time;
                let sys = match axis {
                    Axis::X => self.sys.x_line(mesh.y_node(line)),
                    Axis::Y => self.sys.y_line(mesh.x_node(line)),
                };
                let stepper = ElStepper::new(sys, k, self.variant.clone());
                let v = stepper.step(&u, dt, &self.tableau)?;
                let mut out = vec![0.0; ncell * n * np];
                let mut nodal = vec![0.0; np];
                for cell in 0..ncell {
                    for c in 0..n {
                        transform.nodal(v.cell_coeffs(cell, c), &mut nodal);
                        for q in 0..np {
                            out[(cell * np + q) * n + c] = nodal[q];
                        }
                    }
                }
                Ok(out)
            })
            .collect();

        let mut next = state.clone();
        for (line, res) in lines.into_iter().enumerate() {
            let vals = res?;
            for g in 0..ncell * np {
                let i = idx(line, g);
                next.data[i..i + n].copy_from_slice(&vals[g * n..(g + 1) * n]);
            }
        }
        Ok(next)
    }

    pub fn sweep_x(&self, state: &Field2D, dt: f64) -> Result<Field2D> {
        self.sweep(state, dt, Axis::X)
    }

    pub fn sweep_y(&self, state: &Field2D, dt: f64) -> Result<Field2D> {
        self.sweep(state, dt, Axis::Y)
    }

    /// `X(dt/2) Y(dt) X(dt/2)`.
    pub fn strang_step(&self, state: &Field2D, dt: f64) -> Result<Field2D> {
        let t0 = state.time;
        let s = self.sweep_x(state, 0.5 * dt)?;
        let mut s = self.sweep_y(&Field2D { time: t0, ..s }, dt)?;
        s.time = t0;
        let mut s = self.sweep_x(&s, 0.5 * dt)?;
        s.time = t0 + dt;
        Ok(s)
    }

    /// Triple-jump composition of three Strang steps.
    pub fn fourth_order_step(&self, state: &Field2D, dt: f64) -> Result<Field2D> {
        let (g1, g2, g3) = triple_jump_weights();
        let t0 = state.time;
        let s = self.strang_step(state, g1 * dt)?;
        let s = self.strang_step(&s, g2 * dt)?;
        let mut s = self.strang_step(&s, g3 * dt)?;
        s.time = t0 + dt;
        Ok(s)
    }
}
