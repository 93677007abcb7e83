//! Piecewise-polynomial fields stored as Legendre modal coefficients.

use std::sync::Arc;

use crate::basis::{legendre_all, QuadratureRule};
use crate::error::{EldgError, Result};
use crate::mesh::Mesh1D;

/// Modal coefficients of `n_components` functions in `P^k` on each cell of a
/// background mesh. Layout: `coeffs[(cell * n_components + comp) * (k + 1) + mode]`.
#[derive(Debug, Clone, PartialEq)]
pub struct DGField {
    pub mesh: Arc<Mesh1D>,
    pub degree: usize,
    pub n_components: usize,
    pub coeffs: Vec<f64>,
    pub time: f64,
}

impl DGField {
    pub fn zeros(mesh: Arc<Mesh1D>, degree: usize, n_components: usize) -> Self {
        let len = mesh.n_cells() * n_components * (degree + 1);
        Self {
            mesh,
            degree,
            n_components,
            coeffs: vec![0.0; len],
            time: 0.0,
        }
    }

    pub fn from_coeffs(
        mesh: Arc<Mesh1D>,
        degree: usize,
        n_components: usize,
        coeffs: Vec<f64>,
    ) -> Result<Self> {
        let expect = mesh.n_cells() * n_components * (degree + 1);
        if coeffs.len() != expect {
            return Err(EldgError::InvalidArgument(format!(
                "coefficient array has {} entries, expected {expect}",
                coeffs.len()
            )));
        }
        Ok(Self {
            mesh,
            degree,
            n_components,
            coeffs,
            time: 0.0,
        })
    }

    /// L2 projection of `f(x) -> [u_0, .., u_{n-1}]` onto the DG space.
    ///
    /// Cells are split at `breakpoints` so piecewise-smooth data with known
    /// jump locations is integrated accurately.
    pub fn project<F>(mesh: Arc<Mesh1D>, degree: usize, n_components: usize, breakpoints: &[f64], f: F) -> Self
    where
        F: Fn(f64, &mut [f64]),
    {
        let rule = QuadratureRule::gauss_legendre((degree + 3).max(8));
        let nm = degree + 1;
        let mut field = Self::zeros(mesh, degree, n_components);
        let mut vals = vec![0.0; n_components];
        let mut p = vec![0.0; nm];
        for j in 0..field.mesh.n_cells() {
            let (lo, hi) = field.mesh.cell(j);
            let h = hi - lo;
            let mut cuts: Vec<f64> = vec![lo];
            cuts.extend(breakpoints.iter().copied().filter(|&b| b > lo && b < hi));
            cuts.push(hi);
            cuts.sort_by(|a, b| a.partial_cmp(b).unwrap());
            for seg in cuts.windows(2) {
                let (a, b) = (seg[0], seg[1]);
                let half = 0.5 * (b - a);
                for (xq, wq) in rule.nodes.iter().zip(&rule.weights) {
                    let x = 0.5 * (a + b) + half * xq;
                    f(x, &mut vals);
                    legendre_all(2.0 * (x - lo) / h - 1.0, &mut p);
                    for c in 0..n_components {
                        let base = (j * n_components + c) * nm;
                        for m in 0..nm {
                            field.coeffs[base + m] += wq * half * vals[c] * p[m];
                        }
                    }
                }
            }
            for c in 0..n_components {
                let base = (j * n_components + c) * nm;
                for m in 0..nm {
                    field.coeffs[base + m] *= (2 * m + 1) as f64 / h;
                }
            }
        }
        field
    }

    pub fn n_modes(&self) -> usize {
        self.degree + 1
    }

    pub fn n_cells(&self) -> usize {
        self.mesh.n_cells()
    }

    #[inline]
    pub fn index(&self, cell: usize, comp: usize) -> usize {
        (cell * self.n_components + comp) * (self.degree + 1)
    }

    /// Modal coefficients of one component on one cell.
    #[inline]
    pub fn cell_coeffs(&self, cell: usize, comp: usize) -> &[f64] {
        let i = self.index(cell, comp);
        &self.coeffs[i..i + self.degree + 1]
    }

    #[inline]
    pub fn cell_coeffs_mut(&mut self, cell: usize, comp: usize) -> &mut [f64] {
        let i = self.index(cell, comp);
        let nm = self.degree + 1;
        &mut self.coeffs[i..i + nm]
    }

    /// Value at reference coordinate `xi` of `cell`.
    #[inline]
    pub fn eval_ref(&self, cell: usize, comp: usize, xi: f64) -> f64 {
        eval_modal(self.cell_coeffs(cell, comp), xi)
    }

    /// Value at a physical point; periodic images are wrapped into the domain.
    pub fn eval(&self, comp: usize, x: f64) -> f64 {
        let xw = self.mesh.wrap(x);
        let j = self.mesh.locate(xw);
        let (lo, hi) = self.mesh.cell(j);
        self.eval_ref(j, comp, 2.0 * (xw - lo) / (hi - lo) - 1.0)
    }

    /// Cell average of one component.
    pub fn cell_mean(&self, cell: usize, comp: usize) -> f64 {
        self.coeffs[self.index(cell, comp)]
    }

    /// `Σ_j ∫_{I_j} u dx` for every component, from the mode-0 coefficients.
    pub fn total_mass(&self) -> Vec<f64> {
        let mut mass = vec![0.0; self.n_components];
        for j in 0..self.n_cells() {
            let h = self.mesh.width(j);
            for (c, m) in mass.iter_mut().enumerate() {
                *m += h * self.cell_mean(j, c);
            }
        }
        mass
    }

    /// `Σ_j ∫_{I_j} u^2 dx` per component, exact for the modal representation.
    pub fn l2_norm_sq(&self) -> Vec<f64> {
        let mut out = vec![0.0; self.n_components];
        for j in 0..self.n_cells() {
            let h = self.mesh.width(j);
            for (c, o) in out.iter_mut().enumerate() {
                *o += self
                    .cell_coeffs(j, c)
                    .iter()
                    .enumerate()
                    .map(|(m, a)| a * a * h / (2 * m + 1) as f64)
                    .sum::<f64>();
            }
        }
        out
    }

    /// `self += s * other` on matching layouts.
    pub fn axpy(&mut self, s: f64, other: &DGField) {
        debug_assert_eq!(self.coeffs.len(), other.coeffs.len());
        for (a, b) in self.coeffs.iter_mut().zip(&other.coeffs) {
            *a += s * b;
        }
    }

    pub fn scale(&mut self, s: f64) {
        self.coeffs.iter_mut().for_each(|a| *a *= s);
    }

    pub fn max_abs(&self) -> f64 {
        self.coeffs.iter().fold(0.0, |m, a| m.max(a.abs()))
    }

    pub fn is_finite(&self) -> bool {
        self.coeffs.iter().all(|a| a.is_finite())
    }
}

/// Sum of `coeffs[m] * P_m(xi)`.
#[inline]
pub fn eval_modal(coeffs: &[f64], xi: f64) -> f64 {
    match coeffs.len() {
        0 => 0.0,
        1 => coeffs[0],
        2 => coeffs[0] + coeffs[1] * xi,
        3 => coeffs[0] + coeffs[1] * xi + coeffs[2] * 0.5 * (3.0 * xi * xi - 1.0),
        _ => {
            let (mut p0, mut p1) = (1.0, xi);
            let mut s = coeffs[0] + coeffs[1] * xi;
            for (n, c) in coeffs.iter().enumerate().skip(2) {
                let nf = (n - 1) as f64;
                let p2 = ((2.0 * nf + 1.0) * xi * p1 - nf * p0) / (nf + 1.0);
                s += c * p2;
                p0 = p1;
                p1 = p2;
            }
            s
        }
    }
}
