//! Domain-averaged error norms and convergence orders.

use crate::basis::{legendre_all, QuadratureRule};
use crate::error::Result;
use crate::field::DGField;
use crate::siac::siac_filter;
use crate::splitting::Field2D;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ErrorNorms {
    pub l1: f64,
    pub l2: f64,
    pub linf: f64,
}

impl ErrorNorms {
    fn from_sums(l1: f64, l2: f64, linf: f64, measure: f64) -> Self {
        Self {
            l1: l1 / measure,
            l2: (l2 / measure).sqrt(),
            linf,
        }
    }
}

fn cell_quadrature(degree: usize) -> QuadratureRule {
    QuadratureRule::for_degree(degree)
}

/// Per-component norms of `u_h − exact(·, t)`, divided by the domain measure
/// (`L2` is the root of the averaged square).
pub fn error_norms(field: &DGField, exact: &dyn Fn(f64, f64, &mut [f64]), t: f64) -> Vec<ErrorNorms> {
    norms_with(field, exact, t, |j, c, xi, _x| field.eval_ref(j, c, xi))
}

/// As [`error_norms`] for the SIAC-filtered field.
pub fn filtered_error_norms(
    field: &DGField,
    exact: &dyn Fn(f64, f64, &mut [f64]),
    t: f64,
) -> Result<Vec<ErrorNorms>> {
    let filt = siac_filter(field)?;
    Ok(norms_with(field, exact, t, |_j, c, _xi, x| filt.eval(c, x)))
}

fn norms_with(
    field: &DGField,
    exact: &dyn Fn(f64, f64, &mut [f64]),
    t: f64,
    approx: impl Fn(usize, usize, f64, f64) -> f64,
) -> Vec<ErrorNorms> {
    let nc = field.n_components;
    let rule = cell_quadrature(field.degree);
    let mut sums = vec![(0.0, 0.0, 0.0f64); nc];
    let mut ex = vec![0.0; nc];
    for j in 0..field.n_cells() {
        let (a, b) = field.mesh.cell(j);
        let half = 0.5 * (b - a);
        for (xi, w) in rule.nodes.iter().zip(&rule.weights) {
            let x = a + (xi + 1.0) * half;
            exact(x, t, &mut ex);
            for c in 0..nc {
                let e = (approx(j, c, *xi, x) - ex[c]).abs();
                let s = &mut sums[c];
                s.0 += w * half * e;
                s.1 += w * half * e * e;
                s.2 = s.2.max(e);
            }
        }
    }
    let measure = field.mesh.length();
    sums.into_iter().map(|(a, b, c)| ErrorNorms::from_sums(a, b, c, measure)).collect()
}

/// Per-component norms for nodal `Q^k` data, tensor quadrature per cell.
pub fn error_norms_2d(field: &Field2D, exact: &dyn Fn(f64, f64, f64, &mut [f64]), t: f64) -> Vec<ErrorNorms> {
    let mesh = &field.mesh;
    let k = mesh.degree;
    let np = k + 1;
    let nc = field.n_components;
    let rule = cell_quadrature(k);
    let nq = rule.len();
    let mut p = vec![0.0; nq * np];
    for (q, xi) in rule.nodes.iter().enumerate() {
        legendre_all(*xi, &mut p[q * np..(q + 1) * np]);
    }
    let mut sums = vec![(0.0, 0.0, 0.0f64); nc];
    let mut ex = vec![0.0; nc];
    for cy in 0..mesh.y.n_cells() {
        let (ya, yb) = mesh.y.cell(cy);
        let hy = 0.5 * (yb - ya);
        for cx in 0..mesh.x.n_cells() {
            let (xa, xb) = mesh.x.cell(cx);
            let hx = 0.5 * (xb - xa);
            let modes = field.cell_modes(cx, cy);
            for qy in 0..nq {
                let y = ya + (rule.nodes[qy] + 1.0) * hy;
                for qx in 0..nq {
                    let x = xa + (rule.nodes[qx] + 1.0) * hx;
                    let w = rule.weights[qx] * rule.weights[qy] * hx * hy;
                    exact(x, y, t, &mut ex);
                    for c in 0..nc {
                        let mut v = 0.0;
                        for my in 0..np {
                            for mx in 0..np {
                                v += modes[(c * np + my) * np + mx] * p[qy * np + my] * p[qx * np + mx];
                            }
                        }
                        let e = (v - ex[c]).abs();
                        let s = &mut sums[c];
                        s.0 += w * e;
                        s.1 += w * e * e;
                        s.2 = s.2.max(e);
                    }
                }
            }
        }
    }
    let measure = mesh.x.length() * mesh.y.length();
    sums.into_iter().map(|(a, b, c)| ErrorNorms::from_sums(a, b, c, measure)).collect()
}

/// `log(e_coarse / e_fine) / log(n_fine / n_coarse)`, or `None` when either
/// error is at round-off level or not finite.
pub fn convergence_order(e_coarse: f64, e_fine: f64, n_coarse: usize, n_fine: usize) -> Option<f64> {
    let floor = 1e2 * f64::EPSILON;
    if !(e_coarse.is_finite() && e_fine.is_finite()) || e_coarse <= floor || e_fine <= floor {
        return None;
    }
    Some((e_coarse / e_fine).ln() / (n_fine as f64 / n_coarse as f64).ln())
}

/// `∫ |u_c|` per component.
pub fn l1_norms(field: &DGField) -> Vec<f64> {
    let rule = cell_quadrature(field.degree);
    let mut out = vec![0.0; field.n_components];
    for j in 0..field.n_cells() {
        let (a, b) = field.mesh.cell(j);
        for (c, o) in out.iter_mut().enumerate() {
            *o += rule.integrate(a, b, |x| field.eval_ref(j, c, 2.0 * (x - a) / (b - a) - 1.0).abs());
        }
    }
    out
}

/// Largest `|m_c − m0_c| / max(|m0_c|, ‖u0_c‖_1)` over components.
pub fn relative_mass_drift(mass: &[f64], mass0: &[f64], scale: &[f64]) -> f64 {
    mass.iter()
        .zip(mass0)
        .zip(scale)
        .map(|((m, m0), s)| {
            let d = (m - m0).abs();
            let denom = m0.abs().max(*s);
            if denom > 0.0 {
                d / denom
            } else {
                d
            }
        })
        .fold(0.0, f64::max)
}
