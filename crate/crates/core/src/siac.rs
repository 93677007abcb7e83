//! Symmetric SIAC post-processing: convolution with `2k+1` central B-splines
//! of order `k+1`, scaled by the mesh width.

use nalgebra::{DMatrix, DVector};

use crate::basis::QuadratureRule;
use crate::error::{EldgError, Result};
use crate::field::DGField;

/// Central B-spline of order `n` (degree `n-1`), supported on `[-n/2, n/2]`.
pub fn central_bspline(order: usize, x: f64) -> f64 {
    let n = order as f64;
    let mut fact = 1.0;
    for i in 1..order {
        fact *= i as f64;
    }
    let mut binom = 1.0;
    let mut s = 0.0;
    for i in 0..=order {
        let t = x + 0.5 * n - i as f64;
        if t > 0.0 {
            let p = if order == 1 { 1.0 } else { t.powi(order as i32 - 1) };
            s += if i % 2 == 0 { binom * p } else { -binom * p };
        }
        binom = binom * (order - i) as f64 / (i + 1) as f64;
    }
    (s / fact).max(0.0) * if x.abs() <= 0.5 * n { 1.0 } else { 0.0 }
}

#[derive(Debug, Clone)]
pub struct SiacKernel {
    pub degree: usize,
    /// Coefficients `c_γ` for `γ = -k..=k`.
    pub coeffs: Vec<f64>,
}

impl SiacKernel {
    /// Kernel with `2k+1` B-splines of order `k+1` reproducing polynomials of degree `≤ 2k`.
    pub fn new(degree: usize) -> Result<Self> {
        let k = degree as i64;
        let order = degree + 1;
        let nb = 2 * degree + 1;
        let rule = QuadratureRule::gauss_legendre(degree + 3);
        // moments of the B-spline shifted by gamma, integrated piecewise over unit knots
        let moment = |gamma: f64, p: i32| -> f64 {
            let half = 0.5 * order as f64;
            (0..order)
                .map(|i| {
                    let a = -half + i as f64;
                    rule.integrate(a, a + 1.0, |s| central_bspline(order, s) * (s + gamma).powi(p))
                })
                .sum()
        };
        let mat = DMatrix::from_fn(nb, nb, |m, g| moment((g as i64 - k) as f64, m as i32));
        let mut rhs = DVector::zeros(nb);
        rhs[0] = 1.0;
        let sol = mat
            .lu()
            .solve(&rhs)
            .ok_or_else(|| EldgError::Unsupported("singular SIAC moment system".into()))?;
        Ok(Self {
            degree,
            coeffs: sol.iter().copied().collect(),
        })
    }

    /// Half-width of the support in units of `h`.
    pub fn half_support(&self) -> f64 {
        self.degree as f64 + 0.5 * (self.degree + 1) as f64
    }

    pub fn eval(&self, t: f64) -> f64 {
        let k = self.degree as i64;
        self.coeffs
            .iter()
            .enumerate()
            .map(|(g, c)| c * central_bspline(self.degree + 1, t - (g as i64 - k) as f64))
            .sum()
    }

    /// Breakpoints of the kernel in units of `h`.
    pub fn knots(&self) -> Vec<f64> {
        let s = self.half_support();
        let count = (2.0 * s).round() as usize;
        (0..=count).map(|i| -s + i as f64).collect()
    }
}

/// A DG field together with a SIAC kernel; evaluates the filtered solution pointwise.
#[derive(Debug, Clone)]
pub struct SiacFiltered<'a> {
    field: &'a DGField,
    kernel: SiacKernel,
    h: f64,
    rule: QuadratureRule,
}

pub fn siac_filter(field: &DGField) -> Result<SiacFiltered<'_>> {
    let mesh = &field.mesh;
    if !mesh.is_uniform(1e-10) {
        return Err(EldgError::Unsupported("SIAC filtering needs a uniform mesh".into()));
    }
    if !mesh.periodic {
        return Err(EldgError::Unsupported("SIAC filtering needs a periodic mesh".into()));
    }
    Ok(SiacFiltered {
        field,
        kernel: SiacKernel::new(field.degree)?,
        h: mesh.width(0),
        rule: QuadratureRule::gauss_legendre(field.degree + 3),
    })
}

impl SiacFiltered<'_> {
    pub fn kernel(&self) -> &SiacKernel {
        &self.kernel
    }

    /// `(1/h) ∫ K((x - y)/h) u_h(y) dy` for component `comp`.
    pub fn eval(&self, comp: usize, x: f64) -> f64 {
        let mesh = &self.field.mesh;
        let h = self.h;
        let len = mesh.length();
        let s = self.kernel.half_support();
        let (ylo, yhi) = (x - s * h, x + s * h);
        let mut breaks: Vec<f64> = self.kernel.knots().iter().map(|t| x - t * h).collect();
        let shift_lo = ((ylo - mesh.domain_lo) / len).floor() as i64;
        let shift_hi = ((yhi - mesh.domain_lo) / len).floor() as i64;
        for p in shift_lo..=shift_hi {
            let off = p as f64 * len;
            breaks.extend(mesh.nodes().iter().map(|v| v + off).filter(|&v| v > ylo && v < yhi));
        }
        breaks.sort_by(|a, b| a.total_cmp(b));
        let mut total = 0.0;
        for w in breaks.windows(2) {
            let (a, b) = (w[0], w[1]);
            if b - a <= 1e-14 * h {
                continue;
            }
            let cell = mesh.locate(mesh.wrap(0.5 * (a + b)));
            let (clo, chi) = mesh.cell(cell);
            let shift = mesh.period_shift(0.5 * (a + b)) as f64 * len;
            total += self.rule.integrate(a, b, |y| {
                let xi = 2.0 * (y - shift - clo) / (chi - clo) - 1.0;
                self.kernel.eval((x - y) / h) * self.field.eval_ref(cell, comp, xi.clamp(-1.0, 1.0))
            });
        }
        total / h
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mesh::build_uniform_mesh;
    use std::sync::Arc;

    #[test]
    fn bspline_partition_of_unity() {
        for order in 1..=4 {
            for x in [0.1, 0.37, 0.5, 0.9] {
                let s: f64 = (-6..=6).map(|i| central_bspline(order, x + i as f64)).sum();
                assert!((s - 1.0).abs() < 1e-13, "order {order}");
            }
        }
        assert!((central_bspline(2, 0.0) - 1.0).abs() < 1e-15);
        assert_eq!(central_bspline(2, 1.0), 0.0);
    }

    #[test]
    fn kernel_has_unit_mass_and_symmetry() {
        for k in 1..=3 {
            let ker = SiacKernel::new(k).unwrap();
            let n = ker.coeffs.len();
            for g in 0..n {
                assert!((ker.coeffs[g] - ker.coeffs[n - 1 - g]).abs() < 1e-12);
            }
            let rule = QuadratureRule::gauss_legendre(8);
            let knots = ker.knots();
            let mass: f64 = knots.windows(2).map(|w| rule.integrate(w[0], w[1], |t| ker.eval(t))).sum();
            assert!((mass - 1.0).abs() < 1e-13);
        }
    }

    #[test]
    fn constants_are_reproduced() {
        let mesh = Arc::new(build_uniform_mesh(0.0, 1.0, 12).unwrap());
        let f = DGField::project(mesh, 2, 1, &[], |_, u| u[0] = 2.5);
        let filt = siac_filter(&f).unwrap();
        for x in [0.0, 0.31, 0.999] {
            assert!((filt.eval(0, x) - 2.5).abs() < 1e-12);
        }
    }

    #[test]
    fn nonuniform_mesh_is_rejected() {
        let mesh = Arc::new(crate::mesh::Mesh1D::from_nodes(vec![0.0, 0.3, 1.0], true).unwrap());
        let f = DGField::zeros(mesh, 1, 1);
        assert!(matches!(siac_filter(&f), Err(EldgError::Unsupported(_))));
    }
}
