//! Legendre modal basis on the reference cell `[-1, 1]`, Gauss-Legendre
//! quadrature, and the transported test functions living on dynamic elements.

use crate::error::{EldgError, Result};
use crate::mesh::DynamicElement;

/// Legendre polynomial `P_m(xi)` by the three-term recurrence.
#[inline]
pub fn legendre(m: usize, xi: f64) -> f64 {
    match m {
        0 => 1.0,
        1 => xi,
        _ => {
            let (mut p0, mut p1) = (1.0, xi);
            for n in 1..m {
                let nf = n as f64;
                let p2 = ((2.0 * nf + 1.0) * xi * p1 - nf * p0) / (nf + 1.0);
                p0 = p1;
                p1 = p2;
            }
            p1
        }
    }
}

/// Values `P_0(xi) ..= P_k(xi)` written into `out`.
#[inline]
pub fn legendre_all(xi: f64, out: &mut [f64]) {
    if out.is_empty() {
        return;
    }
    out[0] = 1.0;
    if out.len() > 1 {
        out[1] = xi;
    }
    for n in 1..out.len().saturating_sub(1) {
        let nf = n as f64;
        out[n + 1] = ((2.0 * nf + 1.0) * xi * out[n] - nf * out[n - 1]) / (nf + 1.0);
    }
}

/// Derivatives `P'_0(xi) ..= P'_k(xi)` written into `out`.
///
/// Uses `P'_{n+1} = P'_{n-1} + (2n + 1) P_n`, valid on the closed interval.
#[inline]
pub fn legendre_deriv_all(xi: f64, out: &mut [f64]) {
    let len = out.len();
    if len == 0 {
        return;
    }
    let mut p = [0.0; 16];
    let vals = &mut p[..len.min(16)];
    legendre_all(xi, vals);
    out[0] = 0.0;
    if len > 1 {
        out[1] = 1.0;
    }
    for n in 1..len.saturating_sub(1) {
        out[n + 1] = out[n - 1] + (2.0 * n as f64 + 1.0) * vals[n];
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct QuadratureRule {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
}

impl QuadratureRule {
    /// `n`-point Gauss-Legendre rule on `[-1, 1]`.
    pub fn gauss_legendre(n: usize) -> Self {
        assert!(n >= 1, "quadrature needs at least one point");
        let mut nodes = vec![0.0; n];
        let mut weights = vec![0.0; n];
        let nf = n as f64;
        for i in 0..(n + 1) / 2 {
            let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (nf + 0.5)).cos();
            let mut dp = 0.0;
            for _ in 0..100 {
                let (mut p0, mut p1) = (1.0, x);
                for k in 1..n {
                    let kf = k as f64;
                    let p2 = ((2.0 * kf + 1.0) * x * p1 - kf * p0) / (kf + 1.0);
                    p0 = p1;
                    p1 = p2;
                }
                let pn = if n == 1 { x } else { p1 };
                let pnm1 = if n == 1 { 1.0 } else { p0 };
                dp = nf * (x * pn - pnm1) / (x * x - 1.0);
                let dx = pn / dp;
                x -= dx;
                if dx.abs() < 1e-16 {
                    break;
                }
            }
            let w = 2.0 / ((1.0 - x * x) * dp * dp);
            nodes[i] = -x;
            nodes[n - 1 - i] = x;
            weights[i] = w;
            weights[n - 1 - i] = w;
        }
        if n % 2 == 1 {
            nodes[n / 2] = 0.0;
        }
        Self { nodes, weights }
    }

    /// Rule used for every cell and subinterval integral at degree `k`.
    pub fn for_degree(k: usize) -> Self {
        Self::gauss_legendre((k + 3).max(5))
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// Highest polynomial degree integrated exactly.
    pub fn exactness(&self) -> usize {
        2 * self.nodes.len() - 1
    }

    /// Integral of `f` over `[a, b]`.
    pub fn integrate(&self, a: f64, b: f64, mut f: impl FnMut(f64) -> f64) -> f64 {
        let half = 0.5 * (b - a);
        let mid = 0.5 * (a + b);
        self.nodes
            .iter()
            .zip(&self.weights)
            .map(|(x, w)| w * f(mid + half * x))
            .sum::<f64>()
            * half
    }
}

/// Unnormalized Legendre modes `0..=degree` (`P_m(1) = 1`).
#[derive(Debug, Clone, PartialEq)]
pub struct ModalBasis {
    pub degree: usize,
}

impl ModalBasis {
    pub fn new(degree: usize) -> Self {
        Self { degree }
    }

    pub fn n_modes(&self) -> usize {
        self.degree + 1
    }

    /// `∫_{-1}^{1} P_m^2 dξ = 2 / (2m + 1)`.
    pub fn reference_mass(&self, m: usize) -> f64 {
        2.0 / (2.0 * m as f64 + 1.0)
    }

    pub fn eval(&self, mode: usize, xi: f64) -> Result<f64> {
        if mode > self.degree {
            return Err(EldgError::InvalidArgument(format!(
                "mode {mode} exceeds degree {}",
                self.degree
            )));
        }
        Ok(legendre(mode, xi))
    }
}

/// Value of `P_mode(ξ)`; fails on modes above the basis degree.
pub fn basis_eval(basis: &ModalBasis, mode: usize, xi: f64) -> Result<f64> {
    basis.eval(mode, xi)
}

/// Test function `ψ_mode(x, t)` on a dynamic element: the background basis
/// function pulled back along the element's linear map, hence constant along
/// the element's straight trajectories.
pub fn test_function_eval(elem: &DynamicElement, mode: usize, x: f64, t: f64) -> Result<f64> {
    let xi = elem.reference_coord(x, t)?;
    Ok(legendre(mode, xi))
}

/// Spatial derivative of [`test_function_eval`] at fixed `t`.
pub fn test_function_dx(elem: &DynamicElement, mode: usize, x: f64, t: f64) -> Result<f64> {
    let xi = elem.reference_coord(x, t)?;
    let mut d = vec![0.0; mode + 1];
    legendre_deriv_all(xi, &mut d);
    Ok(d[mode] * 2.0 / elem.width_at(t))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mesh::alpha_eval;

    #[test]
    fn legendre_values() {
        let b = ModalBasis::new(3);
        for xi in [-1.0, -0.3, 0.0, 0.7, 1.0] {
            assert_eq!(b.eval(0, xi).unwrap(), 1.0);
            assert_eq!(b.eval(1, xi).unwrap(), xi);
        }
        assert!((b.eval(2, 0.5).unwrap() + 0.125).abs() < 1e-15);
        assert!(b.eval(4, 0.0).is_err());
    }

    #[test]
    fn derivative_table_matches_closed_forms() {
        let mut d = [0.0; 4];
        for xi in [-1.0, -0.2, 0.6, 1.0] {
            legendre_deriv_all(xi, &mut d);
            assert_eq!(d[0], 0.0);
            assert_eq!(d[1], 1.0);
            assert!((d[2] - 3.0 * xi).abs() < 1e-14);
            assert!((d[3] - (7.5 * xi * xi - 1.5)).abs() < 1e-14);
        }
    }

    #[test]
    fn gauss_rules_are_exact() {
        for n in 1..=8 {
            let q = QuadratureRule::gauss_legendre(n);
            assert!((q.weights.iter().sum::<f64>() - 2.0).abs() < 1e-14);
            for p in 0..=(2 * n - 1) {
                let exact = if p % 2 == 1 { 0.0 } else { 2.0 / (p as f64 + 1.0) };
                let got = q.integrate(-1.0, 1.0, |x| x.powi(p as i32));
                assert!((got - exact).abs() <= 1e-13 * exact.abs().max(1.0), "n={n} p={p}");
            }
        }
    }

    #[test]
    fn modes_are_orthogonal() {
        let k = 4;
        let q = QuadratureRule::for_degree(k);
        for m in 0..=k {
            for l in 0..=k {
                let v = q.integrate(-1.0, 1.0, |x| legendre(m, x) * legendre(l, x));
                let expect = if m == l { ModalBasis::new(k).reference_mass(m) } else { 0.0 };
                assert!((v - expect).abs() < 1e-13);
            }
        }
    }

    fn element() -> DynamicElement {
        DynamicElement::new(2, (1.0, 1.5), (0.8, 1.3), 0.0, 0.4).unwrap()
    }

    #[test]
    fn test_function_terminal_and_constant_mode() {
        let e = element();
        for x in [1.0, 1.2, 1.5] {
            let xi = 2.0 * (x - 1.25) / 0.5;
            for m in 0..3 {
                let v = test_function_eval(&e, m, x, 0.4).unwrap();
                assert!((v - legendre(m, xi)).abs() < 1e-14);
            }
        }
        for (x, t) in [(0.7f64, 0.0), (1.0, 0.2), (1.3, 0.4)] {
            let (lo, hi) = e.interval_at(t);
            let x = x.clamp(lo, hi);
            assert_eq!(test_function_eval(&e, 0, x, t).unwrap(), 1.0);
        }
        // upstream midpoint maps to the reference centre
        let mid = 0.5 * (e.upstream_lo + e.upstream_hi);
        assert!(test_function_eval(&e, 1, mid, 0.0).unwrap().abs() < 1e-14);
    }

    #[test]
    fn test_function_derivative() {
        let e = element();
        for t in [0.0, 0.1, 0.4] {
            let (lo, hi) = e.interval_at(t);
            let x = lo + 0.3 * (hi - lo);
            assert_eq!(test_function_dx(&e, 0, x, t).unwrap(), 0.0);
            let d1 = test_function_dx(&e, 1, x, t).unwrap();
            assert!((d1 - 2.0 / (hi - lo)).abs() < 1e-12);
        }
        // central differences at interior points
        let pts = [(0.13, 0.05), (0.41, 0.12), (0.66, 0.2), (0.5, 0.33), (0.87, 0.39)];
        for &(s, t) in &pts {
            let (lo, hi) = e.interval_at(t);
            let w = hi - lo;
            let x = lo + s * w;
            let step = 1e-6 * w;
            for m in 0..4 {
                let fd = (test_function_eval(&e, m, x + step, t).unwrap()
                    - test_function_eval(&e, m, x - step, t).unwrap())
                    / (2.0 * step);
                let an = test_function_dx(&e, m, x, t).unwrap();
                assert!((fd - an).abs() <= 1e-6 * an.abs().max(1.0), "m={m}");
            }
        }
    }

    #[test]
    fn test_functions_are_constant_along_trajectories() {
        let e = element();
        // integrate dx/dt = alpha(x, t) backward from t_end with RK4
        for &x_end in &[1.05, 1.2, 1.37, 1.49] {
            let mut x = x_end;
            let mut t = e.t_end;
            let steps = 400;
            let h = -(e.t_end - e.t_start) / steps as f64;
            let refs: Vec<f64> = (0..4).map(|m| test_function_eval(&e, m, x, t).unwrap()).collect();
            for s in 0..steps {
                let f = |x: f64, t: f64| alpha_eval(&e, x, t).unwrap();
                let k1 = f(x, t);
                let k2 = f(x + 0.5 * h * k1, t + 0.5 * h);
                let k3 = f(x + 0.5 * h * k2, t + 0.5 * h);
                let k4 = f(x + h * k3, t + h);
                x += h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
                t = e.t_end + (s + 1) as f64 * h;
                if s % 100 == 99 {
                    for (m, r) in refs.iter().enumerate() {
                        let v = test_function_eval(&e, m, x, t).unwrap();
                        assert!((v - r).abs() < 1e-11, "m={m} t={t}");
                    }
                }
            }
        }
    }
}
