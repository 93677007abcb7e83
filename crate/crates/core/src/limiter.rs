//! Minmod (TVB) slope limiter on the background mesh.

use crate::field::DGField;

/// `minmod(a, b, c)` with the TVB relaxation: `a` is returned untouched when
/// `|a| ≤ threshold`.
pub fn minmod_tvb(a: f64, b: f64, c: f64, threshold: f64) -> f64 {
    if a.abs() <= threshold {
        return a;
    }
    minmod(a, b, c)
}

pub fn minmod(a: f64, b: f64, c: f64) -> f64 {
    if a > 0.0 && b > 0.0 && c > 0.0 {
        a.min(b).min(c)
    } else if a < 0.0 && b < 0.0 && c < 0.0 {
        a.max(b).max(c)
    } else {
        0.0
    }
}

/// Limit every cell and component of a periodic field with TVB constant
/// `m_param` (`0` gives the TVD minmod limiter).
///
/// A cell is left alone unless one of its interface deviations from the mean
/// is modified by minmod against the neighbouring mean differences. A
/// modified cell keeps its mean and a limited linear part; higher modes are
/// dropped.
pub fn tvd_limit(field: &DGField, m_param: f64) -> DGField {
    let mut out = field.clone();
    tvd_limit_in_place(&mut out, m_param);
    out
}

pub fn tvd_limit_in_place(field: &mut DGField, m_param: f64) {
    let n = field.n_cells();
    let nm = field.n_modes();
    if nm < 2 || n < 2 {
        return;
    }
    let nc = field.n_components;
    let means: Vec<f64> = (0..n * nc).map(|i| field.coeffs[i * nm]).collect();
    for j in 0..n {
        let jl = (j + n - 1) % n;
        let jr = (j + 1) % n;
        let h = field.mesh.width(j);
        let threshold = m_param * h * h;
        for c in 0..nc {
            let mean = means[j * nc + c];
            let fwd = means[jr * nc + c] - mean;
            let bwd = mean - means[jl * nc + c];
            let coeffs = field.cell_coeffs(j, c);
            let right: f64 = coeffs[1..].iter().sum();
            let left: f64 = coeffs[1..]
                .iter()
                .enumerate()
                .map(|(m, v)| if m % 2 == 0 { *v } else { -*v })
                .sum();
            let r_mod = minmod_tvb(right, fwd, bwd, threshold);
            let l_mod = minmod_tvb(left, fwd, bwd, threshold);
            if r_mod == right && l_mod == left {
                continue;
            }
            let slope = minmod(coeffs[1], fwd, bwd);
            let cc = field.cell_coeffs_mut(j, c);
            cc[1] = slope;
            for v in cc[2..].iter_mut() {
                *v = 0.0;
            }
        }
    }
}
