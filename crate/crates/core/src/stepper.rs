//! Conservative Eulerian-Lagrangian RK-DG stepping for linear systems.
//!
//! Every characteristic family `i` gets its own space-time partition whose
//! elements end on the background cells. For solution row `r`, family `i`
//! evolves `∫ w_ri U ψ` over its moving cells, with `w_ri = (P_i)_{r·}` the
//! row of the family projector. Summing over families and landing on the
//! background mesh recovers `∫ U ψ`, because the projectors sum to the identity.
//!
//! Intermediate RK solutions always live on the background mesh: stage `l`
//! is produced on auxiliary dynamic domains that reach `I_j` at
//! `t^n + c_l Δt`, and the stage right-hand sides are evaluated on those
//! domains at the earlier stage times.

use std::collections::HashMap;
use std::sync::Arc;

use crate::basis::{legendre_all, legendre_deriv_all, QuadratureRule};
use crate::error::{EldgError, Result};
use crate::field::DGField;
use crate::limiter::tvd_limit_in_place;
use crate::mesh::{CellLayout, FrameCells, Mesh1D, UpstreamMesh};
use crate::projection::{l2_project_with, overlap_decompose, OverlapDecomposition, ProjectedField};
use crate::system::{mat_vec, CharSystem, Matrix, Vector, MAX_COMPONENTS};
use crate::tableau::ButcherTableau;

/// How the family weights `r_p l_p` are evaluated.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Weighting {
    /// Consistent pair evaluated pointwise; mass conservative.
    Consistent,
    /// Constant per element, frozen at the background cell centre; the
    /// localized scheme, which is not conservative.
    Cellwise,
}

pub type VelocityFn = Arc<dyn Fn(usize, f64, f64) -> f64 + Send + Sync>;

/// Choice of node velocities `ν^{(i)}` at the background nodes.
#[derive(Clone)]
pub enum NodeVelocity {
    /// `ν = λ(x, t^{n+1})`.
    Characteristic,
    /// `ν = λ + sign(λ)·amplitude·sin(2π (x − lo) / L)`.
    Perturbed { amplitude: f64 },
    /// `ν = 0`; the scheme reduces to Eulerian RK-DG.
    Eulerian,
    /// `(family, x, t) ↦ ν`.
    Custom(VelocityFn),
}

impl std::fmt::Debug for NodeVelocity {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Self::Characteristic => f.write_str("Characteristic"),
            Self::Perturbed { amplitude } => write!(f, "Perturbed({amplitude})"),
            Self::Eulerian => f.write_str("Eulerian"),
            Self::Custom(_) => f.write_str("Custom"),
        }
    }
}

#[derive(Debug, Clone)]
pub struct SchemeVariant {
    pub weighting: Weighting,
    pub velocity: NodeVelocity,
}

impl SchemeVariant {
    pub fn conservative() -> Self {
        Self {
            weighting: Weighting::Consistent,
            velocity: NodeVelocity::Characteristic,
        }
    }

    pub fn nmc() -> Self {
        Self {
            weighting: Weighting::Cellwise,
            velocity: NodeVelocity::Characteristic,
        }
    }

    pub fn with_velocity(mut self, velocity: NodeVelocity) -> Self {
        self.velocity = velocity;
        self
    }
}

impl Default for SchemeVariant {
    fn default() -> Self {
        Self::conservative()
    }
}

/// Lax-Friedrichs flux of family `i` at a moving interface, all rows at once:
/// `W(x) · ½[(A − νI)(U⁺ + U⁻) − α₁₂ (U⁺ − U⁻)]`.
#[allow(clippy::too_many_arguments)]
pub fn family_flux_rows(
    weight: &Matrix,
    a: &Matrix,
    nu: f64,
    alpha12: f64,
    u_minus: &Vector,
    u_plus: &Vector,
    n: usize,
) -> Vector {
    let g = lf_state(a, nu, alpha12, u_minus, u_plus, n);
    mat_vec(weight, &g, n)
}

fn lf_state(a: &Matrix, nu: f64, alpha12: f64, u_minus: &Vector, u_plus: &Vector, n: usize) -> Vector {
    let mut sum = [0.0; MAX_COMPONENTS];
    for c in 0..n {
        sum[c] = u_plus[c] + u_minus[c];
    }
    let asum = mat_vec(a, &sum, n);
    let mut g = [0.0; MAX_COMPONENTS];
    for r in 0..n {
        g[r] = 0.5 * (asum[r] - nu * sum[r] - alpha12 * (u_plus[r] - u_minus[r]));
    }
    g
}

/// Scalar flux for row `r`, family `i` of `sys` at `(x, t)`; `nu[m]` holds
/// the interface velocity of every family `m` (for the LF speed).
#[allow(clippy::too_many_arguments)]
pub fn family_flux<S: CharSystem + ?Sized>(
    sys: &S,
    u_minus: &[f64],
    u_plus: &[f64],
    x: f64,
    t: f64,
    nu: &[f64],
    row: usize,
    family: usize,
) -> f64 {
    let n = sys.n_components();
    let mut um = [0.0; MAX_COMPONENTS];
    let mut up = [0.0; MAX_COMPONENTS];
    um[..n].copy_from_slice(&u_minus[..n]);
    up[..n].copy_from_slice(&u_plus[..n]);
    let alpha12 = (0..n)
        .map(|m| (sys.eigenvalue(m, x, t) - nu[m]).abs())
        .fold(0.0, f64::max);
    let f = family_flux_rows(&sys.projector(family, x), &sys.flux_matrix(x, t), nu[family], alpha12, &um, &up, n);
    f[row]
}

/// EL-RK-DG stepper for one system on one background mesh.
pub struct ElStepper<S> {
    sys: S,
    degree: usize,
    variant: SchemeVariant,
    limiter: Option<f64>,
    rule: QuadratureRule,
    phi: Vec<f64>,
    dphi: Vec<f64>,
}

impl<S: CharSystem> ElStepper<S> {
    pub fn new(sys: S, degree: usize, variant: SchemeVariant) -> Self {
        let rule = QuadratureRule::for_degree(degree);
        let nm = degree + 1;
        let mut phi = vec![0.0; rule.len() * nm];
        let mut dphi = vec![0.0; rule.len() * nm];
        for (q, &xi) in rule.nodes.iter().enumerate() {
            legendre_all(xi, &mut phi[q * nm..(q + 1) * nm]);
            legendre_deriv_all(xi, &mut dphi[q * nm..(q + 1) * nm]);
        }
        Self {
            sys,
            degree,
            variant,
            limiter: None,
            rule,
            phi,
            dphi,
        }
    }

    /// Apply the TVB minmod limiter with constant `m` after every stage.
    pub fn with_limiter(mut self, m: Option<f64>) -> Self {
        self.limiter = m;
        self
    }

    pub fn system(&self) -> &S {
        &self.sys
    }

    pub fn variant(&self) -> &SchemeVariant {
        &self.variant
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    /// Node velocities per family, `n_cells + 1` entries each, frozen at `t`.
    pub fn node_velocities(&self, mesh: &Mesh1D, t: f64) -> Vec<Vec<f64>> {
        let n_fam = self.sys.n_components();
        let nodes = mesh.nodes();
        let n = mesh.n_cells();
        let lo = mesh.domain_lo;
        let len = mesh.length();
        (0..n_fam)
            .map(|i| {
                let mut v: Vec<f64> = nodes[..n]
                    .iter()
                    .map(|&x| match &self.variant.velocity {
                        NodeVelocity::Characteristic => self.sys.eigenvalue(i, x, t),
                        NodeVelocity::Eulerian => 0.0,
                        NodeVelocity::Perturbed { amplitude } => {
                            let lam = self.sys.eigenvalue(i, x, t);
                            let s = if lam > 0.0 {
                                1.0
                            } else if lam < 0.0 {
                                -1.0
                            } else {
                                0.0
                            };
                            lam + s * amplitude * (2.0 * std::f64::consts::PI * (x - lo) / len).sin()
                        }
                        NodeVelocity::Custom(f) => f(i, x, t),
                    })
                    .collect();
                if mesh.periodic {
                    v.push(v[0]);
                } else {
                    v.push(match &self.variant.velocity {
                        NodeVelocity::Custom(f) => f(i, nodes[n], t),
                        NodeVelocity::Eulerian => 0.0,
                        _ => self.sys.eigenvalue(i, nodes[n], t),
                    });
                }
                v
            })
            .collect()
    }

    fn cellwise_weights(&self, family: usize, mesh: &Mesh1D) -> Option<Vec<Matrix>> {
        match self.variant.weighting {
            Weighting::Consistent => None,
            Weighting::Cellwise => Some(
                (0..mesh.n_cells())
                    .map(|j| self.sys.projector(family, mesh.center(j)))
                    .collect(),
            ),
        }
    }

    #[inline]
    fn weight(&self, family: usize, cellwise: &Option<Vec<Matrix>>, cell: usize, x: f64) -> Matrix {
        match cellwise {
            Some(w) => w[cell],
            None => self.sys.projector(family, x),
        }
    }

    /// Adds `∫_{frame cell j} w_ri U ψ_m` per row and mode, with `U` on the
    /// background mesh integrated piece by piece.
    fn accumulate_initial(
        &self,
        family: usize,
        cellwise: &Option<Vec<Matrix>>,
        dec: &OverlapDecomposition,
        u: &DGField,
        out: &mut [f64],
    ) {
        let n = self.sys.n_components();
        let nm = self.degree + 1;
        let mesh = &u.mesh;
        let period = dec.period();
        let mut p_dst = [0.0; 16];
        let mut p_src = [0.0; 16];
        for j in 0..dec.n_cells() {
            let (a, b) = dec.dst_cell(j);
            let w = b - a;
            let out_j = &mut out[j * n * nm..(j + 1) * n * nm];
            for piece in dec.pieces(j) {
                let (slo, shi) = mesh.cell(piece.src_cell);
                let offset = piece.period_shift as f64 * period;
                let half = 0.5 * (piece.hi - piece.lo);
                let mid = 0.5 * (piece.hi + piece.lo);
                for (xq, wq) in self.rule.nodes.iter().zip(&self.rule.weights) {
                    let x = mid + half * xq;
                    let xs = x - offset;
                    legendre_all(2.0 * (x - a) / w - 1.0, &mut p_dst[..nm]);
                    legendre_all(2.0 * (xs - slo) / (shi - slo) - 1.0, &mut p_src[..nm]);
                    let mut uv = [0.0; MAX_COMPONENTS];
                    for (c, val) in uv.iter_mut().enumerate().take(n) {
                        let cc = u.cell_coeffs(piece.src_cell, c);
                        *val = cc.iter().zip(&p_src[..nm]).map(|(s, p)| s * p).sum();
                    }
                    let wu = mat_vec(&self.weight(family, cellwise, j, xs), &uv, n);
                    let scale = wq * half;
                    for r in 0..n {
                        let v = wu[r] * scale;
                        for m in 0..nm {
                            out_j[r * nm + m] += v * p_dst[m];
                        }
                    }
                }
            }
        }
    }

    /// Adds `scale · L_ri(U, τ)` for family `family` on the cells of `frame`.
    ///
    /// `on_frame` is `U` projected onto the frame (flux and volume terms);
    /// `background`, when given, is `U` on the background mesh and feeds the
    /// correction term piece by piece through `dec`.
    #[allow(clippy::too_many_arguments)]
    fn accumulate_rhs(
        &self,
        family: usize,
        mesh: &Mesh1D,
        frame: &FrameCells,
        dec: Option<&OverlapDecomposition>,
        on_frame: &ProjectedField,
        background: Option<&DGField>,
        tau: f64,
        nu: &[Vec<f64>],
        source_weight: f64,
        scale: f64,
        out: &mut [f64],
    ) {
        let sys = &self.sys;
        let n = sys.n_components();
        let nm = self.degree + 1;
        let nc = frame.n_cells();
        let cellwise = self.cellwise_weights(family, mesh);
        let nodes = frame.nodes();
        let eval_state = |cell: usize, xi: f64| -> Vector {
            let mut v = [0.0; MAX_COMPONENTS];
            for (c, val) in v.iter_mut().enumerate().take(n) {
                *val = on_frame.eval_ref(cell, c, xi);
            }
            v
        };

        // interface fluxes
        for p in 0..nc {
            let xe = mesh.wrap(nodes[p]);
            let jl = if p == 0 { nc - 1 } else { p - 1 };
            let jr = p;
            let um = eval_state(jl, 1.0);
            let up = eval_state(jr, -1.0);
            let a = sys.flux_matrix(xe, tau);
            let alpha12 = (0..n)
                .map(|m| (sys.eigenvalue(m, xe, tau) - nu[m][p]).abs())
                .fold(0.0, f64::max);
            let g = lf_state(&a, nu[family][p], alpha12, &um, &up, n);
            let (fl, fr) = match &cellwise {
                Some(w) => (mat_vec(&w[jl], &g, n), mat_vec(&w[jr], &g, n)),
                None => {
                    let f = mat_vec(&sys.projector(family, xe), &g, n);
                    (f, f)
                }
            };
            for r in 0..n {
                let l = &mut out[(jl * n + r) * nm..(jl * n + r + 1) * nm];
                for v in l.iter_mut() {
                    *v -= scale * fl[r];
                }
                let rr = &mut out[(jr * n + r) * nm..(jr * n + r + 1) * nm];
                let mut sign = 1.0;
                for v in rr.iter_mut() {
                    *v += scale * fr[r] * sign;
                    sign = -sign;
                }
            }
        }

        // volume and source terms
        let has_source = sys.has_source() && source_weight != 0.0;
        for j in 0..nc {
            let (lo, hi) = frame.cell_bounds(j);
            let w = hi - lo;
            let (vl, vr) = frame.velocities(j);
            let out_j = &mut out[j * n * nm..(j + 1) * n * nm];
            for (q, (&xi, &wq)) in self.rule.nodes.iter().zip(&self.rule.weights).enumerate() {
                let phi = &self.phi[q * nm..(q + 1) * nm];
                let dphi = &self.dphi[q * nm..(q + 1) * nm];
                let s01 = 0.5 * (xi + 1.0);
                let xe = mesh.wrap(lo + s01 * w);
                let mut u = [0.0; MAX_COMPONENTS];
                for (c, val) in u.iter_mut().enumerate().take(n) {
                    let cc = on_frame.cell_coeffs(j, c);
                    *val = cc.iter().zip(phi).map(|(s, p)| s * p).sum();
                }
                let alpha = vl + (vr - vl) * s01;
                let au = mat_vec(&sys.flux_matrix(xe, tau), &u, n);
                let mut g = [0.0; MAX_COMPONENTS];
                for r in 0..n {
                    g[r] = au[r] - alpha * u[r];
                }
                let wmat = self.weight(family, &cellwise, j, xe);
                let f = mat_vec(&wmat, &g, n);
                for r in 0..n {
                    let v = scale * wq * f[r];
                    for m in 0..nm {
                        out_j[r * nm + m] += v * dphi[m];
                    }
                }
                if has_source {
                    if let Some(src) = sys.source(xe, tau) {
                        let s = mat_vec(&wmat, &src, n);
                        for r in 0..n {
                            let v = scale * source_weight * wq * 0.5 * w * s[r];
                            for m in 0..nm {
                                out_j[r * nm + m] += v * phi[m];
                            }
                        }
                    }
                }
            }
        }

        // correction term ∫ (w_ri)_x A U ψ
        if cellwise.is_some() || sys.constant_projectors() {
            return;
        }
        match (background, dec) {
            (Some(bg), Some(dec)) => {
                let period = dec.period();
                let mut p_dst = [0.0; 16];
                let mut p_src = [0.0; 16];
                for j in 0..nc {
                    let (a, b) = dec.dst_cell(j);
                    let w = b - a;
                    let out_j = &mut out[j * n * nm..(j + 1) * n * nm];
                    for piece in dec.pieces(j) {
                        let (slo, shi) = mesh.cell(piece.src_cell);
                        let offset = piece.period_shift as f64 * period;
                        let half = 0.5 * (piece.hi - piece.lo);
                        let mid = 0.5 * (piece.hi + piece.lo);
                        for (xq, wq) in self.rule.nodes.iter().zip(&self.rule.weights) {
                            let x = mid + half * xq;
                            let xs = x - offset;
                            legendre_all(2.0 * (x - a) / w - 1.0, &mut p_dst[..nm]);
                            legendre_all(2.0 * (xs - slo) / (shi - slo) - 1.0, &mut p_src[..nm]);
                            let mut u = [0.0; MAX_COMPONENTS];
                            for (c, val) in u.iter_mut().enumerate().take(n) {
                                let cc = bg.cell_coeffs(piece.src_cell, c);
                                *val = cc.iter().zip(&p_src[..nm]).map(|(s, p)| s * p).sum();
                            }
                            let au = mat_vec(&sys.flux_matrix(xs, tau), &u, n);
                            let corr = mat_vec(&sys.projector_dx(family, xs), &au, n);
                            for r in 0..n {
                                let v = scale * wq * half * corr[r];
                                for m in 0..nm {
                                    out_j[r * nm + m] += v * p_dst[m];
                                }
                            }
                        }
                    }
                }
            }
            _ => {
                for j in 0..nc {
                    let (lo, hi) = frame.cell_bounds(j);
                    let w = hi - lo;
                    let out_j = &mut out[j * n * nm..(j + 1) * n * nm];
                    for (q, (&xi, &wq)) in self.rule.nodes.iter().zip(&self.rule.weights).enumerate() {
                        let phi = &self.phi[q * nm..(q + 1) * nm];
                        let xe = mesh.wrap(lo + 0.5 * (xi + 1.0) * w);
                        let mut u = [0.0; MAX_COMPONENTS];
                        for (c, val) in u.iter_mut().enumerate().take(n) {
                            let cc = on_frame.cell_coeffs(j, c);
                            *val = cc.iter().zip(phi).map(|(s, p)| s * p).sum();
                        }
                        let au = mat_vec(&sys.flux_matrix(xe, tau), &u, n);
                        let corr = mat_vec(&sys.projector_dx(family, xe), &au, n);
                        for r in 0..n {
                            let v = scale * wq * 0.5 * w * corr[r];
                            for m in 0..nm {
                                out_j[r * nm + m] += v * phi[m];
                            }
                        }
                    }
                }
            }
        }
    }

    /// Semi-discrete right-hand side: per family, `d/dt ∫ w_ri U ψ_m` on the
    /// family's moving cells at time `t`, laid out `[cell][row][mode]`.
    ///
    /// `fields[i]` is the solution on `frames[i]`. With a background field the
    /// correction term integrates it piece by piece instead.
    pub fn system_rhs(
        &self,
        mesh: &Arc<Mesh1D>,
        frames: &[FrameCells],
        fields: &[ProjectedField],
        background: Option<&DGField>,
        nu: &[Vec<f64>],
        t: f64,
    ) -> Result<Vec<Vec<f64>>> {
        let n = self.sys.n_components();
        if frames.len() != n || fields.len() != n || nu.len() != n {
            return Err(EldgError::InvalidArgument(format!("expected {n} families")));
        }
        let nm = self.degree + 1;
        let mut res = Vec::with_capacity(n);
        for i in 0..n {
            let mut out = vec![0.0; mesh.n_cells() * n * nm];
            let dec = match background {
                Some(_) => Some(overlap_decompose(mesh, &frames[i])?),
                None => None,
            };
            self.accumulate_rhs(i, mesh, &frames[i], dec.as_ref(), &fields[i], background, t, nu, 1.0, 1.0, &mut out);
            res.push(out);
        }
        Ok(res)
    }

    fn check_field(&self, u: &DGField) -> Result<()> {
        if u.degree != self.degree || u.n_components != self.sys.n_components() {
            return Err(EldgError::InvalidArgument(format!(
                "field has degree {} with {} components, stepper expects {} and {}",
                u.degree,
                u.n_components,
                self.degree,
                self.sys.n_components()
            )));
        }
        if !u.mesh.periodic {
            return Err(EldgError::Unsupported("only periodic meshes are supported".into()));
        }
        Ok(())
    }

    /// Background-mesh solution at `t^n + c_end Δt` from `U^n` and the stage
    /// solutions `stages[m]` weighted by `weights[m]`.
    #[allow(clippy::too_many_arguments)]
    fn advance(
        &self,
        u0: &DGField,
        stages: &[DGField],
        weights: &[f64],
        abscissae: &[f64],
        c_end: f64,
        dt: f64,
        nu: &[Vec<f64>],
        init_cache: &mut HashMap<u64, Vec<f64>>,
    ) -> Result<DGField> {
        let mesh = &u0.mesh;
        let n = self.sys.n_components();
        let nm = self.degree + 1;
        let t0 = u0.time;
        let t_end = t0 + c_end * dt;
        let len = mesh.n_cells() * n * nm;

        // group stages that share an abscissa: L is linear in U
        let mut groups: Vec<(f64, DGField, f64)> = Vec::new();
        for (m, &wm) in weights.iter().enumerate() {
            if wm == 0.0 {
                continue;
            }
            let c = abscissae[m];
            if let Some(g) = groups.iter_mut().find(|g| g.0 == c) {
                g.1.axpy(wm, &stages[m]);
                g.2 += wm;
            } else {
                let mut f = stages[m].clone();
                f.scale(wm);
                groups.push((c, f, wm));
            }
        }

        let mut aux = Vec::with_capacity(n);
        for nu_i in nu {
            aux.push(UpstreamMesh::trace(mesh, nu_i, t0, t_end)?);
        }

        let key = c_end.to_bits();
        let mut out = match init_cache.get(&key) {
            Some(v) => v.clone(),
            None => {
                let mut init = vec![0.0; len];
                for (i, up) in aux.iter().enumerate() {
                    let frame = up.cells_at(t0)?;
                    let dec = overlap_decompose(mesh, &frame)?;
                    let cellwise = self.cellwise_weights(i, mesh);
                    self.accumulate_initial(i, &cellwise, &dec, u0, &mut init);
                }
                init_cache.insert(key, init.clone());
                init
            }
        };

        for (c, field, source_weight) in &groups {
            let tau = t0 + c * dt;
            for (i, up) in aux.iter().enumerate() {
                let frame = up.cells_at(tau)?;
                let dec = overlap_decompose(mesh, &frame)?;
                let proj = l2_project_with(field, &dec, &self.rule)?;
                self.accumulate_rhs(i, mesh, &frame, Some(&dec), &proj, Some(field), tau, nu, *source_weight, dt, &mut out);
            }
        }

        for j in 0..mesh.n_cells() {
            let h = mesh.width(j);
            for r in 0..n {
                for m in 0..nm {
                    out[(j * n + r) * nm + m] *= (2 * m + 1) as f64 / h;
                }
            }
        }
        let mut res = DGField::from_coeffs(Arc::clone(mesh), self.degree, n, out)?;
        res.time = t_end;
        if let Some(m) = self.limiter {
            tvd_limit_in_place(&mut res, m);
        }
        Ok(res)
    }

    /// One EL-RK step of size `dt` (negative steps trace downstream).
    pub fn step(&self, u: &DGField, dt: f64, tableau: &ButcherTableau) -> Result<DGField> {
        self.check_field(u)?;
        tableau.validate()?;
        if !dt.is_finite() {
            return Err(EldgError::InvalidArgument(format!("time step {dt} is not finite")));
        }
        if dt == 0.0 {
            return Ok(u.clone());
        }
        let nu = self.node_velocities(&u.mesh, u.time + dt);
        let s = tableau.stages();
        let mut cache = HashMap::new();
        let mut stages = vec![u.clone()];
        for l in 1..s {
            let v = self.advance(u, &stages, &tableau.a[l][..l], &tableau.c[..l], tableau.c[l], dt, &nu, &mut cache)?;
            stages.push(v);
        }
        let mut out = self.advance(u, &stages, &tableau.b, &tableau.c, 1.0, dt, &nu, &mut cache)?;
        out.time = u.time + dt;
        Ok(out)
    }

    pub fn forward_euler_step(&self, u: &DGField, dt: f64) -> Result<DGField> {
        self.step(u, dt, &ButcherTableau::forward_euler())
    }
}

/// One EL-RK step with a freshly built stepper.
pub fn el_rk_step<S: CharSystem>(
    u: &DGField,
    dt: f64,
    tableau: &ButcherTableau,
    sys: S,
    variant: SchemeVariant,
) -> Result<DGField> {
    ElStepper::new(sys, u.degree, variant).step(u, dt, tableau)
}

pub fn forward_euler_step<S: CharSystem>(u: &DGField, dt: f64, sys: S, variant: SchemeVariant) -> Result<DGField> {
    el_rk_step(u, dt, &ButcherTableau::forward_euler(), sys, variant)
}

/// Integral of every component over the domain.
pub fn total_mass(u: &DGField) -> Vec<f64> {
    u.total_mass()
}
