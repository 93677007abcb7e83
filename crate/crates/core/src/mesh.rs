//! Background meshes, straight-line space-time elements and the piecewise
//! linear node-velocity field carried by them.
//!
//! Every dynamic element ends on its background cell `I_j` at `t_end` and
//! moves linearly in time with the two node velocities of that cell. Traced
//! positions are kept in an unwrapped frame: an element near the periodic seam
//! may stick out of `[domain_lo, domain_hi]`, and consumers shift by whole
//! periods when they need to evaluate data stored on the background mesh.

use std::sync::Arc;

use crate::error::{EldgError, Result};

/// Anything that can be viewed as an ordered list of cells covering a periodic domain.
pub trait CellLayout {
    fn n_cells(&self) -> usize;
    /// Endpoints of cell `j`, possibly outside the fundamental domain.
    fn cell_bounds(&self, j: usize) -> (f64, f64);
    fn domain(&self) -> (f64, f64);
}

#[derive(Debug, Clone, PartialEq)]
pub struct Mesh1D {
    pub domain_lo: f64,
    pub domain_hi: f64,
    nodes: Vec<f64>,
    pub periodic: bool,
}

impl Mesh1D {
    pub fn from_nodes(nodes: Vec<f64>, periodic: bool) -> Result<Self> {
        if nodes.len() < 2 {
            return Err(EldgError::InvalidArgument(
                "a mesh needs at least two nodes".into(),
            ));
        }
        if let Some(w) = nodes.windows(2).position(|w| w[1] <= w[0]) {
            return Err(EldgError::InvalidArgument(format!(
                "mesh nodes must be strictly increasing (cell {w})"
            )));
        }
        Ok(Self {
            domain_lo: nodes[0],
            domain_hi: nodes[nodes.len() - 1],
            nodes,
            periodic,
        })
    }

    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    pub fn n_cells(&self) -> usize {
        self.nodes.len() - 1
    }

    pub fn cell(&self, j: usize) -> (f64, f64) {
        (self.nodes[j], self.nodes[j + 1])
    }

    pub fn width(&self, j: usize) -> f64 {
        self.nodes[j + 1] - self.nodes[j]
    }

    pub fn center(&self, j: usize) -> f64 {
        0.5 * (self.nodes[j] + self.nodes[j + 1])
    }

    /// Largest cell width.
    pub fn max_width(&self) -> f64 {
        (0..self.n_cells()).map(|j| self.width(j)).fold(0.0, f64::max)
    }

    pub fn length(&self) -> f64 {
        self.domain_hi - self.domain_lo
    }

    pub fn is_uniform(&self, rel_tol: f64) -> bool {
        let h = self.length() / self.n_cells() as f64;
        (0..self.n_cells()).all(|j| (self.width(j) - h).abs() <= rel_tol * h)
    }

    /// Number of whole periods separating `x` from the fundamental domain.
    pub fn period_shift(&self, x: f64) -> i64 {
        ((x - self.domain_lo) / self.length()).floor() as i64
    }

    /// Map `x` into `[domain_lo, domain_hi)`.
    pub fn wrap(&self, x: f64) -> f64 {
        let l = self.length();
        let y = x - self.period_shift(x) as f64 * l;
        if y >= self.domain_hi {
            y - l
        } else {
            y
        }
    }

    /// Cell containing the wrapped coordinate `x` (clamped onto the domain).
    pub fn locate(&self, x: f64) -> usize {
        let idx = self.nodes.partition_point(|&n| n <= x);
        idx.saturating_sub(1).min(self.n_cells() - 1)
    }
}

impl CellLayout for Mesh1D {
    fn n_cells(&self) -> usize {
        Mesh1D::n_cells(self)
    }
    fn cell_bounds(&self, j: usize) -> (f64, f64) {
        self.cell(j)
    }
    fn domain(&self) -> (f64, f64) {
        (self.domain_lo, self.domain_hi)
    }
}

/// Uniform periodic partition of `[lo, hi]` into `n` cells.
pub fn build_uniform_mesh(lo: f64, hi: f64, n: usize) -> Result<Mesh1D> {
    if n == 0 {
        return Err(EldgError::InvalidArgument("cell count must be positive".into()));
    }
    if !(hi > lo) || !lo.is_finite() || !hi.is_finite() {
        return Err(EldgError::InvalidArgument(format!(
            "domain [{lo}, {hi}] is empty or not finite"
        )));
    }
    let h = (hi - lo) / n as f64;
    let mut nodes: Vec<f64> = (0..=n).map(|j| lo + j as f64 * h).collect();
    nodes[n] = hi;
    Mesh1D::from_nodes(nodes, true)
}

/// Space-time trapezoid bounded by two straight node trajectories. At `t_end`
/// it coincides with background cell `cell`; at `t_start` it is the traced cell.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DynamicElement {
    pub cell: usize,
    pub nu_left: f64,
    pub nu_right: f64,
    pub t_start: f64,
    pub t_end: f64,
    pub upstream_lo: f64,
    pub upstream_hi: f64,
    /// Background cell endpoints (the interval at `t_end`).
    pub cell_lo: f64,
    pub cell_hi: f64,
    /// Whole periods between `upstream_lo` and the fundamental domain.
    pub period_shift: i64,
}

impl DynamicElement {
    pub fn new(
        cell: usize,
        (cell_lo, cell_hi): (f64, f64),
        (nu_left, nu_right): (f64, f64),
        t_start: f64,
        t_end: f64,
    ) -> Result<Self> {
        let span = t_end - t_start;
        let upstream_lo = cell_lo - span * nu_left;
        let upstream_hi = cell_hi - span * nu_right;
        Self::from_traced(cell, (cell_lo, cell_hi), (nu_left, nu_right), t_start, t_end, (upstream_lo, upstream_hi), 0)
    }

    fn from_traced(
        cell: usize,
        (cell_lo, cell_hi): (f64, f64),
        (nu_left, nu_right): (f64, f64),
        t_start: f64,
        t_end: f64,
        (upstream_lo, upstream_hi): (f64, f64),
        period_shift: i64,
    ) -> Result<Self> {
        if !(upstream_hi > upstream_lo) {
            return Err(EldgError::InvertedElement {
                cell,
                lo: upstream_lo,
                hi: upstream_hi,
            });
        }
        Ok(Self {
            cell,
            nu_left,
            nu_right,
            t_start,
            t_end,
            upstream_lo,
            upstream_hi,
            cell_lo,
            cell_hi,
            period_shift,
        })
    }

    fn time_in_range(&self, t: f64) -> bool {
        let (a, b) = if self.t_start <= self.t_end {
            (self.t_start, self.t_end)
        } else {
            (self.t_end, self.t_start)
        };
        let tol = 1e-12 * (1.0 + a.abs().max(b.abs()));
        t >= a - tol && t <= b + tol
    }

    /// Interval occupied by the element at time `t`.
    pub fn interval_at(&self, t: f64) -> (f64, f64) {
        let s = t - self.t_end;
        (self.cell_lo + s * self.nu_left, self.cell_hi + s * self.nu_right)
    }

    pub fn width_at(&self, t: f64) -> f64 {
        let (lo, hi) = self.interval_at(t);
        hi - lo
    }

    /// Reference coordinate in `[-1, 1]` of `x` within the interval at `t`.
    pub fn reference_coord(&self, x: f64, t: f64) -> Result<f64> {
        let (lo, hi) = self.interval_at(t);
        let slack = 1e-12 * (hi - lo).abs().max(1.0);
        if !self.time_in_range(t) || x < lo - slack || x > hi + slack {
            return Err(EldgError::OutOfRange { x, t, lo, hi });
        }
        Ok(((2.0 * (x - lo) / (hi - lo)) - 1.0).clamp(-1.0, 1.0))
    }
}

/// Velocity field α(x, t) of an element: linear in x between the node
/// velocities along the moving interval.
pub fn alpha_eval(elem: &DynamicElement, x: f64, t: f64) -> Result<f64> {
    let xi = elem.reference_coord(x, t)?;
    Ok(elem.nu_left + 0.5 * (xi + 1.0) * (elem.nu_right - elem.nu_left))
}

/// One dynamic element per background cell, all sharing node trajectories.
#[derive(Debug, Clone)]
pub struct UpstreamMesh {
    pub elements: Vec<DynamicElement>,
    pub source_mesh: Arc<Mesh1D>,
    /// Per-node velocities, `n_cells + 1` entries.
    node_velocities: Vec<f64>,
    pub t_start: f64,
    pub t_end: f64,
}

impl UpstreamMesh {
    /// Trace every background node back from `t_end` to `t_start` along
    /// straight lines with the given node velocities.
    pub fn trace(mesh: &Arc<Mesh1D>, node_velocities: &[f64], t_start: f64, t_end: f64) -> Result<Self> {
        let n = mesh.n_cells();
        if node_velocities.len() != n + 1 {
            return Err(EldgError::InvalidArgument(format!(
                "expected {} node velocities, got {}",
                n + 1,
                node_velocities.len()
            )));
        }
        let mut nu = node_velocities.to_vec();
        if mesh.periodic {
            let scale = nu[0].abs().max(nu[n].abs()).max(1.0);
            if (nu[0] - nu[n]).abs() > 1e-10 * scale {
                return Err(EldgError::InvalidArgument(format!(
                    "periodic mesh needs matching seam velocities ({} vs {})",
                    nu[0], nu[n]
                )));
            }
            nu[n] = nu[0];
        }
        let span = t_end - t_start;
        let nodes = mesh.nodes();
        let traced: Vec<f64> = nodes.iter().zip(&nu).map(|(x, v)| x - span * v).collect();
        let elements = (0..n)
            .map(|j| {
                DynamicElement::from_traced(
                    j,
                    mesh.cell(j),
                    (nu[j], nu[j + 1]),
                    t_start,
                    t_end,
                    (traced[j], traced[j + 1]),
                    mesh.period_shift(traced[j]),
                )
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Self {
            elements,
            source_mesh: Arc::clone(mesh),
            node_velocities: nu,
            t_start,
            t_end,
        })
    }

    pub fn node_velocities(&self) -> &[f64] {
        &self.node_velocities
    }

    /// Snapshot of all elements at time `t`; fails if any element is inverted there.
    pub fn cells_at(&self, t: f64) -> Result<FrameCells> {
        let s = t - self.t_end;
        let nodes: Vec<f64> = self
            .source_mesh
            .nodes()
            .iter()
            .zip(&self.node_velocities)
            .map(|(x, v)| x + s * v)
            .collect();
        if let Some(j) = nodes.windows(2).position(|w| w[1] <= w[0]) {
            return Err(EldgError::InvertedElement {
                cell: j,
                lo: nodes[j],
                hi: nodes[j + 1],
            });
        }
        Ok(FrameCells {
            nodes,
            node_velocities: self.node_velocities.clone(),
            domain: (self.source_mesh.domain_lo, self.source_mesh.domain_hi),
        })
    }
}

impl CellLayout for UpstreamMesh {
    fn n_cells(&self) -> usize {
        self.elements.len()
    }
    fn cell_bounds(&self, j: usize) -> (f64, f64) {
        let e = &self.elements[j];
        (e.upstream_lo, e.upstream_hi)
    }
    fn domain(&self) -> (f64, f64) {
        (self.source_mesh.domain_lo, self.source_mesh.domain_hi)
    }
}

/// Trace `mesh` upstream over a step of length `dt` ending at `t = dt`.
pub fn trace_upstream(mesh: &Arc<Mesh1D>, node_velocities: &[f64], dt: f64) -> Result<UpstreamMesh> {
    if dt < 0.0 || !dt.is_finite() {
        return Err(EldgError::InvalidArgument(format!("time step {dt} must be non-negative")));
    }
    UpstreamMesh::trace(mesh, node_velocities, 0.0, dt)
}

/// Positions of the moving cells of an [`UpstreamMesh`] at one instant.
#[derive(Debug, Clone)]
pub struct FrameCells {
    nodes: Vec<f64>,
    node_velocities: Vec<f64>,
    domain: (f64, f64),
}

impl FrameCells {
    /// Left node velocity and right node velocity of cell `j`.
    pub fn velocities(&self, j: usize) -> (f64, f64) {
        (self.node_velocities[j], self.node_velocities[j + 1])
    }

    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    pub fn node_velocities(&self) -> &[f64] {
        &self.node_velocities
    }
}

impl CellLayout for FrameCells {
    fn n_cells(&self) -> usize {
        self.nodes.len() - 1
    }
    fn cell_bounds(&self, j: usize) -> (f64, f64) {
        (self.nodes[j], self.nodes[j + 1])
    }
    fn domain(&self) -> (f64, f64) {
        self.domain
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn uniform_mesh_nodes() {
        let m = build_uniform_mesh(0.0, 2.0 * PI, 4).unwrap();
        let expect = [0.0, PI / 2.0, PI, 1.5 * PI, 2.0 * PI];
        for (a, b) in m.nodes().iter().zip(expect) {
            assert!((a - b).abs() < 1e-15);
        }
        let m = build_uniform_mesh(-1.0, 1.0, 2).unwrap();
        assert_eq!(m.nodes(), &[-1.0, 0.0, 1.0]);
        assert!(m.periodic);

        let m = build_uniform_mesh(0.0, 2.0 * PI, 160).unwrap();
        assert!((m.width(17) - 2.0 * PI / 160.0).abs() < 1e-14);
    }

    #[test]
    fn uniform_mesh_rejects_bad_input() {
        assert!(matches!(build_uniform_mesh(0.0, 1.0, 0), Err(EldgError::InvalidArgument(_))));
        assert!(matches!(build_uniform_mesh(1.0, 1.0, 3), Err(EldgError::InvalidArgument(_))));
    }

    #[test]
    fn zero_step_is_identity() {
        let m = Arc::new(build_uniform_mesh(0.0, 1.0, 5).unwrap());
        let up = trace_upstream(&m, &[0.3; 6], 0.0).unwrap();
        for e in &up.elements {
            assert_eq!((e.upstream_lo, e.upstream_hi), m.cell(e.cell));
        }
    }

    #[test]
    fn unit_translation_lands_on_left_neighbour() {
        let m = Arc::new(build_uniform_mesh(0.0, 1.0, 8).unwrap());
        let h = 1.0 / 8.0;
        let up = trace_upstream(&m, &[1.0; 9], h).unwrap();
        for e in &up.elements {
            let (lo, hi) = m.cell((e.cell + 7) % 8);
            let shift = if e.cell == 0 { -1.0 } else { 0.0 };
            assert!((e.upstream_lo - (lo + shift)).abs() < 1e-15);
            assert!((e.upstream_hi - (hi + shift)).abs() < 1e-15);
        }
        assert_eq!(up.elements[0].period_shift, -1);
    }

    #[test]
    fn sine_velocity_endpoints() {
        let m = Arc::new(build_uniform_mesh(0.0, 2.0 * PI, 20).unwrap());
        let dt = 0.5;
        let nu: Vec<f64> = m.nodes().iter().map(|x| x.sin()).collect();
        let mut nu = nu;
        nu[20] = nu[0];
        let up = trace_upstream(&m, &nu, dt).unwrap();
        for (j, e) in up.elements.iter().enumerate() {
            let xl = m.nodes()[j];
            let xr = m.nodes()[j + 1];
            let vl = if j == 0 { 0.0 } else { xl.sin() };
            let vr = if j + 1 == 20 { 0.0 } else { xr.sin() };
            assert!((e.upstream_lo - (xl - dt * vl)).abs() < 1e-14);
            assert!((e.upstream_hi - (xr - dt * vr)).abs() < 1e-14);
            assert!(e.upstream_hi > e.upstream_lo);
        }
    }

    #[test]
    fn inversion_is_reported() {
        let m = Arc::new(build_uniform_mesh(0.0, 1.0, 4).unwrap());
        // converging velocities squeeze cell 1 past zero width
        let nu = [0.0, -1.0, 1.0, 0.0, 0.0];
        let err = trace_upstream(&m, &nu, 0.2).unwrap_err();
        assert!(matches!(err, EldgError::InvertedElement { cell: 1, .. }));
    }

    #[test]
    fn seam_velocities_must_match() {
        let m = Arc::new(build_uniform_mesh(0.0, 1.0, 2).unwrap());
        assert!(trace_upstream(&m, &[0.0, 0.0, 1.0], 0.1).is_err());
    }

    #[test]
    fn alpha_is_linear_between_node_velocities() {
        let e = DynamicElement::new(0, (0.0, 1.0), (2.0, 2.0), 0.0, 0.1).unwrap();
        for (x, t) in [(-0.15, 0.0), (0.5, 0.05), (1.0, 0.1)] {
            assert!((alpha_eval(&e, x, t).unwrap() - 2.0).abs() < 1e-15);
        }
        let e = DynamicElement::new(0, (0.0, 1.0), (0.5, 1.5), 0.0, 0.2).unwrap();
        for t in [0.0, 0.07, 0.2] {
            let (lo, hi) = e.interval_at(t);
            assert!((alpha_eval(&e, lo, t).unwrap() - 0.5).abs() < 1e-14);
            assert!((alpha_eval(&e, hi, t).unwrap() - 1.5).abs() < 1e-14);
            assert!((alpha_eval(&e, 0.5 * (lo + hi), t).unwrap() - 1.0).abs() < 1e-14);
        }
        assert!(matches!(alpha_eval(&e, 2.0, 0.1), Err(EldgError::OutOfRange { .. })));
        assert!(matches!(alpha_eval(&e, 0.5, 0.5), Err(EldgError::OutOfRange { .. })));
    }

    #[test]
    fn width_interpolates_linearly_in_time() {
        let e = DynamicElement::new(3, (1.0, 1.4), (0.3, -0.2), 2.0, 2.5).unwrap();
        let w0 = e.upstream_hi - e.upstream_lo;
        let w1 = 0.4;
        for s in [0.0, 0.25, 0.6, 1.0] {
            let t = 2.0 + 0.5 * s;
            let expect = w0 + s * (w1 - w0);
            assert!((e.width_at(t) - expect).abs() < 1e-14);
        }
    }

    #[test]
    fn shared_nodes_match_exactly() {
        let m = Arc::new(build_uniform_mesh(0.0, 2.0 * PI, 13).unwrap());
        let mut nu: Vec<f64> = m.nodes().iter().map(|x| 1.0 + 0.3 * x.cos()).collect();
        nu[13] = nu[0];
        let up = trace_upstream(&m, &nu, 0.37).unwrap();
        for w in up.elements.windows(2) {
            assert_eq!(w[0].upstream_hi, w[1].upstream_lo);
        }
    }

    #[test]
    fn forward_trace_recovers_background() {
        let m = Arc::new(build_uniform_mesh(0.0, 2.0 * PI, 16).unwrap());
        let mut nu: Vec<f64> = m.nodes().iter().map(|x| x.sin()).collect();
        nu[16] = nu[0];
        let dt = 0.3;
        let up = trace_upstream(&m, &nu, dt).unwrap();
        for e in &up.elements {
            let (lo, hi) = m.cell(e.cell);
            assert!(((e.upstream_lo + dt * e.nu_left) - lo).abs() <= 1e-13 * (1.0 + lo.abs()));
            assert!(((e.upstream_hi + dt * e.nu_right) - hi).abs() <= 1e-13 * (1.0 + hi.abs()));
        }
    }

    #[test]
    fn wrap_and_locate() {
        let m = build_uniform_mesh(0.0, 1.0, 4).unwrap();
        assert!((m.wrap(-0.1) - 0.9).abs() < 1e-15);
        assert!((m.wrap(1.3) - 0.3).abs() < 1e-15);
        assert_eq!(m.wrap(1.0), 0.0);
        assert_eq!(m.locate(0.0), 0);
        assert_eq!(m.locate(0.25), 1);
        assert_eq!(m.locate(0.99), 3);
    }
}
