//! L2 projection of DG data between two overlapping periodic meshes.
//!
//! Destination cells are cut at every source node they straddle; the weak
//! identity is then assembled piece by piece so the discontinuous source
//! is only ever integrated where it is a single polynomial.

use crate::basis::{legendre_all, QuadratureRule};
use crate::error::{EldgError, Result};
use crate::field::{eval_modal, DGField};
use crate::mesh::{CellLayout, Mesh1D};

/// Part of a destination cell covered by a single source cell.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Piece {
    pub src_cell: usize,
    /// Endpoints in the destination's (unwrapped) frame.
    pub lo: f64,
    pub hi: f64,
    /// Source data is evaluated at `x - period_shift * L`.
    pub period_shift: i64,
}

#[derive(Debug, Clone)]
pub struct OverlapDecomposition {
    offsets: Vec<usize>,
    pieces: Vec<Piece>,
    dst_cells: Vec<(f64, f64)>,
    period: f64,
}

impl OverlapDecomposition {
    pub fn n_cells(&self) -> usize {
        self.dst_cells.len()
    }

    /// Pieces of destination cell `j`, ordered left to right.
    pub fn pieces(&self, j: usize) -> &[Piece] {
        &self.pieces[self.offsets[j]..self.offsets[j + 1]]
    }

    pub fn dst_cell(&self, j: usize) -> (f64, f64) {
        self.dst_cells[j]
    }

    pub fn period(&self) -> f64 {
        self.period
    }
}

/// Split every destination cell at the source nodes it straddles.
pub fn overlap_decompose<D: CellLayout + ?Sized>(src: &Mesh1D, dst: &D) -> Result<OverlapDecomposition> {
    let (dlo, dhi) = dst.domain();
    let len = src.length();
    let tol = 1e-12 * len.max(1.0);
    if (dlo - src.domain_lo).abs() > tol || (dhi - src.domain_hi).abs() > tol {
        return Err(EldgError::InvalidArgument(format!(
            "destination domain [{dlo}, {dhi}] differs from source domain [{}, {}]",
            src.domain_lo, src.domain_hi
        )));
    }
    let n_src = src.n_cells();
    let nodes = src.nodes();
    let n_dst = dst.n_cells();
    let mut offsets = Vec::with_capacity(n_dst + 1);
    let mut pieces = Vec::with_capacity(2 * n_dst);
    let mut dst_cells = Vec::with_capacity(n_dst);
    offsets.push(0);
    for j in 0..n_dst {
        let (a, b) = dst.cell_bounds(j);
        if !(b > a) {
            return Err(EldgError::InvertedElement { cell: j, lo: a, hi: b });
        }
        dst_cells.push((a, b));
        let mut shift = src.period_shift(a);
        let a0 = a - shift as f64 * len;
        let mut c = src.locate(a0);
        // guard against `a0` rounding to the right end of the domain
        if a0 >= nodes[n_src] {
            c = 0;
            shift += 1;
        }
        let mut cur = a;
        loop {
            let cell_hi = nodes[c + 1] + shift as f64 * len;
            let end = if cell_hi < b { cell_hi } else { b };
            if end > cur {
                pieces.push(Piece {
                    src_cell: c,
                    lo: cur,
                    hi: end,
                    period_shift: shift,
                });
                cur = end;
            }
            if end >= b {
                break;
            }
            c += 1;
            if c == n_src {
                c = 0;
                shift += 1;
            }
        }
        offsets.push(pieces.len());
    }
    Ok(OverlapDecomposition {
        offsets,
        pieces,
        dst_cells,
        period: len,
    })
}

/// Modal data on the cells of an arbitrary layout (e.g. a traced mesh).
#[derive(Debug, Clone)]
pub struct ProjectedField {
    pub degree: usize,
    pub n_components: usize,
    pub cells: Vec<(f64, f64)>,
    pub coeffs: Vec<f64>,
}

impl ProjectedField {
    #[inline]
    pub fn cell_coeffs(&self, cell: usize, comp: usize) -> &[f64] {
        let nm = self.degree + 1;
        let i = (cell * self.n_components + comp) * nm;
        &self.coeffs[i..i + nm]
    }

    #[inline]
    pub fn eval_ref(&self, cell: usize, comp: usize, xi: f64) -> f64 {
        eval_modal(self.cell_coeffs(cell, comp), xi)
    }

    /// Total integral per component.
    pub fn total_mass(&self) -> Vec<f64> {
        let mut m = vec![0.0; self.n_components];
        for (j, (lo, hi)) in self.cells.iter().enumerate() {
            for (c, mc) in m.iter_mut().enumerate() {
                *mc += (hi - lo) * self.cell_coeffs(j, c)[0];
            }
        }
        m
    }

    /// Reinterpret as a background field; the cells must coincide with `mesh`.
    pub fn into_field(self, mesh: std::sync::Arc<Mesh1D>) -> Result<DGField> {
        if mesh.n_cells() != self.cells.len() {
            return Err(EldgError::InvalidArgument("cell count mismatch".into()));
        }
        DGField::from_coeffs(mesh, self.degree, self.n_components, self.coeffs)
    }
}

/// Project `field` onto the destination cells of `decomposition` with the
/// default quadrature for the field's degree.
pub fn l2_project(field: &DGField, decomposition: &OverlapDecomposition) -> Result<ProjectedField> {
    let rule = QuadratureRule::for_degree(field.degree);
    l2_project_with(field, decomposition, &rule)
}

pub fn l2_project_with(
    field: &DGField,
    decomposition: &OverlapDecomposition,
    rule: &QuadratureRule,
) -> Result<ProjectedField> {
    let nm = field.degree + 1;
    let nc = field.n_components;
    if rule.len() < nm {
        return Err(EldgError::InvalidArgument(
            "quadrature too coarse for the projection".into(),
        ));
    }
    let mut coeffs = vec![0.0; decomposition.n_cells() * nc * nm];
    let mut p_dst = vec![0.0; nm];
    let mut p_src = vec![0.0; nm];
    let mesh = &field.mesh;
    let period = decomposition.period();
    for j in 0..decomposition.n_cells() {
        let (a, b) = decomposition.dst_cell(j);
        let w = b - a;
        let out = &mut coeffs[j * nc * nm..(j + 1) * nc * nm];
        for piece in decomposition.pieces(j) {
            let (slo, shi) = mesh.cell(piece.src_cell);
            let offset = piece.period_shift as f64 * period;
            let half = 0.5 * (piece.hi - piece.lo);
            let mid = 0.5 * (piece.hi + piece.lo);
            for (xq, wq) in rule.nodes.iter().zip(&rule.weights) {
                let x = mid + half * xq;
                legendre_all(2.0 * (x - a) / w - 1.0, &mut p_dst);
                legendre_all(2.0 * (x - offset - slo) / (shi - slo) - 1.0, &mut p_src);
                let weight = wq * half;
                for c in 0..nc {
                    let src = field.cell_coeffs(piece.src_cell, c);
                    let u: f64 = src.iter().zip(&p_src).map(|(s, p)| s * p).sum();
                    let uw = u * weight;
                    for m in 0..nm {
                        out[c * nm + m] += uw * p_dst[m];
                    }
                }
            }
        }
        for c in 0..nc {
            for m in 0..nm {
                out[c * nm + m] *= (2 * m + 1) as f64 / w;
            }
        }
    }
    Ok(ProjectedField {
        degree: field.degree,
        n_components: nc,
        cells: decomposition.dst_cells.clone(),
        coeffs,
    })
}
