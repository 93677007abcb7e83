//! Tracing a mesh back along characteristics and remapping a DG field onto
//! the upstream cells by exact L2 projection over the overlaps.
//!
//! Run with `cargo run --release --example remap`.

use std::f64::consts::PI;
use std::sync::Arc;

use eldg::{build_uniform_mesh, l2_project, overlap_decompose, trace_upstream, DGField};

fn main() -> eldg::Result<()> {
    let mesh = Arc::new(build_uniform_mesh(0.0, 2.0 * PI, 12)?);
    let u = DGField::project(Arc::clone(&mesh), 2, 1, &[], |x, v| v[0] = (2.0 * x).sin() + 0.3);
    // Node velocities of a compressive flow; dt spans several cells.
    let nu: Vec<f64> = mesh.nodes().iter().map(|&x| 1.0 + 0.4 * x.cos()).collect();
    let up = trace_upstream(&mesh, &nu, 1.7)?;
    let dec = overlap_decompose(&mesh, &up)?;
    for j in 0..4 {
        let (a, b) = dec.dst_cell(j);
        println!("upstream cell {j}: [{a:.4}, {b:.4}] split into {} pieces", dec.pieces(j).len());
    }
    let projected = l2_project(&u, &dec)?;
    println!("mass before {:.15}", u.total_mass()[0]);
    println!("mass after  {:.15}", projected.total_mass()[0]);
    Ok(())
}
