//! OFF export of bounded cells for external viewers. Coordinates are
//! floating point and for display only; unbounded cells are skipped.

use std::fmt::Write;

use num_traits::ToPrimitive;

use tropvar::exactgeom::Rational;
use tropvar::prevariety::PrevarietyComplex;

use crate::error::{input, Result};

fn float(q: &Rational) -> f64 {
    q.to_f64().unwrap_or(f64::NAN)
}

/// Orders the vertices of a planar convex polygon around its centroid.
fn cyclic_order(pts: &[[f64; 3]]) -> Vec<usize> {
    let k = pts.len() as f64;
    let c: Vec<f64> = (0..3).map(|j| pts.iter().map(|p| p[j]).sum::<f64>() / k).collect();
    let d = |p: &[f64; 3]| [p[0] - c[0], p[1] - c[1], p[2] - c[2]];
    let u = d(&pts[0]);
    let cross = |a: [f64; 3], b: [f64; 3]| [a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]];
    let normal = pts
        .iter()
        .map(|p| cross(u, d(p)))
        .max_by(|a, b| a.iter().map(|x| x * x).sum::<f64>().total_cmp(&b.iter().map(|x| x * x).sum()))
        .unwrap_or([0.0; 3]);
    let v = cross(normal, u);
    let dot = |a: [f64; 3], b: [f64; 3]| a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
    let mut order: Vec<usize> = (0..pts.len()).collect();
    order.sort_by(|&i, &j| {
        let angle = |p: &[f64; 3]| dot(d(p), v).atan2(dot(d(p), u));
        angle(&pts[i]).total_cmp(&angle(&pts[j]))
    });
    order
}

pub fn cells_to_off(complex: &PrevarietyComplex) -> Result<String> {
    let n = complex.nvars;
    if !(2..=3).contains(&n) {
        return Err(input(format!("OFF output needs 2 or 3 variables, got {n}")));
    }
    let mut vertices: Vec<[f64; 3]> = Vec::new();
    let mut faces: Vec<Vec<usize>> = Vec::new();
    for cell in complex.cells.iter().filter(|c| c.bounded) {
        let pts: Vec<[f64; 3]> = cell
            .closure
            .vertices()?
            .iter()
            .map(|v| {
                let mut p = [0.0; 3];
                v.iter().enumerate().for_each(|(j, x)| p[j] = float(x));
                p
            })
            .collect();
        let order = if cell.dim == 2 { cyclic_order(&pts) } else { (0..pts.len()).collect() };
        let base = vertices.len();
        faces.push(order.iter().map(|&i| base + i).collect());
        vertices.extend(pts);
    }
    let mut out = format!("OFF\n{} {} 0\n", vertices.len(), faces.len());
    for p in &vertices {
        writeln!(out, "{} {} {}", p[0], p[1], p[2]).expect("string write");
    }
    for f in &faces {
        let idx: Vec<String> = f.iter().map(ToString::to_string).collect();
        writeln!(out, "{} {}", f.len(), idx.join(" ")).expect("string write");
    }
    Ok(out)
}
