//! JSON and plain-text renderings of computed results. Cell and face lists
//! are emitted in a canonical order so output is byte-stable.

use std::fmt::Write;

use serde_json::{json, Value};

use tropvar::bounds::BoundReport;
use tropvar::exactgeom::RadVal;
use tropvar::prevariety::{DualFace, PrevarietyComplex};
use tropvar::topology::{BettiVector, ComponentModel};
use tropvar::tropical::TropSystem;

use crate::document::{integer_json, polyhedron_json, rational_json, system_to_json};

/// A command's result: the JSON value, a human-readable rendering, and
/// whether every check it ran passed.
#[derive(Clone, Debug)]
pub struct Output {
    pub json: Value,
    pub text: String,
    pub ok: bool,
}

impl Output {
    pub fn new(json: Value, text: String) -> Self {
        Output { json, text, ok: true }
    }
}

pub fn system(s: &TropSystem) -> Output {
    let mut text = format!("n = {}\n", s.nvars());
    for p in s.polys() {
        writeln!(text, "{p}").unwrap();
    }
    Output::new(system_to_json(s), text)
}

pub fn betti(b: &BettiVector) -> Output {
    Output::new(json!(b.as_slice()), format!("{b}\n"))
}

pub fn cells(c: &PrevarietyComplex) -> Output {
    let cells: Vec<Value> = c
        .cells
        .iter()
        .enumerate()
        .map(|(i, cell)| {
            let mut v = json!({
                "pattern": cell.pattern.rows,
                "dim": cell.dim,
                "bounded": cell.bounded,
                "lineality": cell.lineality_dim,
                "component": c.component_of[i],
                "witness": cell.witness.iter().map(rational_json).collect::<Vec<_>>(),
            });
            let h = polyhedron_json(&cell.closure);
            v["eq"] = h["eq"].clone();
            v["ineq"] = h["ineq"].clone();
            v
        })
        .collect();
    let mut text = String::new();
    for (i, cell) in c.cells.iter().enumerate() {
        writeln!(
            text,
            "#{i} dim {} {} {} {}",
            cell.dim,
            if cell.bounded { "bounded" } else { "unbounded" },
            cell.pattern,
            cell.closure
        )
        .unwrap();
    }
    let json = json!({
        "n": c.nvars,
        "count": c.len(),
        "cells": cells,
        "incidence": c.incidence,
    });
    Output::new(json, text)
}

pub fn dual(faces: &[(DualFace, Option<usize>)]) -> Output {
    let json: Vec<Value> = faces
        .iter()
        .map(|(f, cell)| {
            json!({
                "parts": f.parts,
                "part_dims": f.part_dims,
                "dim": f.dim,
                "tropical": f.tropical,
                "cell": cell,
            })
        })
        .collect();
    let mut text = String::new();
    for (f, cell) in faces {
        let parts: Vec<String> = f.parts.iter().map(|p| format!("{p:?}")).collect();
        write!(text, "dim {} parts {}", f.dim, parts.join(" + ")).unwrap();
        match cell {
            Some(i) => writeln!(text, " -> cell #{i}").unwrap(),
            None => text.push('\n'),
        }
    }
    Output::new(Value::Array(json), text)
}

pub fn components(models: &[ComponentModel]) -> Output {
    let json: Vec<Value> = models
        .iter()
        .map(|m| {
            json!({
                "cells": m.cells,
                "lineality": m.lineality_dim,
                "retract_cells": m.retract.len(),
                "simplices": m.triangulation.simplices.len(),
                "betti": m.betti.as_slice(),
            })
        })
        .collect();
    let mut text = String::new();
    for (i, m) in models.iter().enumerate() {
        writeln!(
            text,
            "component {i}: cells {:?}, lineality {}, betti {}",
            m.cells, m.lineality_dim, m.betti
        )
        .unwrap();
    }
    Output::new(Value::Array(json), text)
}

fn radval_json(v: &RadVal) -> Value {
    json!({"coeff": rational_json(v.coeff()), "radicand": integer_json(v.radicand())})
}

/// The bound report as an ordered JSON object; the caller may append keys.
pub fn bounds_json(r: &BoundReport) -> Value {
    let sq = r.dense_bound_sq();
    json!({
        "phi": r.phi,
        "betti": r.betti.as_slice(),
        "dense_bound_sq": sq.as_ref().map(|q| json!([integer_json(q.numer()), integer_json(q.denom())])),
        "dense_bound_approx": r.dense.bound.as_ref().map(RadVal::to_f64),
        "dense_r": r.dense.r,
        "dense_volume": radval_json(&r.dense.volume),
        "degree_bound": r.degree_bound.as_ref().map(integer_json),
        "sparse_bound": integer_json(&r.sparse.value),
        "sparse_essentialized": r.sparse.essentialized,
        "checks": {
            "betti_le_phi": r.betti_le_phi,
            "phi_le_dense": r.phi_le_dense,
            "phi_le_sparse": r.phi_le_sparse,
            "betti_le_degree": r.betti_le_degree,
        },
    })
}

pub fn bounds_text(r: &BoundReport) -> String {
    let verdict = |v: Option<bool>| match v {
        Some(true) => "ok",
        Some(false) => "VIOLATED",
        None => "n/a",
    };
    let mut t = String::new();
    writeln!(t, "phi            {}", r.phi).unwrap();
    writeln!(t, "betti          {}", r.betti).unwrap();
    match &r.dense.bound {
        Some(b) => writeln!(t, "dense bound    {b} (~{:.4}, r = {})", b.to_f64(), r.dense.r).unwrap(),
        None => writeln!(t, "dense bound    degenerate (r = 0)").unwrap(),
    }
    match &r.degree_bound {
        Some(d) => writeln!(t, "degree bound   {d}").unwrap(),
        None => writeln!(t, "degree bound   n/a (Laurent)").unwrap(),
    }
    let ess = if r.sparse.essentialized { " (essentialized)" } else { "" };
    writeln!(t, "sparse bound   {}{ess}", r.sparse.value).unwrap();
    writeln!(t, "b <= phi       {}", verdict(Some(r.betti_le_phi))).unwrap();
    writeln!(t, "phi <= dense   {}", verdict(r.phi_le_dense)).unwrap();
    writeln!(t, "phi <= sparse  {}", verdict(Some(r.phi_le_sparse))).unwrap();
    writeln!(t, "b <= degree    {}", verdict(r.betti_le_degree)).unwrap();
    t
}

pub fn bounds(r: &BoundReport) -> Output {
    Output::new(bounds_json(r), bounds_text(r))
}
