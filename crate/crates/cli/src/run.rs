//! Command-line definitions and dispatch.

use std::io::Read;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use rand::rngs::StdRng;
use rand::SeedableRng;
use serde_json::{json, Value};

use tropvar::arrangement::{build_arrangement, enumerate_faces};
use tropvar::bounds::report_from;
use tropvar::corpus::{random_complex, random_system, SystemShape};
use tropvar::oracle;
use tropvar::prevariety::{
    cells_via_arrangement, cells_via_duality, dual_cell, dual_subdivision, face_count,
};
use tropvar::realize::{complex_prevariety, gen_grid_example};
use tropvar::topology::{betti_of_prevariety, component_models};
use tropvar::tropical::TropSystem;

use crate::document::{complex_to_json, parse_complex, parse_system};
use crate::error::{input, CliError, Result};
use crate::off::cells_to_off;
use crate::report::{self, Output};

/// Brute-force cross-checks are skipped above these sizes.
const ORACLE_MAX_HYPERPLANES: usize = 8;
const ORACLE_MAX_PRODUCT: usize = 64;
const ORACLE_MAX_SIMPLICES: usize = 400;

#[derive(Parser, Debug)]
#[command(name = "tropvar", version, about = "Exact cells, homology and face-count bounds of tropical prevarieties")]
pub struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    pub output: Format,
    /// Also run brute-force oracles (`check`).
    #[arg(long, global = true)]
    pub oracle: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Json,
    Pretty,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Cells of the prevariety with tie patterns and closures.
    Cells {
        /// System document; standard input when absent or `-`.
        input: Option<PathBuf>,
        /// Write the bounded cells as an OFF file (2 or 3 variables).
        #[arg(long, value_name = "PATH")]
        emit_off: Option<PathBuf>,
    },
    /// Betti numbers of the prevariety.
    Betti { input: Option<PathBuf> },
    /// Face count, Betti numbers and the three upper bounds.
    Bounds { input: Option<PathBuf> },
    /// Bounds plus cross-method equality; exits 2 unless everything holds.
    Check {
        input: Option<PathBuf>,
        /// Check every `*.json` system in a directory.
        #[arg(long, value_name = "DIR", conflicts_with = "input")]
        corpus: Option<PathBuf>,
    },
    /// Faces of the dual subdivision; tropical faces name their cell.
    Dual { input: Option<PathBuf> },
    /// Connected components with their homotopy models.
    Components { input: Option<PathBuf> },
    /// Realize a complex description as a system document.
    Realize { input: Option<PathBuf> },
    /// Generate example inputs.
    Gen {
        #[command(subcommand)]
        what: Gen,
    },
}

#[derive(Subcommand, Debug)]
pub enum Gen {
    /// n univariate polynomials whose prevariety is an m^n point grid.
    Grid {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        m: usize,
    },
    /// A random system of the test-corpus shape.
    Random {
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// A random complex description of positive codimension.
    Complex {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 3)]
        max_vars: usize,
        #[arg(long, default_value_t = 4)]
        max_polyhedra: usize,
    },
}

fn read_input(path: Option<&Path>) -> Result<Vec<u8>> {
    match path {
        None => read_stdin(),
        Some(p) if p == Path::new("-") => read_stdin(),
        Some(p) => std::fs::read(p).map_err(|source| CliError::Io {
            path: p.display().to_string(),
            source,
        }),
    }
}

fn read_stdin() -> Result<Vec<u8>> {
    let mut buf = Vec::new();
    std::io::stdin()
        .read_to_end(&mut buf)
        .map_err(|source| CliError::Io { path: "<stdin>".into(), source })?;
    Ok(buf)
}

fn load_system(path: Option<&Path>) -> Result<TropSystem> {
    parse_system(&read_input(path)?)
}

pub fn run(cli: &Cli) -> Result<Output> {
    match &cli.command {
        Command::Cells { input, emit_off } => {
            let s = load_system(input.as_deref())?;
            let c = cells_via_arrangement(&s);
            if let Some(path) = emit_off {
                std::fs::write(path, cells_to_off(&c)?).map_err(|source| CliError::Io {
                    path: path.display().to_string(),
                    source,
                })?;
            }
            Ok(report::cells(&c))
        }
        Command::Betti { input } => Ok(report::betti(&betti_of_prevariety(&load_system(input.as_deref())?)?)),
        Command::Bounds { input } => {
            let s = load_system(input.as_deref())?;
            let phi = face_count(&cells_via_arrangement(&s));
            Ok(report::bounds(&report_from(&s, phi, betti_of_prevariety(&s)?)?))
        }
        Command::Check { input, corpus } => match corpus {
            Some(dir) => check_corpus(dir, cli.oracle),
            None => check_system(&load_system(input.as_deref())?, cli.oracle),
        },
        Command::Dual { input } => dual(&load_system(input.as_deref())?),
        Command::Components { input } => Ok(report::components(&component_models(&load_system(input.as_deref())?)?)),
        Command::Realize { input } => {
            let c = parse_complex(&read_input(input.as_deref())?)?;
            Ok(report::system(&complex_prevariety(&c)?))
        }
        Command::Gen { what } => generate(what),
    }
}

fn generate(what: &Gen) -> Result<Output> {
    match *what {
        Gen::Grid { n, m } => {
            if n == 0 || m == 0 {
                return Err(input("grid needs n >= 1 and m >= 1"));
            }
            Ok(report::system(&gen_grid_example(n, m)))
        }
        Gen::Random { seed } => Ok(report::system(&random_system(
            &mut StdRng::seed_from_u64(seed),
            &SystemShape::default(),
        ))),
        Gen::Complex { seed, max_vars, max_polyhedra } => {
            if max_vars == 0 || max_polyhedra == 0 {
                return Err(input("complex needs --max-vars >= 1 and --max-polyhedra >= 1"));
            }
            let c = random_complex(&mut StdRng::seed_from_u64(seed), max_vars, max_polyhedra);
            let text = c.polyhedra.iter().map(|p| format!("{p}\n")).collect();
            Ok(Output::new(complex_to_json(&c), text))
        }
    }
}

fn dual(s: &TropSystem) -> Result<Output> {
    let cells = cells_via_arrangement(s);
    let mut faces = dual_subdivision(s);
    faces.sort_by(|a, b| a.parts.cmp(&b.parts));
    let faces = faces
        .into_iter()
        .map(|f| {
            let cell = if f.tropical {
                let g = dual_cell(s, &f)?;
                let i = cells.cells.iter().position(|c| c.closure == g.closure);
                Some(i.ok_or_else(|| CliError::Violation("dual cell missing from the arrangement cells".into()))?)
            } else {
                None
            };
            Ok((f, cell))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(report::dual(&faces))
}

/// Every brute-force comparison that is small enough to run.
fn oracle_checks(s: &TropSystem) -> Result<(Value, bool)> {
    let arr = build_arrangement(s);
    let arrangement = (arr.len() <= ORACLE_MAX_HYPERPLANES).then(|| {
        let fast: Vec<_> = enumerate_faces(&arr).into_iter().map(|f| f.signs).collect();
        fast == oracle::arrangement_faces(&arr)
    });
    let product: usize = s.polys().iter().map(|p| p.len()).product();
    let bottom = (product <= ORACLE_MAX_PRODUCT).then(|| {
        let faces: std::collections::BTreeSet<_> = dual_subdivision(s).iter().map(|f| f.summed_points(s)).collect();
        faces == oracle::bottom_faces(s)
    });
    let mut homology = Some(true);
    for m in component_models(s)? {
        if m.triangulation.simplices.len() > ORACLE_MAX_SIMPLICES {
            homology = None;
            break;
        }
        if oracle::dense_betti(&m.triangulation) != m.betti {
            homology = Some(false);
        }
    }
    let ok = [arrangement, bottom, homology].iter().all(|v| *v != Some(false));
    Ok((json!({"arrangement": arrangement, "bottom_faces": bottom, "homology": homology}), ok))
}

pub fn check_system(s: &TropSystem, with_oracle: bool) -> Result<Output> {
    let arr = cells_via_arrangement(s);
    let dual = cells_via_duality(s)?;
    let equal = arr.closures() == dual.closures();
    let r = report_from(s, face_count(&arr), betti_of_prevariety(s)?)?;
    let mut json = report::bounds_json(&r);
    json["cross_method"] = json!({
        "arrangement_cells": arr.len(),
        "duality_cells": dual.len(),
        "equal": equal,
    });
    let mut text = report::bounds_text(&r);
    text.push_str(&format!("cross-method   {}\n", if equal { "ok" } else { "MISMATCH" }));
    let mut ok = r.all_pass() && equal;
    if with_oracle {
        let (v, pass) = oracle_checks(s)?;
        json["oracle"] = v;
        text.push_str(&format!("oracles        {}\n", if pass { "ok" } else { "MISMATCH" }));
        ok &= pass;
    }
    json["pass"] = json!(ok);
    Ok(Output { json, text, ok })
}

fn check_corpus(dir: &Path, with_oracle: bool) -> Result<Output> {
    let io = |source| CliError::Io { path: dir.display().to_string(), source };
    let mut files: Vec<PathBuf> = std::fs::read_dir(dir)
        .map_err(io)?
        .map(|e| e.map(|e| e.path()))
        .collect::<std::io::Result<_>>()
        .map_err(io)?;
    files.retain(|p| p.extension().is_some_and(|e| e == "json"));
    files.sort();
    if files.is_empty() {
        return Err(input(format!("{}: no .json files", dir.display())));
    }
    let results = std::thread::scope(|scope| {
        let handles: Vec<_> = files
            .iter()
            .map(|path| {
                scope.spawn(move || {
                    let s = load_system(Some(path)).map_err(|e| match e {
                        CliError::Input(msg) => input(format!("{}: {msg}", path.display())),
                        other => other,
                    })?;
                    check_system(&s, with_oracle)
                })
            })
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("check thread panicked"))
            .collect::<Vec<_>>()
    });
    let mut entries = Vec::new();
    let mut text = String::new();
    let mut failed = Vec::new();
    for (path, res) in files.iter().zip(results) {
        let out = res?;
        let name = path.file_name().unwrap_or_default().to_string_lossy().into_owned();
        text.push_str(&format!("{name}: {}\n", if out.ok { "pass" } else { "FAIL" }));
        if !out.ok {
            failed.push(name.clone());
        }
        let mut entry = json!({"file": name});
        entry["report"] = out.json;
        entries.push(entry);
    }
    let ok = failed.is_empty();
    let json = json!({"count": files.len(), "failed": failed, "pass": ok, "files": entries});
    Ok(Output { json, text, ok })
}
