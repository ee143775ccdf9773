//! The JSON formats.
//!
//! A system document is
//! `{"n": 2, "laurent": false, "polys": [[[[1, 0], "0"], [[0, 1], "-1/2"]]]}`:
//! each polynomial is a list of `[exponent vector, constant]` monomials, the
//! constant an exact rational string. A complex description is
//! `{"n": 2, "polyhedra": [{"eq": [[[0, 1], "0"]], "ineq": [[[1, 0], "0"]]}]}`
//! where an `eq` row `[a, b]` is `⟨a, x⟩ = b` and an `ineq` row is `⟨a, x⟩ >= b`.

use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use serde_json::{json, Map, Value};

use tropvar::exactgeom::{fmt_rational, Constraint, HPolyhedron, Rational};
use tropvar::realize::ComplexDescription;
use tropvar::tropical::{Monomial, TropPoly, TropSystem};

use crate::error::{input, Result};

fn parse_json(text: &[u8]) -> Result<Value> {
    let text = std::str::from_utf8(text).map_err(|e| input(format!("input is not UTF-8: {e}")))?;
    serde_json::from_str(text).map_err(|e| input(format!("malformed JSON: {e}")))
}

fn object<'a>(v: &'a Value, path: &str) -> Result<&'a Map<String, Value>> {
    v.as_object().ok_or_else(|| input(format!("{path}: expected an object")))
}

fn array<'a>(v: &'a Value, path: &str) -> Result<&'a [Value]> {
    v.as_array()
        .map(Vec::as_slice)
        .ok_or_else(|| input(format!("{path}: expected an array")))
}

fn field<'a>(obj: &'a Map<String, Value>, key: &str, path: &str) -> Result<&'a Value> {
    obj.get(key)
        .ok_or_else(|| input(format!("{path}: missing field \"{key}\"")))
}

fn reject_unknown(obj: &Map<String, Value>, known: &[&str], path: &str) -> Result<()> {
    match obj.keys().find(|k| !known.contains(&k.as_str())) {
        Some(k) => Err(input(format!("{path}: unknown field \"{k}\""))),
        None => Ok(()),
    }
}

fn dimension(v: &Value, path: &str) -> Result<usize> {
    match v.as_u64() {
        Some(n) if n >= 1 => usize::try_from(n).map_err(|_| input(format!("{path}: too large"))),
        _ => Err(input(format!("{path}: expected a positive integer"))),
    }
}

fn integer(v: &Value, path: &str) -> Result<i64> {
    v.as_i64()
        .ok_or_else(|| input(format!("{path}: expected an integer in 64-bit range")))
}

/// `"p/q"` or `"p"`; integers are accepted as JSON numbers too.
pub fn parse_rational(v: &Value, path: &str) -> Result<Rational> {
    let bad = || input(format!("{path}: expected a rational string \"p/q\""));
    let text = match v {
        Value::String(s) => s.trim().to_string(),
        Value::Number(n) if n.is_i64() || n.is_u64() => n.to_string(),
        _ => return Err(bad()),
    };
    let (num, den) = match text.split_once('/') {
        Some((p, q)) => (p, q),
        None => (text.as_str(), "1"),
    };
    let num = BigInt::from_str(num).map_err(|_| bad())?;
    let den = BigInt::from_str(den).map_err(|_| bad())?;
    if den.is_zero() {
        return Err(input(format!("{path}: zero denominator")));
    }
    Ok(Rational::new(num, den))
}

pub fn rational_json(q: &Rational) -> Value {
    Value::String(fmt_rational(q))
}

/// An exact JSON integer of any size.
pub fn integer_json(b: &BigInt) -> Value {
    match b.to_i64() {
        Some(v) => json!(v),
        None => Value::Number(serde_json::Number::from_str(&b.to_string()).expect("decimal integer")),
    }
}

fn exponents(v: &Value, n: usize, path: &str) -> Result<Vec<i64>> {
    let xs = array(v, path)?;
    if xs.len() != n {
        return Err(input(format!("{path}: expected {n} entries, found {}", xs.len())));
    }
    xs.iter()
        .enumerate()
        .map(|(i, x)| integer(x, &format!("{path}[{i}]")))
        .collect()
}

fn pair<'a>(v: &'a Value, path: &str) -> Result<(&'a Value, &'a Value)> {
    match array(v, path)? {
        [a, b] => Ok((a, b)),
        _ => Err(input(format!("{path}: expected [vector, constant]"))),
    }
}

/// Parses and validates a system document. Duplicate monomials are merged
/// and constants normalized.
pub fn parse_system(text: &[u8]) -> Result<TropSystem> {
    system_from_json(&parse_json(text)?)
}

pub fn system_from_json(v: &Value) -> Result<TropSystem> {
    let obj = object(v, "document")?;
    reject_unknown(obj, &["n", "laurent", "polys"], "document")?;
    let n = dimension(field(obj, "n", "document")?, "n")?;
    let laurent = match obj.get("laurent") {
        None | Some(Value::Null) => false,
        Some(Value::Bool(b)) => *b,
        Some(_) => return Err(input("laurent: expected a boolean")),
    };
    let polys = array(field(obj, "polys", "document")?, "polys")?;
    if polys.is_empty() {
        return Err(input("polys: at least one polynomial is required"));
    }
    let polys = polys
        .iter()
        .enumerate()
        .map(|(i, p)| {
            let path = format!("polys[{i}]");
            let monos = array(p, &path)?;
            if monos.is_empty() {
                return Err(input(format!("{path}: polynomial has no monomials")));
            }
            let monos = monos
                .iter()
                .enumerate()
                .map(|(j, m)| {
                    let path = format!("{path}[{j}]");
                    let (e, c) = pair(m, &path)?;
                    let e = exponents(e, n, &format!("{path}[0]"))?;
                    if !laurent && e.iter().any(|&a| a < 0) {
                        return Err(input(format!("negative coefficient at {path}")));
                    }
                    Ok(Monomial::new(e, parse_rational(c, &format!("{path}[1]"))?))
                })
                .collect::<Result<Vec<_>>>()?;
            Ok(TropPoly::new(monos, laurent)?)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(TropSystem::new(n, polys)?)
}

/// The `laurent` key is written only when set.
pub fn system_to_json(s: &TropSystem) -> Value {
    let polys: Vec<Value> = s
        .polys()
        .iter()
        .map(|p| {
            p.monomials()
                .iter()
                .map(|m| json!([m.exponents, rational_json(&m.constant)]))
                .collect()
        })
        .collect();
    let mut obj = Map::new();
    obj.insert("n".into(), json!(s.nvars()));
    if s.has_laurent() {
        obj.insert("laurent".into(), json!(true));
    }
    obj.insert("polys".into(), Value::Array(polys));
    Value::Object(obj)
}

pub fn serialize_system(s: &TropSystem) -> String {
    system_to_json(s).to_string()
}

pub fn constraint_json(c: &Constraint) -> Value {
    let normal: Vec<Value> = c.normal.iter().map(integer_json).collect();
    json!([normal, rational_json(&c.offset)])
}

pub fn polyhedron_json(p: &HPolyhedron) -> Value {
    json!({
        "eq": p.equalities().iter().map(constraint_json).collect::<Vec<_>>(),
        "ineq": p.inequalities().iter().map(constraint_json).collect::<Vec<_>>(),
    })
}

fn constraints(v: Option<&Value>, n: usize, path: &str, equation: bool) -> Result<Vec<Constraint>> {
    let Some(v) = v else { return Ok(Vec::new()) };
    array(v, path)?
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let path = format!("{path}[{i}]");
            let (a, b) = pair(row, &path)?;
            let a: Vec<Rational> = exponents(a, n, &format!("{path}[0]"))?
                .into_iter()
                .map(|x| Rational::from_integer(x.into()))
                .collect();
            if a.iter().all(Zero::is_zero) {
                return Err(input(format!("{path}: zero normal vector")));
            }
            let b = parse_rational(b, &format!("{path}[1]"))?;
            Ok(if equation { Constraint::equation(&a, b) } else { Constraint::inequality(&a, b) })
        })
        .collect()
}

pub fn parse_complex(text: &[u8]) -> Result<ComplexDescription> {
    complex_from_json(&parse_json(text)?)
}

pub fn complex_from_json(v: &Value) -> Result<ComplexDescription> {
    let obj = object(v, "document")?;
    reject_unknown(obj, &["n", "polyhedra"], "document")?;
    let n = dimension(field(obj, "n", "document")?, "n")?;
    let polyhedra = array(field(obj, "polyhedra", "document")?, "polyhedra")?
        .iter()
        .enumerate()
        .map(|(i, p)| {
            let path = format!("polyhedra[{i}]");
            let o = object(p, &path)?;
            reject_unknown(o, &["eq", "ineq"], &path)?;
            let eqs = constraints(o.get("eq"), n, &format!("{path}.eq"), true)?;
            let ineqs = constraints(o.get("ineq"), n, &format!("{path}.ineq"), false)?;
            Ok(HPolyhedron::new(n, eqs, ineqs)?)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(ComplexDescription::new(n, polyhedra)?)
}

pub fn complex_to_json(c: &ComplexDescription) -> Value {
    json!({
        "n": c.n,
        "polyhedra": c.polyhedra.iter().map(polyhedron_json).collect::<Vec<_>>(),
    })
}
