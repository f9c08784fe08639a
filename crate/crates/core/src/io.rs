//! JSON formats for polynomials, polytopes, partitions, ground sets,
//! matrices and checker instances. Rationals travel as strings `"p/q"`;
//! every parse error names the offending field.

use std::path::{Path, PathBuf};

use serde_json::{json, Map, Value};

use crate::convgeom::Polytope;
use crate::error::{Error, Result};
use crate::ineq::Sweep;
use crate::matrix::SymMatrix;
use crate::matroid::GroundSet;
use crate::poly::{HomPoly, MultiIndex};
use crate::rational::{fmt_rat, fmt_vec, parse_rat, Rat};
use crate::schurmix::{Partition, SchurValuationSpec};

fn err(field: &str, msg: impl std::fmt::Display) -> Error {
    Error::input(format!("{field}: {msg}"))
}

fn within<T>(field: &str, r: Result<T>) -> Result<T> {
    r.map_err(|e| match e {
        Error::Input(m) => err(field, m),
        other => other,
    })
}

pub fn object<'a>(v: &'a Value, field: &str) -> Result<&'a Map<String, Value>> {
    v.as_object().ok_or_else(|| err(field, "expected an object"))
}

pub fn get<'a>(obj: &'a Map<String, Value>, key: &str, field: &str) -> Result<&'a Value> {
    obj.get(key).ok_or_else(|| err(&join(field, key), "missing"))
}

fn join(parent: &str, key: &str) -> String {
    if parent.is_empty() {
        key.to_string()
    } else {
        format!("{parent}.{key}")
    }
}

pub fn array<'a>(v: &'a Value, field: &str) -> Result<&'a Vec<Value>> {
    v.as_array().ok_or_else(|| err(field, "expected an array"))
}

pub fn uint(v: &Value, field: &str) -> Result<u64> {
    v.as_u64().ok_or_else(|| err(field, "expected a nonnegative integer"))
}

/// A rational from a string `"p/q"` or a JSON integer.
pub fn rational(v: &Value, field: &str) -> Result<Rat> {
    match v {
        Value::String(s) => within(field, parse_rat(s)),
        Value::Number(n) if n.is_i64() || n.is_u64() => within(field, parse_rat(&n.to_string())),
        _ => Err(err(field, "expected a rational string \"p/q\" or an integer")),
    }
}

pub fn vector(v: &Value, field: &str) -> Result<Vec<Rat>> {
    array(v, field)?
        .iter()
        .enumerate()
        .map(|(i, x)| rational(x, &format!("{field}[{i}]")))
        .collect()
}

pub fn vectors(v: &Value, field: &str) -> Result<Vec<Vec<Rat>>> {
    array(v, field)?
        .iter()
        .enumerate()
        .map(|(i, x)| vector(x, &format!("{field}[{i}]")))
        .collect()
}

pub fn parse_poly(v: &Value, field: &str) -> Result<HomPoly> {
    let o = object(v, field)?;
    let nvars = uint(get(o, "nvars", field)?, &join(field, "nvars"))? as usize;
    let degree = uint(get(o, "degree", field)?, &join(field, "degree"))? as u32;
    let terms_field = join(field, "terms");
    let mut terms = Vec::new();
    for (i, t) in array(get(o, "terms", field)?, &terms_field)?.iter().enumerate() {
        let tf = format!("{terms_field}[{i}]");
        let to = object(t, &tf)?;
        let exp_field = join(&tf, "exp");
        let exp: Vec<u32> = array(get(to, "exp", &tf)?, &exp_field)?
            .iter()
            .enumerate()
            .map(|(j, e)| uint(e, &format!("{exp_field}[{j}]")).map(|x| x as u32))
            .collect::<Result<_>>()?;
        let coef = rational(get(to, "coef", &tf)?, &join(&tf, "coef"))?;
        terms.push((MultiIndex::new(exp), coef));
    }
    within(&terms_field, HomPoly::new(nvars, degree, terms))
}

pub fn poly_to_json(f: &HomPoly) -> Value {
    let terms: Vec<Value> = f
        .terms()
        .map(|(e, c)| json!({"exp": e.exponents(), "coef": fmt_rat(c)}))
        .collect();
    json!({"nvars": f.nvars(), "degree": f.degree(), "terms": terms})
}

pub fn parse_polytope(v: &Value, field: &str) -> Result<Polytope> {
    let o = object(v, field)?;
    let dim = uint(get(o, "dim", field)?, &join(field, "dim"))? as usize;
    let verts = vectors(get(o, "vertices", field)?, &join(field, "vertices"))?;
    within(&join(field, "vertices"), Polytope::new(dim, verts))
}

pub fn polytope_to_json(p: &Polytope) -> Value {
    let verts: Vec<Vec<String>> = p.vertices().iter().map(|v| fmt_vec(v)).collect();
    json!({"dim": p.dim(), "vertices": verts})
}

/// Loads a JSON document from disk.
pub fn read_json(path: &Path) -> Result<Value> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::input(format!("{}: cannot read: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| Error::input(format!("{}: malformed JSON: {e}", path.display())))
}

/// An inline polytope, or a string path resolved against `base`.
pub fn polytope_ref(v: &Value, field: &str, base: Option<&Path>) -> Result<Polytope> {
    match v {
        Value::String(s) => {
            let p = resolve(s, base);
            parse_polytope(&read_json(&p)?, &format!("{field} ({})", p.display()))
        }
        _ => parse_polytope(v, field),
    }
}

fn resolve(s: &str, base: Option<&Path>) -> PathBuf {
    let p = PathBuf::from(s);
    match base {
        Some(b) if p.is_relative() => b.join(p),
        _ => p,
    }
}

pub fn polytopes(v: &Value, field: &str, base: Option<&Path>) -> Result<Vec<Polytope>> {
    array(v, field)?
        .iter()
        .enumerate()
        .map(|(i, b)| polytope_ref(b, &format!("{field}[{i}]"), base))
        .collect()
}

pub fn parse_partition(v: &Value, field: &str) -> Result<Partition> {
    let o = object(v, field)?;
    let pf = join(field, "parts");
    let parts: Vec<u32> = array(get(o, "parts", field)?, &pf)?
        .iter()
        .enumerate()
        .map(|(i, x)| uint(x, &format!("{pf}[{i}]")).map(|p| p as u32))
        .collect::<Result<_>>()?;
    let e = uint(get(o, "e", field)?, &join(field, "e"))? as u32;
    within(field, Partition::new(parts, e))
}

pub fn parse_ground_set(v: &Value, field: &str, base: Option<&Path>) -> Result<GroundSet> {
    let o = object(v, field)?;
    let m = uint(get(o, "m", field)?, &join(field, "m"))? as usize;
    let bodies = polytopes(get(o, "bodies", field)?, &join(field, "bodies"), base)?;
    let w = match o.get("W") {
        None => None,
        Some(Value::String(s)) if s == "unit-cube" => None,
        Some(w) => Some(polytope_ref(w, &join(field, "W"), base)?),
    };
    within(field, GroundSet::new(bodies, m, w))
}

pub fn parse_sym_matrix(v: &Value, field: &str) -> Result<SymMatrix> {
    let rows = vectors(v, field)?;
    within(field, SymMatrix::from_rows(&rows))
}

pub fn sym_matrix_to_json(m: &SymMatrix) -> Value {
    json!(m.rows().iter().map(|r| fmt_vec(r)).collect::<Vec<_>>())
}

/// `"full"` or `{"samples": N, "seed": S}`; absent means auto mode with seed 0.
pub fn parse_sweep(v: Option<&Value>, field: &str) -> Result<Sweep> {
    match v {
        None => Ok(Sweep::Auto { seed: 0 }),
        Some(Value::String(s)) if s == "full" => Ok(Sweep::Full),
        Some(Value::String(s)) if s == "auto" => Ok(Sweep::Auto { seed: 0 }),
        Some(Value::Object(o)) => Ok(Sweep::Sample {
            samples: uint(get(o, "samples", field)?, &join(field, "samples"))? as usize,
            seed: uint(get(o, "seed", field)?, &join(field, "seed"))?,
        }),
        Some(_) => Err(err(field, "expected \"full\" or {\"samples\": N, \"seed\": S}")),
    }
}

/// Which catalog inequality an instance file targets.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    Rkt,
    RktOptimal,
    Pr,
    Supermod,
    AfForm,
}

impl Mode {
    pub fn parse(s: &str) -> Option<Mode> {
        Some(match s {
            "rkt" => Mode::Rkt,
            "rkt-optimal" => Mode::RktOptimal,
            "pr" => Mode::Pr,
            "supermod" => Mode::Supermod,
            "af-form" => Mode::AfForm,
            _ => return None,
        })
    }

    pub fn name(self) -> &'static str {
        match self {
            Mode::Rkt => "rkt",
            Mode::RktOptimal => "rkt-optimal",
            Mode::Pr => "pr",
            Mode::Supermod => "supermod",
            Mode::AfForm => "af-form",
        }
    }
}

/// A checker instance file. For `rkt`/`rkt-optimal` each entry of `points`
/// is one vector; for `pr`/`supermod` a triple `[x, y, z]`; for `af-form` a
/// list of `d` vectors `[v₁, ..., v_d]`.
#[derive(Clone, Debug)]
pub struct Instance {
    pub poly: HomPoly,
    pub mode: Mode,
    pub points: Vec<Vec<Vec<Rat>>>,
    pub sweep: Sweep,
}

pub fn parse_instance(v: &Value, default_mode: Option<Mode>) -> Result<Instance> {
    let o = object(v, "instance")?;
    let poly = parse_poly(get(o, "poly", "")?, "poly")?;
    let mode = match o.get("mode") {
        Some(m) => {
            let s = m.as_str().ok_or_else(|| err("mode", "expected a string"))?;
            Mode::parse(s).ok_or_else(|| err("mode", format!("unknown mode `{s}`")))?
        }
        None => default_mode.ok_or_else(|| err("mode", "missing"))?,
    };
    let raw = array(get(o, "points", "")?, "points")?;
    let mut points = Vec::with_capacity(raw.len());
    for (i, p) in raw.iter().enumerate() {
        let f = format!("points[{i}]");
        let entry = match mode {
            Mode::Rkt | Mode::RktOptimal => vec![vector(p, &f)?],
            Mode::Pr | Mode::Supermod => {
                let t = vectors(p, &f)?;
                if t.len() != 3 {
                    return Err(err(&f, "expected a triple [x, y, z]"));
                }
                t
            }
            Mode::AfForm => vectors(p, &f)?,
        };
        points.push(entry);
    }
    let sweep = parse_sweep(o.get("sweep"), "sweep")?;
    Ok(Instance { poly, mode, points, sweep })
}

/// A Schur valuation spec with its two free bodies:
/// `{"dim", "tuples": [{"partition", "bodies"}], "M", "N"}`.
pub fn parse_valuation(v: &Value, base: Option<&Path>) -> Result<(SchurValuationSpec, Polytope, Polytope)> {
    let o = object(v, "spec")?;
    let dim = uint(get(o, "dim", "")?, "dim")? as usize;
    let mut tuples = Vec::new();
    for (i, t) in array(get(o, "tuples", "")?, "tuples")?.iter().enumerate() {
        let f = format!("tuples[{i}]");
        let to = object(t, &f)?;
        let lambda = parse_partition(get(to, "partition", &f)?, &join(&f, "partition"))?;
        let bodies = polytopes(get(to, "bodies", &f)?, &join(&f, "bodies"), base)?;
        tuples.push((lambda, bodies));
    }
    let spec = within("tuples", SchurValuationSpec::new(dim, tuples))?;
    let m = polytope_ref(get(o, "M", "")?, "M", base)?;
    let n = polytope_ref(get(o, "N", "")?, "N", base)?;
    Ok((spec, m, n))
}
