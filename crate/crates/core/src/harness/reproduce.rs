//! Fixed reproductions of the named examples. Each returns a report and a
//! `confirmed` flag; for expected-violation reproductions, confirmation
//! means the violation was found.

use num::Zero;
use serde_json::{json, Value};

use crate::convgeom::{one_rayleigh_counterexample_report, Polytope};
use crate::error::{Error, Result};
use crate::ineq::{rkt_sweep, RktConstant, Sweep};
use crate::io::{poly_to_json, polytope_to_json};
use crate::lorentz::{inertia, is_lorentzian, Inertia};
use crate::matrix::SymMatrix;
use crate::matroid::{check_polymatroid, GroundSet, RankOracle};
use crate::poly::HomPoly;
use crate::rational::{int, rat, Rat};
use crate::schurmix::{elementary_symmetric, md_af_check, md_hodge_form, schur, Partition};

/// Stable reproduction identifiers.
pub const REPRODUCTIONS: &[&str] = &["huh-example", "bipyramid", "schur-examples", "md-signature", "polymatroid-demo"];

#[derive(Clone, Debug)]
pub struct Reproduction {
    pub name: String,
    pub expected_violation: bool,
    pub confirmed: bool,
    pub report: Value,
}

impl Reproduction {
    pub fn to_json(&self) -> Value {
        json!({
            "reproduction": self.name,
            "expected-violation": self.expected_violation,
            "confirmed": self.confirmed,
            "report": self.report,
        })
    }
}

pub fn reproduce(name: &str) -> Result<Reproduction> {
    let (expected_violation, (confirmed, report)) = match name {
        "huh-example" => (true, non_volume_cubic_report()?),
        "bipyramid" => (true, bipyramid()),
        "schur-examples" => (false, schur_examples()?),
        "md-signature" => (false, md_signature()?),
        "polymatroid-demo" => (false, polymatroid_demo()?),
        _ => {
            return Err(Error::input(format!(
                "unknown reproduction `{name}`; expected one of {}",
                REPRODUCTIONS.join(", ")
            )))
        }
    };
    Ok(Reproduction { name: name.to_string(), expected_violation, confirmed, report })
}

/// `14x₁³+6x₁²x₂+24x₁²x₃+12x₁x₂x₃+6x₁x₃²+3x₂x₃²`: Lorentzian but not a
/// volume polynomial.
pub fn non_volume_cubic() -> HomPoly {
    let terms: &[(&[u32], Rat)] = &[
        (&[3, 0, 0], int(14)),
        (&[2, 1, 0], int(6)),
        (&[2, 0, 1], int(24)),
        (&[1, 1, 1], int(12)),
        (&[1, 0, 2], int(6)),
        (&[0, 1, 2], int(3)),
    ];
    HomPoly::from_pairs(3, 3, terms).expect("well-formed")
}

fn non_volume_cubic_points() -> Vec<Vec<Rat>> {
    vec![
        vec![int(1), int(0), int(0)],
        vec![int(0), int(1), int(0)],
        vec![int(0), int(0), int(1)],
        vec![int(1), int(1), int(1)],
    ]
}

fn non_volume_cubic_report() -> Result<(bool, Value)> {
    let f = non_volume_cubic();
    let points = non_volume_cubic_points();
    let member = is_lorentzian(&f);
    let optimal = rkt_sweep(&f, &points, RktConstant::Optimal, Sweep::Full)?;
    let proven = rkt_sweep(&f, &points, RktConstant::Proven, Sweep::Full)?;
    let confirmed = member.holds && optimal.violations >= 1 && proven.violations == 0;
    let sweep = |r: &crate::ineq::SweepReport| {
        json!({"checked": r.checked, "violations": r.violations, "first": r.verdict.to_json()})
    };
    let report = json!({
        "poly": poly_to_json(&f),
        "points": points.iter().map(|p| crate::rational::fmt_vec(p)).collect::<Vec<_>>(),
        "is_lorentzian": member.to_json(),
        "rkt_optimal": sweep(&optimal),
        "rkt": sweep(&proven),
    });
    Ok((confirmed, report))
}

fn bipyramid() -> (bool, Value) {
    let r = one_rayleigh_counterexample_report();
    let confirmed = r.volume == rat(8, 3)
        && r.volume_p1 == int(2)
        && r.volume_p2 == int(2)
        && r.volume_p12 == int(2)
        && r.lhs == rat(16, 3)
        && r.rhs_one == int(4)
        && !r.one_bound.holds
        && r.sharp_bound.holds
        && r.sharp_bound.margin.as_ref().is_some_and(Zero::is_zero);
    let mut report = r.to_json();
    report["body"] = polytope_to_json(&Polytope::bipyramid());
    (confirmed, report)
}

fn schur_examples() -> Result<(bool, Value)> {
    let e = 4;
    let s = |p: &[u32]| schur(&Partition::new(p.to_vec(), e).expect("valid"), e);
    let sig = |k| elementary_symmetric(k, e);
    let identities = [
        ("s(2) = c2", s(&[2])?, sig(2)),
        ("s(1,1) = c1^2 - c2", s(&[1, 1])?, &sig(1).pow(2) - &sig(2)),
        ("s(2,1) = c1 c2 - c3", s(&[2, 1])?, &(&sig(1) * &sig(2)) - &sig(3)),
        (
            "s(1,1,1) = c1^3 - 2 c1 c2 + c3",
            s(&[1, 1, 1])?,
            &(&sig(1).pow(3) - &(&sig(1) * &sig(2)).scale(&int(2))) + &sig(3),
        ),
    ];
    let mut confirmed = true;
    let mut rows = Vec::new();
    for (name, lhs, rhs) in &identities {
        let ok = lhs == rhs;
        confirmed &= ok;
        rows.push(json!({"identity": name, "holds": ok, "value": lhs.to_string()}));
    }
    let mut checked = 0u64;
    let mut failures = Vec::new();
    for e in 1..=4u32 {
        for size in 1..=6u32 {
            for lambda in Partition::all_of_size(size, e) {
                let p = schur(&lambda, e)?;
                checked += 1;
                let nonneg = p.has_nonnegative_coefficients();
                let symmetric = is_symmetric(&p)?;
                if !(nonneg && symmetric) {
                    failures.push(json!({"partition": lambda.to_json(), "nonnegative": nonneg, "symmetric": symmetric}));
                }
            }
        }
    }
    confirmed &= failures.is_empty();
    Ok((confirmed, json!({"identities": rows, "checked": checked, "failures": failures})))
}

/// Invariance under adjacent transpositions of the variables.
fn is_symmetric(p: &HomPoly) -> Result<bool> {
    let n = p.nvars();
    for i in 0..n.saturating_sub(1) {
        let swap: Vec<Vec<Rat>> = (0..n)
            .map(|j| {
                let target = if j == i { i + 1 } else if j == i + 1 { i } else { j };
                (0..n).map(|k| if k == target { int(1) } else { int(0) }).collect()
            })
            .collect();
        if &p.substitute_linear(&swap, n)? != p {
            return Ok(false);
        }
    }
    Ok(true)
}

fn md_signature() -> Result<(bool, Value)> {
    let cases = [
        (2usize, vec![], SymMatrix::identity(2), Inertia::new(1, 0, 2)),
        (3, vec![SymMatrix::identity(3)], SymMatrix::identity(3), Inertia::new(1, 0, 5)),
        (3, vec![], SymMatrix::diagonal(&[int(1), int(2), int(5)]), Inertia::new(1, 0, 5)),
    ];
    let mut confirmed = true;
    let mut rows = Vec::new();
    for (n, hyps, w, expected) in cases {
        let m = hyps.len() + 2;
        let got = inertia(&md_hodge_form(&hyps, &w, m)?);
        confirmed &= got == expected;
        rows.push(json!({"n": n, "m": m, "inertia": got.to_json(), "expected": expected.to_json()}));
    }
    let b = SymMatrix::from_rows(&[
        vec![int(0), int(1), int(2)],
        vec![int(1), int(-3), int(0)],
        vec![int(2), int(0), int(1)],
    ])?;
    let af = md_af_check(&SymMatrix::identity(3), &b, &[SymMatrix::diagonal(&[int(1), int(2), int(3)])])?;
    confirmed &= af.holds;
    Ok((confirmed, json!({"signatures": rows, "af": af.to_json()})))
}

fn polymatroid_demo() -> Result<(bool, Value)> {
    let v = |c: &[i64]| c.iter().map(|&x| int(x)).collect::<Vec<Rat>>();
    let seg = |a: &[i64], b: &[i64]| Polytope::segment(v(a), v(b));
    let bodies = vec![
        seg(&[0, 0, 0], &[1, 0, 0])?,
        seg(&[0, 0, 0], &[2, 0, 0])?,
        seg(&[0, 0, 0], &[0, 1, 0])?,
        Polytope::new(3, vec![v(&[0, 0, 0]), v(&[1, 0, 0]), v(&[0, 0, 1])])?,
        Polytope::cube(3),
    ];
    let m = 2;
    let mut oracle = RankOracle::new(GroundSet::new(bodies.clone(), m, None)?);
    let verdict = check_polymatroid(&mut oracle)?;
    let ranks = oracle.all_ranks()?;
    let mut with_point = bodies.clone();
    with_point.push(Polytope::point(v(&[1, 1, 1]))?);
    let mut loop_oracle = RankOracle::new(GroundSet::new(with_point, m, None)?);
    let loop_verdict = check_polymatroid(&mut loop_oracle)?;
    let expected_loop = crate::verdict::Witness::Subsets {
        property: "loopless".into(),
        first: vec![bodies.len()],
        second: vec![],
    };
    let confirmed = verdict.holds
        && ranks[0b00011] == 1
        && ranks[0b00101] == 2
        && ranks[0b10000] == m
        && loop_verdict.witness.as_ref() == Some(&expected_loop);
    let report = json!({
        "m": m,
        "W": "unit-cube",
        "bodies": bodies.iter().map(polytope_to_json).collect::<Vec<_>>(),
        "ranks": ranks,
        "polymatroid": verdict.to_json(),
        "with_point_body": loop_verdict.to_json(),
    });
    Ok((confirmed, report))
}
