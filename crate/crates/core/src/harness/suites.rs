//! Property suites over the fuzz corpus. Each trial is independent and
//! seeded by `(seed, trial)`; results are merged in trial order so reports
//! are byte-identical across runs and worker counts.

use std::collections::BTreeMap;
use std::time::Instant;

use num::{Signed, Zero};
use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde_json::{json, Value};

use super::corpus::*;
use crate::convgeom::{
    rkt_convex_check, volume_polynomial, BodyFamily, Polytope,
};
use crate::error::{Error, Result};
use crate::ineq::{af_form_check, pr_check, rkt_sweep, supermodularity_check, RktConstant, Sweep};
use crate::io::{poly_to_json, polytope_to_json, sym_matrix_to_json};
use crate::lorentz::{
    c_rayleigh_check, inertia, is_lorentzian, lorentzian_rayleigh_constant, quadratic_class_equiv,
};
use crate::matrix::rank;
use crate::matroid::{check_polymatroid, GroundSet, RankOracle};
use crate::poly::MultiIndex;
use crate::rational::{factorial, fmt_rat, fmt_vec, Rat};
use crate::schurmix::{
    md_af_check, md_hodge_form, schur_af_check, Partition, SchurValuationSpec,
};
use crate::verdict::Verdict;

/// Stable suite identifiers.
pub const SUITES: &[&str] = &[
    "rkt",
    "pr",
    "supermod",
    "pr-supermod",
    "af-form",
    "rayleigh",
    "lorentz-closure",
    "volume-lorentzian",
    "mixed-volume",
    "convex-rkt",
    "convex-pr",
    "schur-af",
    "md-signature",
    "polymatroid",
];

/// Failures kept verbatim in a report.
pub const MAX_WITNESSES: usize = 10;

#[derive(Default)]
struct Trial {
    checks: u64,
    failures: Vec<Value>,
    counters: BTreeMap<String, u64>,
    ratio: Option<Rat>,
}

impl Trial {
    fn record(&mut self, holds: bool, failure: impl FnOnce() -> Value) {
        self.checks += 1;
        if !holds {
            self.failures.push(failure());
        }
    }

    fn count(&mut self, key: &str) {
        *self.counters.entry(key.to_string()).or_insert(0) += 1;
    }
}

/// Aggregated outcome of one suite run.
#[derive(Clone, Debug)]
pub struct SuiteReport {
    pub suite: String,
    pub seed: u64,
    pub trials: u64,
    pub completed: u64,
    pub checks: u64,
    pub violations: u64,
    pub witnesses: Vec<Value>,
    pub counters: BTreeMap<String, u64>,
    pub max_ratio: Option<Rat>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.violations == 0 && self.completed == self.trials
    }

    pub fn to_json(&self) -> Value {
        let mut v = json!({
            "suite": self.suite,
            "seed": self.seed,
            "trials": self.trials,
            "completed": self.completed,
            "checks": self.checks,
            "violations": self.violations,
            "witnesses": self.witnesses,
            "counters": self.counters,
        });
        if let Some(r) = &self.max_ratio {
            v["max_ratio"] = json!(fmt_rat(r));
        }
        v
    }
}

fn aux(seed: u64, trial: u64) -> ChaCha8Rng {
    let mut rng = trial_rng(seed, trial);
    rng.set_word_pos(1 << 40);
    rng
}

fn verdict_failure(trial: u64, v: &Verdict, context: Value) -> Value {
    json!({"trial": trial, "verdict": v.to_json(), "context": context})
}

fn suite_fn(name: &str) -> Option<fn(u64, u64) -> Result<Trial>> {
    Some(match name {
        "rkt" => rkt_trial,
        "pr" => pr_trial,
        "supermod" => supermod_trial,
        "pr-supermod" => pr_supermod_trial,
        "af-form" => af_form_trial,
        "rayleigh" => rayleigh_trial,
        "lorentz-closure" => closure_trial,
        "volume-lorentzian" => volume_lorentzian_trial,
        "mixed-volume" => mixed_volume_trial,
        "convex-rkt" => convex_rkt_trial,
        "convex-pr" => convex_pr_trial,
        "schur-af" => schur_af_trial,
        "md-signature" => md_signature_trial,
        "polymatroid" => polymatroid_trial,
        _ => return None,
    })
}

/// Runs `trials` trials of `name`. With a deadline, trials that have not
/// started by then are skipped and the report is marked incomplete.
pub fn run_suite(name: &str, seed: u64, trials: u64, deadline: Option<Instant>) -> Result<SuiteReport> {
    let f = suite_fn(name).ok_or_else(|| {
        Error::input(format!("unknown suite `{name}`; expected one of {}", SUITES.join(", ")))
    })?;
    if trials == 0 {
        return Err(Error::input("trials must be at least 1"));
    }
    let outcomes: Vec<Option<Result<Trial>>> = (0..trials)
        .into_par_iter()
        .map(|t| {
            if deadline.is_some_and(|d| Instant::now() >= d) {
                None
            } else {
                Some(f(seed, t))
            }
        })
        .collect();
    let mut report = SuiteReport {
        suite: name.to_string(),
        seed,
        trials,
        completed: 0,
        checks: 0,
        violations: 0,
        witnesses: Vec::new(),
        counters: BTreeMap::new(),
        max_ratio: None,
    };
    for o in outcomes.into_iter().flatten() {
        let t = o?;
        report.completed += 1;
        report.checks += t.checks;
        report.violations += t.failures.len() as u64;
        for w in t.failures {
            if report.witnesses.len() < MAX_WITNESSES {
                report.witnesses.push(w);
            }
        }
        for (k, v) in t.counters {
            *report.counters.entry(k).or_insert(0) += v;
        }
        if let Some(r) = t.ratio {
            if report.max_ratio.as_ref().is_none_or(|m| &r > m) {
                report.max_ratio = Some(r);
            }
        }
    }
    Ok(report)
}

const POINTS_PER_POLY: usize = 10;

fn rkt_trial(seed: u64, trial: u64) -> Result<Trial> {
    let cp = corpus_poly(seed, trial);
    let mut rng = aux(seed, trial);
    let n = cp.poly.nvars();
    let points: Vec<Vec<Rat>> = (0..POINTS_PER_POLY).map(|_| nonnegative_point(&mut rng, n)).collect();
    let rep = rkt_sweep(&cp.poly, &points, RktConstant::Proven, Sweep::Auto { seed: trial })?;
    let mut t = Trial::default();
    t.count(cp.kind());
    if rep.sampled {
        t.count("sampled");
    }
    t.checks = rep.checked;
    if !rep.verdict.holds {
        for _ in 0..rep.violations {
            t.failures.push(verdict_failure(trial, &rep.verdict, poly_to_json(&cp.poly)));
        }
    }
    Ok(t)
}

fn triples(rng: &mut ChaCha8Rng, n: usize) -> Vec<[Vec<Rat>; 3]> {
    (0..POINTS_PER_POLY)
        .map(|_| [nonnegative_point(rng, n), nonnegative_point(rng, n), nonnegative_point(rng, n)])
        .collect()
}

fn pr_trial(seed: u64, trial: u64) -> Result<Trial> {
    let cp = corpus_poly(seed, trial);
    let mut rng = aux(seed, trial);
    let mut t = Trial::default();
    t.count(cp.kind());
    for [x, y, z] in triples(&mut rng, cp.poly.nvars()) {
        let v = pr_check(&cp.poly, &x, &y, &z)?;
        t.record(v.holds, || verdict_failure(trial, &v, poly_to_json(&cp.poly)));
    }
    Ok(t)
}

fn supermod_trial(seed: u64, trial: u64) -> Result<Trial> {
    let cp = corpus_poly(seed, trial);
    let mut rng = aux(seed, trial);
    let mut t = Trial::default();
    t.count(cp.kind());
    for [x, y, z] in triples(&mut rng, cp.poly.nvars()) {
        let v = supermodularity_check(&cp.poly, &x, &y, &z)?;
        t.record(v.holds, || verdict_failure(trial, &v, poly_to_json(&cp.poly)));
    }
    Ok(t)
}

/// Both triple inequalities on one draw of the corpus.
fn pr_supermod_trial(seed: u64, trial: u64) -> Result<Trial> {
    let cp = corpus_poly(seed, trial);
    let mut rng = aux(seed, trial);
    let mut t = Trial::default();
    t.count(cp.kind());
    for [x, y, z] in triples(&mut rng, cp.poly.nvars()) {
        let pr = pr_check(&cp.poly, &x, &y, &z)?;
        t.record(pr.holds, || verdict_failure(trial, &pr, json!({"check": "pr", "poly": poly_to_json(&cp.poly)})));
        t.count("pr");
        let sm = supermodularity_check(&cp.poly, &x, &y, &z)?;
        t.record(sm.holds, || verdict_failure(trial, &sm, json!({"check": "supermod", "poly": poly_to_json(&cp.poly)})));
        t.count("supermod");
    }
    Ok(t)
}

fn af_form_trial(seed: u64, trial: u64) -> Result<Trial> {
    let cp = corpus_poly(seed, trial);
    let mut t = Trial::default();
    let (n, d) = (cp.poly.nvars(), cp.poly.degree() as usize);
    if d < 2 {
        t.count("skipped-degree-below-2");
        return Ok(t);
    }
    t.count(cp.kind());
    let mut rng = aux(seed, trial);
    for _ in 0..POINTS_PER_POLY {
        let mut vs = vec![signed_point(&mut rng, n)];
        vs.extend((1..d).map(|_| nonnegative_point(&mut rng, n)));
        let v = af_form_check(&cp.poly, &vs)?;
        t.record(v.holds, || verdict_failure(trial, &v, poly_to_json(&cp.poly)));
    }
    Ok(t)
}

fn rayleigh_trial(seed: u64, trial: u64) -> Result<Trial> {
    let cp = corpus_poly(seed, trial);
    let mut t = Trial::default();
    let d = cp.poly.degree();
    if d < 2 {
        t.count("skipped-degree-below-2");
        return Ok(t);
    }
    t.count(cp.kind());
    let mut rng = aux(seed, trial);
    let n = cp.poly.nvars();
    let points: Vec<Vec<Rat>> = (0..POINTS_PER_POLY).map(|_| nonnegative_point(&mut rng, n)).collect();
    let v = c_rayleigh_check(&cp.poly, &lorentzian_rayleigh_constant(d), &points)?;
    t.record(v.holds, || verdict_failure(trial, &v, poly_to_json(&cp.poly)));
    Ok(t)
}

fn closure_trial(seed: u64, trial: u64) -> Result<Trial> {
    let cp = corpus_poly(seed, trial);
    let f = &cp.poly;
    let mut t = Trial::default();
    t.count(cp.kind());
    let member = is_lorentzian(f);
    t.record(member.holds, || verdict_failure(trial, &member, poly_to_json(f)));
    for i in 0..f.nvars() {
        let g = f.partial_var(i)?;
        let v = is_lorentzian(&g);
        t.record(v.holds, || verdict_failure(trial, &v, json!({"poly": poly_to_json(f), "derivative": i})));
    }
    if f.degree() >= 2 && !f.is_zero() {
        let mut rng = aux(seed, trial);
        for _ in 0..3 {
            let x = positive_point(&mut rng, f.nvars());
            let pos = inertia(&f.hessian_at(&x)?).positive;
            t.record(pos == 1, || json!({"trial": trial, "x": fmt_vec(&x), "positive": pos}));
            if f.nvars() >= 2 {
                let v = quadratic_class_equiv(f, &x)?;
                t.record(v.holds, || verdict_failure(trial, &v, poly_to_json(f)));
            }
        }
    }
    Ok(t)
}

fn volume_lorentzian_trial(seed: u64, trial: u64) -> Result<Trial> {
    let mut rng = trial_rng(seed, trial);
    let n = rng.gen_range(2..=4);
    let k = rng.gen_range(1..=4);
    let bodies: Vec<Polytope> = (0..k).map(|_| random_polytope(&mut rng, n, CORPUS_VERTICES)).collect();
    let f = volume_polynomial(&bodies)?;
    let ctx = || json!({"bodies": bodies.iter().map(polytope_to_json).collect::<Vec<_>>()});
    let mut t = Trial::default();
    let v = is_lorentzian(&f);
    t.record(v.holds, || verdict_failure(trial, &v, ctx()));
    if f.is_zero() {
        t.count("zero-polynomial");
        return Ok(t);
    }
    for _ in 0..5 {
        let x = positive_point(&mut rng, k);
        let pos = inertia(&f.hessian_at(&x)?).positive;
        t.record(pos == 1, || json!({"trial": trial, "x": fmt_vec(&x), "positive": pos, "context": ctx()}));
    }
    Ok(t)
}

fn mixed_volume_trial(seed: u64, trial: u64) -> Result<Trial> {
    let mut rng = trial_rng(seed, trial);
    let n = rng.gen_range(2..=3usize);
    let bodies: Vec<Polytope> = (0..n).map(|_| random_polytope(&mut rng, n, CORPUS_VERTICES)).collect();
    let other = random_polytope(&mut rng, n, CORPUS_VERTICES);
    let ctx = || json!({"trial": trial, "bodies": bodies.iter().map(polytope_to_json).collect::<Vec<_>>()});
    let mut t = Trial::default();
    let fam = BodyFamily::new(bodies.clone())?;
    let ones = vec![1u32; n];
    let base = fam.mixed_volume(&ones)?;
    t.record(!base.is_negative(), || json!({"property": "nonnegative", "context": ctx()}));

    let mut perm: Vec<usize> = (0..n).collect();
    perm.shuffle(&mut rng);
    let permuted = BodyFamily::new(perm.iter().map(|&i| bodies[i].clone()).collect())?.mixed_volume(&ones)?;
    t.record(permuted == base, || json!({"property": "symmetry", "context": ctx()}));

    let (a, b) = (positive(&mut rng), positive(&mut rng));
    let combo = bodies[0].scale(&a)?.minkowski_sum(&other.scale(&b)?)?;
    let mut lhs_bodies = bodies.clone();
    lhs_bodies[0] = combo;
    let lhs = BodyFamily::new(lhs_bodies)?.mixed_volume(&ones)?;
    let mut other_bodies = bodies.clone();
    other_bodies[0] = other.clone();
    let rhs = &a * &base + &b * BodyFamily::new(other_bodies)?.mixed_volume(&ones)?;
    t.record(lhs == rhs, || json!({"property": "multilinear", "context": ctx()}));

    let shift = signed_point(&mut rng, n);
    let mut moved = bodies.clone();
    moved[n - 1] = moved[n - 1].translate(&shift)?;
    let translated = BodyFamily::new(moved)?.mixed_volume(&ones)?;
    t.record(translated == base, || json!({"property": "translation", "context": ctx()}));

    let i = rng.gen_range(0..n);
    let red = BodyFamily::new(vec![bodies[0].clone(), Polytope::unit_segment(n, i)])?
        .mixed_volume(&[(n - 1) as u32, 1])?;
    let proj = bodies[0].project(&[i])?.volume().clone() / Rat::from_integer(n.into());
    t.record(red == proj, || json!({"property": "reduction", "coordinate": i, "context": ctx()}));

    let pair = [bodies[0].clone(), bodies[1].clone()];
    let f = volume_polynomial(&pair)?;
    let pair_fam = BodyFamily::new(pair.to_vec())?;
    let mut agree = true;
    for a in MultiIndex::all_of_degree(2, n as u32) {
        let v = pair_fam.mixed_volume(a.exponents())?;
        let expect = Rat::from_integer(factorial(n as u32)) / Rat::from_integer(a.factorial()) * v;
        agree &= f.coefficient(&a) == expect;
    }
    t.record(agree, || json!({"property": "volume-polynomial-coefficients", "context": ctx()}));
    Ok(t)
}

fn convex_rkt_trial(seed: u64, trial: u64) -> Result<Trial> {
    let mut rng = trial_rng(seed, trial);
    let n = rng.gen_range(3..=4usize);
    let m = rng.gen_range(0..=n);
    let k = rng.gen_range(0..=m);
    let verts = if n == 4 { 4 } else { CORPUS_VERTICES };
    let b = random_polytope(&mut rng, n, verts);
    let a: Vec<Polytope> = (0..m).map(|_| random_polytope(&mut rng, n, verts)).collect();
    let mut t = Trial::default();
    t.count(&format!("n{n}-m{m}"));
    let v = rkt_convex_check(&b, &a, k)?;
    t.record(v.holds, || {
        let bodies: Vec<Value> = std::iter::once(&b).chain(&a).map(polytope_to_json).collect();
        verdict_failure(trial, &v, json!({"bodies": bodies, "k": k}))
    });
    Ok(t)
}

fn convex_pr_trial(seed: u64, trial: u64) -> Result<Trial> {
    let mut rng = trial_rng(seed, trial);
    let n = rng.gen_range(2..=3usize);
    let a = random_full_polytope(&mut rng, n, CORPUS_VERTICES);
    let b = random_nonpoint_polytope(&mut rng, n, CORPUS_VERTICES);
    let c = random_nonpoint_polytope(&mut rng, n, CORPUS_VERTICES);
    let ab = a.minkowski_sum(&b)?;
    let ac = a.minkowski_sum(&c)?;
    let abc = ab.minkowski_sum(&c)?;
    let ratio = a.volume() * abc.volume() / (ab.volume() * ac.volume());
    Ok(Trial { checks: 1, ratio: Some(ratio), ..Trial::default() })
}

fn random_partition(rng: &mut ChaCha8Rng, size: u32) -> Partition {
    let all = Partition::all_of_size(size, size.max(1));
    let chosen = all[rng.gen_range(0..all.len())].clone();
    let first = chosen.parts().first().copied().unwrap_or(1).max(1);
    let e = rng.gen_range(first..=first + 1);
    Partition::new(chosen.parts().to_vec(), e).expect("valid")
}

fn schur_af_trial(seed: u64, trial: u64) -> Result<Trial> {
    let mut rng = trial_rng(seed, trial);
    let n = rng.gen_range(3..=4usize);
    let verts = if n == 4 { 3 } else { 4 };
    let total = (n - 2) as u32;
    let mut sizes = Vec::new();
    let mut left = total;
    while left > 0 {
        let s = rng.gen_range(1..=left);
        sizes.push(s);
        left -= s;
    }
    let tuples: Vec<(Partition, Vec<Polytope>)> = sizes
        .into_iter()
        .map(|s| {
            let lambda = random_partition(&mut rng, s);
            let bodies = (0..lambda.e()).map(|_| random_polytope(&mut rng, n, verts)).collect();
            (lambda, bodies)
        })
        .collect();
    let desc: Vec<Value> = tuples.iter().map(|(l, _)| l.to_json()).collect();
    let spec = SchurValuationSpec::new(n, tuples)?;
    let m_body = random_polytope(&mut rng, n, verts);
    let n_body = random_polytope(&mut rng, n, verts);
    let mut t = Trial::default();
    let v = schur_af_check(&spec, &m_body, &n_body)?;
    t.record(v.holds, || verdict_failure(trial, &v, json!({"partitions": desc})));
    let eq = schur_af_check(&spec, &m_body, &m_body)?;
    let zero = eq.margin.as_ref().is_some_and(Zero::is_zero);
    t.record(zero, || verdict_failure(trial, &eq, json!({"property": "equality at M = N"})));
    Ok(t)
}

fn md_signature_trial(seed: u64, trial: u64) -> Result<Trial> {
    let mut rng = trial_rng(seed, trial);
    let n = rng.gen_range(2..=4usize);
    let m = rng.gen_range(2..=n);
    let hyps: Vec<_> = (0..m - 2).map(|_| random_pd_matrix(&mut rng, n)).collect();
    let w = random_pd_matrix(&mut rng, n);
    let mut t = Trial::default();
    t.count(&format!("n{n}"));
    let g = md_hodge_form(&hyps, &w, m)?;
    let ine = inertia(&g);
    let size = n * (n + 1) / 2;
    let ok = ine.positive == 1 && ine.zero == 0 && ine.negative == size - 1;
    t.record(ok, || {
        json!({"trial": trial, "inertia": ine.to_json(), "W": sym_matrix_to_json(&w), "m": m})
    });
    let a = random_pd_matrix(&mut rng, n);
    let b = random_symmetric_matrix(&mut rng, n);
    let rest: Vec<_> = (0..n - 2).map(|_| random_pd_matrix(&mut rng, n)).collect();
    let v = md_af_check(&a, &b, &rest)?;
    t.record(v.holds, || verdict_failure(trial, &v, json!({"A": sym_matrix_to_json(&a), "B": sym_matrix_to_json(&b)})));
    Ok(t)
}

/// Directions spanning the affine hull of a body.
fn directions(p: &Polytope) -> Vec<Vec<Rat>> {
    let base = &p.vertices()[0];
    p.vertices()[1..]
        .iter()
        .map(|v| v.iter().zip(base).map(|(a, b)| a - b).collect())
        .collect()
}

fn polymatroid_trial(seed: u64, trial: u64) -> Result<Trial> {
    let mut rng = trial_rng(seed, trial);
    let n = rng.gen_range(1..=4usize);
    let m = rng.gen_range(1..=n);
    let s = rng.gen_range(1..=6usize);
    let bodies: Vec<Polytope> = (0..s).map(|_| random_nonpoint_polytope(&mut rng, n, 3)).collect();
    let ctx = || json!({"trial": trial, "m": m, "bodies": bodies.iter().map(polytope_to_json).collect::<Vec<_>>()});
    let mut t = Trial::default();
    let mut oracle = RankOracle::new(GroundSet::new(bodies.clone(), m, None)?);
    let v = check_polymatroid(&mut oracle)?;
    t.record(v.holds, || verdict_failure(trial, &v, ctx()));
    let ranks = oracle.all_ranks()?;
    let dirs: Vec<Vec<Vec<Rat>>> = bodies.iter().map(directions).collect();
    for (mask, &r) in ranks.iter().enumerate().skip(1) {
        let span: Vec<Vec<Rat>> = (0..s).filter(|i| mask >> i & 1 == 1).flat_map(|i| dirs[i].clone()).collect();
        let expect = m.min(rank(&span));
        t.record(r == expect, || json!({"property": "nd-oracle", "subset": mask, "rank": r, "expected": expect, "context": ctx()}));
    }
    let plant = rng.gen_range(0..s);
    let mut planted = bodies.clone();
    planted[plant] = Polytope::point(signed_point(&mut rng, n))?;
    let mut loop_oracle = RankOracle::new(GroundSet::new(planted, m, None)?);
    let lv = check_polymatroid(&mut loop_oracle)?;
    let expected = crate::verdict::Witness::Subsets {
        property: "loopless".into(),
        first: vec![plant],
        second: vec![],
    };
    t.record(lv.witness.as_ref() == Some(&expected), || verdict_failure(trial, &lv, json!({"planted": plant})));
    Ok(t)
}

