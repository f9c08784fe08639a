//! Executable inequality catalog for Lorentzian polynomials: reverse
//! Khovanskii–Teissier (with the proven constant and the conjectural
//! binomial one), Plünnecke–Ruzsa, higher-order supermodularity and the
//! Hodge-index form of the polarization.
//!
//! Margins are `RHS − LHS` for the upper-bound inequalities (rKT, PR) and
//! `LHS − RHS` for the lower-bound ones (supermodularity, AF form), so a
//! negative margin always means a violation.

use num::{BigInt, One, Zero};
use rand::seq::index::sample;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::derivs::DerivativeTable;
use crate::error::{Error, Result};
use crate::poly::{HomPoly, MultiIndex};
use crate::rational::{binomial, factorial, is_nonnegative, Rat};
use crate::verdict::{Verdict, Witness};

/// Splitting counts up to this size are swept exhaustively in auto mode.
pub const FULL_SWEEP_LIMIT: u64 = 10_000;
/// Sample size used by auto mode above the limit.
pub const AUTO_SAMPLES: usize = 1_000;
const MAX_MATERIALIZED: u64 = 5_000_000;

fn admissible(d: u32, k: u32, l: u32) -> Result<()> {
    if k + l > d {
        return Err(Error::input(format!("|beta| + |gamma| = {} exceeds degree {d}", k + l)));
    }
    Ok(())
}

fn falling_ratio(d: u32, k: u32, l: u32) -> Rat {
    Rat::new(
        factorial(d - k) * factorial(d - l),
        factorial(d) * factorial(d - k - l),
    )
}

/// `2^{kl}·(d−k)!(d−l)!/(d!(d−k−l)!)`.
pub fn rkt_constant(d: u32, k: u32, l: u32) -> Result<Rat> {
    admissible(d, k, l)?;
    Ok(falling_ratio(d, k, l) * Rat::from_integer(BigInt::one() << (k * l) as usize))
}

/// `binom(k+l, k)·(d−k)!(d−l)!/(d!(d−k−l)!)`: the proven constant with `2^{kl}`
/// replaced by the binomial coefficient. It is `1` when `k + l = d`, where the
/// inequality becomes the nef-class rKT bound with constant `d!/(k!(d−k)!)`
/// after normalizing derivatives to intersection numbers.
pub fn rkt_optimal_constant(d: u32, k: u32, l: u32) -> Result<Rat> {
    admissible(d, k, l)?;
    Ok(falling_ratio(d, k, l) * Rat::from_integer(binomial(k + l, k)))
}

/// `c_d`: the maximum of [`rkt_constant`] over every admissible `(k, l)`.
pub fn pr_constant(d: u32) -> Rat {
    let mut best = Rat::one();
    for k in 0..=d {
        for l in 0..=(d - k) {
            let c = rkt_constant(d, k, l).expect("admissible by construction");
            if c > best {
                best = c;
            }
        }
    }
    best
}

/// Which constant an rKT check uses.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RktConstant {
    Proven,
    Optimal,
}

impl RktConstant {
    pub fn value(self, d: u32, k: u32, l: u32) -> Result<Rat> {
        match self {
            RktConstant::Proven => rkt_constant(d, k, l),
            RktConstant::Optimal => rkt_optimal_constant(d, k, l),
        }
    }
}

fn check_point(x: &[Rat], n: usize, what: &str) -> Result<()> {
    if x.len() != n {
        return Err(Error::input(format!("{what} has length {} but nvars = {n}", x.len())));
    }
    if !is_nonnegative(x) {
        return Err(Error::input(format!("{what} must lie in the nonnegative orthant")));
    }
    Ok(())
}

/// One rKT instance `(f, x, β, γ)`.
#[derive(Clone, Debug)]
pub struct RktInstance {
    pub f: HomPoly,
    pub x: Vec<Rat>,
    pub beta: MultiIndex,
    pub gamma: MultiIndex,
}

impl RktInstance {
    pub fn new(f: HomPoly, x: Vec<Rat>, beta: MultiIndex, gamma: MultiIndex) -> Result<Self> {
        let n = f.nvars();
        check_point(&x, n, "point")?;
        if beta.len() != n || gamma.len() != n {
            return Err(Error::input("beta and gamma must have length nvars"));
        }
        admissible(f.degree(), beta.degree(), gamma.degree())?;
        Ok(RktInstance { f, x, beta, gamma })
    }
}

fn rkt_with(inst: &RktInstance, which: RktConstant) -> Result<Verdict> {
    let f = &inst.f;
    let c = which.value(f.degree(), inst.beta.degree(), inst.gamma.degree())?;
    let value = |a: &MultiIndex| -> Result<Rat> { f.partial(a)?.evaluate(&inst.x) };
    let alpha = inst.beta.plus(&inst.gamma);
    let lhs = f.evaluate(&inst.x)? * value(&alpha)?;
    let rhs = c * value(&inst.beta)? * value(&inst.gamma)?;
    Ok(Verdict::from_margin(rhs - lhs, || Witness::Splitting {
        x: inst.x.clone(),
        beta: inst.beta.clone(),
        gamma: inst.gamma.clone(),
    }))
}

/// `f(x)·∂^{β+γ}f(x) ≤ rkt_constant·∂^βf(x)·∂^γf(x)`; margin `RHS − LHS`.
pub fn rkt_check(inst: &RktInstance) -> Result<Verdict> {
    rkt_with(inst, RktConstant::Proven)
}

/// Same inequality with [`rkt_optimal_constant`]; an empirical hypothesis
/// outside volume polynomials.
pub fn rkt_optimal_check(inst: &RktInstance) -> Result<Verdict> {
    rkt_with(inst, RktConstant::Optimal)
}

/// How the `(β, γ)` splittings of a sweep are chosen.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Sweep {
    Full,
    /// A uniform sample without replacement; the whole set if it is smaller.
    Sample { samples: usize, seed: u64 },
    /// Full up to [`FULL_SWEEP_LIMIT`] splittings, else [`AUTO_SAMPLES`] seeded samples.
    Auto { seed: u64 },
}

/// Number of pairs `(β, γ)` in `ℕⁿ × ℕⁿ` with `|β| + |γ| ≤ d`.
pub fn splitting_count(n: usize, d: u32) -> u64 {
    let c = binomial(2 * n as u32 + d, d);
    u64::try_from(c).unwrap_or(u64::MAX)
}

/// All splittings in enumeration order: `β` over [`MultiIndex::all_up_to_degree`],
/// then `γ` likewise with `|γ| ≤ d − |β|`.
pub fn all_splittings(n: usize, d: u32) -> Vec<(MultiIndex, MultiIndex)> {
    let mut out = Vec::new();
    for beta in MultiIndex::all_up_to_degree(n, d) {
        for gamma in MultiIndex::all_up_to_degree(n, d - beta.degree()) {
            out.push((beta.clone(), gamma));
        }
    }
    out
}

/// Outcome of an rKT sweep.
#[derive(Clone, Debug)]
pub struct SweepReport {
    pub verdict: Verdict,
    pub checked: u64,
    pub violations: u64,
    pub sampled: bool,
}

/// Checks every selected splitting at every point. The reported witness is
/// the first violation in (point index, splitting order); the margin is exact.
pub fn rkt_sweep(
    f: &HomPoly,
    points: &[Vec<Rat>],
    which: RktConstant,
    sweep: Sweep,
) -> Result<SweepReport> {
    let n = f.nvars();
    let d = f.degree();
    for x in points {
        check_point(x, n, "point")?;
    }
    let total = splitting_count(n, d);
    let (sample_size, seed) = match sweep {
        Sweep::Full => (None, 0),
        Sweep::Sample { samples, seed } => (Some(samples), seed),
        Sweep::Auto { seed } if total > FULL_SWEEP_LIMIT => (Some(AUTO_SAMPLES), seed),
        Sweep::Auto { .. } => (None, 0),
    };
    if total > MAX_MATERIALIZED {
        return Err(Error::budget(format!("{total} splittings exceed the sweep budget")));
    }
    let splits = all_splittings(n, d);
    let sampled = sample_size.is_some_and(|s| s < splits.len());

    let mut constants = vec![vec![(BigInt::zero(), BigInt::one()); d as usize + 1]; d as usize + 1];
    for k in 0..=d {
        for l in 0..=(d - k) {
            let c = which.value(d, k, l)?;
            constants[k as usize][l as usize] = (c.numer().clone(), c.denom().clone());
        }
    }

    let per_point: Vec<Result<(u64, u64, Option<(usize, BigInt, u32)>, DerivativeTable)>> = points
        .par_iter()
        .enumerate()
        .map(|(pi, x)| {
            let chosen: Vec<usize> = match sample_size {
                Some(s) if s < splits.len() => {
                    let mut rng = ChaCha8Rng::seed_from_u64(seed);
                    rng.set_stream(pi as u64);
                    let mut idx = sample(&mut rng, splits.len(), s).into_vec();
                    idx.sort_unstable();
                    idx
                }
                _ => (0..splits.len()).collect(),
            };
            let t = DerivativeTable::new(f, x)?;
            let origin = t.scaled(0).clone();
            let mut first = None;
            let mut violations = 0u64;
            for &si in &chosen {
                let (beta, gamma) = &splits[si];
                let (cb, cg) = (t.code(beta), t.code(gamma));
                let (k, l) = (beta.degree(), gamma.degree());
                let (p, q) = &constants[k as usize][l as usize];
                let lhs = &origin * t.scaled(cb + cg);
                let rhs = t.scaled(cb) * t.scaled(cg);
                if &lhs * q > &rhs * p {
                    violations += 1;
                    if first.is_none() {
                        let diff = rhs * p - lhs * q;
                        first = Some((si, diff, 2 * d - k - l));
                    }
                }
            }
            Ok((chosen.len() as u64, violations, first, t))
        })
        .collect();

    let mut checked = 0;
    let mut violations = 0;
    let mut verdict = Verdict::pass();
    for (pi, r) in per_point.into_iter().enumerate() {
        let (c, v, first, t) = r?;
        checked += c;
        violations += v;
        if let (Some((si, diff, point_power)), true) = (first, verdict.holds) {
            let (beta, gamma) = &splits[si];
            let (k, l) = (beta.degree(), gamma.degree());
            let q = &constants[k as usize][l as usize].1;
            let margin = t.unscale(diff, point_power, 2) / Rat::from_integer(q.clone());
            verdict = Verdict::fail(Witness::Splitting {
                x: points[pi].clone(),
                beta: beta.clone(),
                gamma: gamma.clone(),
            })
            .with_margin(margin);
        }
    }
    Ok(SweepReport { verdict, checked, violations, sampled })
}

fn add(a: &[Rat], b: &[Rat]) -> Vec<Rat> {
    a.iter().zip(b).map(|(u, v)| u + v).collect()
}

fn triple_witness(x: &[Rat], y: &[Rat], z: &[Rat]) -> Witness {
    Witness::Triple { x: x.to_vec(), y: y.to_vec(), z: z.to_vec() }
}

/// `f(x)·f(x+y+z) ≤ c_d·f(x+y)·f(x+z)`; margin `RHS − LHS`.
pub fn pr_check(f: &HomPoly, x: &[Rat], y: &[Rat], z: &[Rat]) -> Result<Verdict> {
    let n = f.nvars();
    for (v, name) in [(x, "x"), (y, "y"), (z, "z")] {
        check_point(v, n, name)?;
    }
    let xy = add(x, y);
    let xz = add(x, z);
    let xyz = add(&xy, z);
    let lhs = f.evaluate(x)? * f.evaluate(&xyz)?;
    let rhs = pr_constant(f.degree()) * f.evaluate(&xy)? * f.evaluate(&xz)?;
    Ok(Verdict::from_margin(rhs - lhs, || triple_witness(x, y, z)))
}

/// `f(x+y+z) + f(x) ≥ f(x+y) + f(x+z)`; margin `LHS − RHS`. Accepts any
/// coefficients so that non-members can be probed.
pub fn supermodularity_check(f: &HomPoly, x: &[Rat], y: &[Rat], z: &[Rat]) -> Result<Verdict> {
    let n = f.nvars();
    for (v, name) in [(x, "x"), (y, "y"), (z, "z")] {
        check_point(v, n, name)?;
    }
    let xy = add(x, y);
    let xz = add(x, z);
    let xyz = add(&xy, z);
    let margin = f.evaluate(&xyz)? + f.evaluate(x)? - f.evaluate(&xy)? - f.evaluate(&xz)?;
    Ok(Verdict::from_margin(margin, || triple_witness(x, y, z)))
}

/// `F(v₁,v₂,v₃..)² ≥ F(v₁,v₁,v₃..)·F(v₂,v₂,v₃..)` for the complete homogeneous
/// form `F` of `f`; `v₁` is unrestricted, the rest nonnegative. Margin `LHS − RHS`.
pub fn af_form_check(f: &HomPoly, vectors: &[Vec<Rat>]) -> Result<Verdict> {
    let d = f.degree() as usize;
    if d < 2 {
        return Err(Error::input("the Hodge-index form needs degree >= 2"));
    }
    if vectors.len() != d {
        return Err(Error::input(format!("expected {d} vectors, got {}", vectors.len())));
    }
    if vectors[0].len() != f.nvars() {
        return Err(Error::input("v1 must have length nvars"));
    }
    for (i, v) in vectors.iter().enumerate().skip(1) {
        check_point(v, f.nvars(), &format!("v{}", i + 1))?;
    }
    let with = |a: &Vec<Rat>, b: &Vec<Rat>| -> Result<Rat> {
        let mut args = vec![a.clone(), b.clone()];
        args.extend_from_slice(&vectors[2..]);
        f.multilinear_form(&args)
    };
    let (v1, v2) = (&vectors[0], &vectors[1]);
    let mixed = with(v1, v2)?;
    let margin = &mixed * &mixed - with(v1, v1)? * with(v2, v2)?;
    Ok(Verdict::from_margin(margin, || Witness::Vectors { vectors: vectors.to_vec() }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, rat};

    fn mi(v: &[u32]) -> MultiIndex {
        MultiIndex::new(v.to_vec())
    }

    fn non_volume_cubic() -> HomPoly {
        let t: &[(&[u32], i64)] = &[
            (&[3, 0, 0], 14),
            (&[2, 1, 0], 6),
            (&[2, 0, 1], 24),
            (&[1, 1, 1], 12),
            (&[1, 0, 2], 6),
            (&[0, 1, 2], 3),
        ];
        let pairs: Vec<(&[u32], Rat)> = t.iter().map(|(e, c)| (*e, int(*c))).collect();
        HomPoly::from_pairs(3, 3, &pairs).unwrap()
    }

    #[test]
    fn constant_examples() {
        assert_eq!(rkt_constant(3, 0, 2).unwrap(), int(1));
        assert_eq!(rkt_constant(3, 1, 1).unwrap(), rat(4, 3));
        assert_eq!(rkt_constant(4, 2, 2).unwrap(), rat(8, 3));
        assert!(rkt_constant(3, 2, 2).is_err());
        assert_eq!(pr_constant(1), int(1));
        assert_eq!(pr_constant(2), int(1));
        assert_eq!(pr_constant(4), rat(8, 3));
        assert_eq!(rkt_optimal_constant(4, 2, 2).unwrap(), int(1));
        assert_eq!(rkt_optimal_constant(3, 1, 1).unwrap(), rat(4, 3));
        assert_eq!(rkt_optimal_constant(5, 2, 1).unwrap(), rat(9, 5));
    }

    #[test]
    fn splitting_enumeration_counts() {
        for (n, d) in [(1, 0), (2, 3), (3, 3), (4, 2)] {
            assert_eq!(all_splittings(n, d).len() as u64, splitting_count(n, d));
        }
    }

    #[test]
    fn single_instances() {
        let cube = HomPoly::linear_form(&[int(1), int(1)]).pow(3);
        let one = vec![int(1), int(1)];
        let inst = RktInstance::new(cube.clone(), one.clone(), mi(&[1, 0]), mi(&[0, 1])).unwrap();
        // 8·48 vs 4/3·12·12 = 192
        let v = rkt_check(&inst).unwrap();
        assert!(v.holds);
        assert_eq!(v.margin, Some(int(192) - int(8) * int(6) * int(2)));
        let zero = RktInstance::new(cube, one, mi(&[0, 0]), mi(&[1, 1])).unwrap();
        assert_eq!(rkt_check(&zero).unwrap().margin, Some(int(0)));
        assert!(RktInstance::new(non_volume_cubic(), vec![int(1); 3], mi(&[2, 0, 0]), mi(&[0, 2, 0])).is_err());
    }

    #[test]
    fn non_volume_cubic_sweeps() {
        let pts: Vec<Vec<Rat>> = vec![
            vec![int(1), int(0), int(0)],
            vec![int(0), int(1), int(0)],
            vec![int(0), int(0), int(1)],
            vec![int(1), int(1), int(1)],
        ];
        let proven = rkt_sweep(&non_volume_cubic(), &pts, RktConstant::Proven, Sweep::Full).unwrap();
        assert!(proven.verdict.holds);
        assert_eq!(proven.checked, 4 * splitting_count(3, 3));
        let opt = rkt_sweep(&non_volume_cubic(), &pts, RktConstant::Optimal, Sweep::Full).unwrap();
        assert!(!opt.verdict.holds);
        assert_eq!(opt.violations, 4);
        assert_eq!(
            opt.verdict.witness,
            Some(Witness::Splitting {
                x: pts[0].clone(),
                beta: mi(&[0, 1, 0]),
                gamma: mi(&[0, 0, 2]),
            })
        );
        assert_eq!(opt.verdict.margin, Some(int(72 - 84)));
    }

    #[test]
    fn sweep_matches_single_checks() {
        let f = non_volume_cubic();
        let x = vec![rat(1, 2), int(2), rat(1, 3)];
        let rep = rkt_sweep(&f, &[x.clone()], RktConstant::Optimal, Sweep::Full).unwrap();
        let mut expected = 0;
        for (b, g) in all_splittings(3, 3) {
            let inst = RktInstance::new(f.clone(), x.clone(), b, g).unwrap();
            if !rkt_optimal_check(&inst).unwrap().holds {
                expected += 1;
            }
        }
        assert_eq!(rep.violations, expected);
    }

    #[test]
    fn sampled_sweeps_are_deterministic() {
        let f = HomPoly::linear_form(&[int(1), int(2), int(3), int(1), int(1)]).pow(5);
        let pts = vec![vec![int(1); 5]];
        assert!(splitting_count(5, 5) < FULL_SWEEP_LIMIT);
        let s = Sweep::Sample { samples: 100, seed: 7 };
        let a = rkt_sweep(&f, &pts, RktConstant::Proven, s).unwrap();
        assert!(a.sampled && a.verdict.holds);
        assert_eq!(a.checked, 100);
        assert!(!rkt_sweep(&f, &pts, RktConstant::Proven, Sweep::Auto { seed: 1 }).unwrap().sampled);
    }

    #[test]
    fn pr_supermod_af_examples() {
        let f = non_volume_cubic();
        let x = vec![int(1), int(2), int(0)];
        let zero = vec![int(0); 3];
        let v = pr_check(&f, &x, &zero, &zero).unwrap();
        assert!(v.holds);
        assert!(supermodularity_check(&f, &x, &zero, &x).unwrap().margin == Some(int(0)));
        assert!(pr_check(&f, &x, &[int(-1), int(0), int(0)], &zero).is_err());

        let definite = HomPoly::from_pairs(2, 2, &[(&[2, 0], int(1)), (&[0, 2], int(1))]).unwrap();
        let v = af_form_check(&definite, &[vec![int(1), int(-1)], vec![int(1), int(1)]]).unwrap();
        assert!(!v.holds);
        assert_eq!(v.margin, Some(int(-4)));
        let w = vec![int(2), int(1), int(3)];
        let eq = af_form_check(&f, &[w.clone(), w.clone(), x.clone()]).unwrap();
        assert_eq!(eq.margin, Some(int(0)));
        assert!(af_form_check(&f, &[w.clone(), vec![int(-1), int(0), int(0)], x]).is_err());

        // x1^2 - x1 x2 is not supermodular along (e2, e2)
        let raw = HomPoly::from_pairs(2, 2, &[(&[2, 0], int(1)), (&[1, 1], int(-1))]).unwrap();
        let e1 = vec![int(1), int(0)];
        let e2 = vec![int(0), int(1)];
        assert!(supermodularity_check(&raw, &e1, &e1, &e2).unwrap().holds == false);
    }
}
