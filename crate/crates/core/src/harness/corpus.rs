//! Deterministic random instances: rationals, points, polytopes, matrices
//! and the Lorentzian polynomial corpus. Trial `t` of seed `s` always draws
//! from the ChaCha8 stream `(s, t)`, independently of execution order.

use num::{One, Zero};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::convgeom::{volume_polynomial, Polytope};
use crate::io::{poly_to_json, polytope_to_json};
use crate::lorentz::is_lorentzian;
use crate::matrix::SymMatrix;
use crate::poly::HomPoly;
use crate::rational::{rat, Rat};

/// Largest vertex count of a random polytope.
pub const MAX_VERTICES: usize = 12;

pub fn trial_rng(seed: u64, trial: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial);
    rng
}

/// A rational in `[−4, 4]` with denominator at most 4.
pub fn coordinate(rng: &mut ChaCha8Rng) -> Rat {
    let den = rng.gen_range(1..=4i64);
    rat(rng.gen_range(-4 * den..=4 * den), den)
}

/// A positive rational `p/q`, `1 ≤ p ≤ 8`, `1 ≤ q ≤ 4`.
pub fn positive(rng: &mut ChaCha8Rng) -> Rat {
    rat(rng.gen_range(1..=8), rng.gen_range(1..=4))
}

/// A point of the closed nonnegative orthant; each coordinate is zero with probability 1/5.
pub fn nonnegative_point(rng: &mut ChaCha8Rng, n: usize) -> Vec<Rat> {
    (0..n)
        .map(|_| if rng.gen_ratio(1, 5) { Rat::zero() } else { positive(rng) })
        .collect()
}

pub fn positive_point(rng: &mut ChaCha8Rng, n: usize) -> Vec<Rat> {
    (0..n).map(|_| positive(rng)).collect()
}

pub fn signed_point(rng: &mut ChaCha8Rng, n: usize) -> Vec<Rat> {
    (0..n).map(|_| coordinate(rng)).collect()
}

/// Convex hull of `1..=max_vertices` random points of `[−4,4]^n`.
pub fn random_polytope(rng: &mut ChaCha8Rng, n: usize, max_vertices: usize) -> Polytope {
    let count = rng.gen_range(1..=max_vertices.clamp(1, MAX_VERTICES));
    let pts = (0..count).map(|_| signed_point(rng, n)).collect();
    Polytope::new(n, pts).expect("valid dimensions")
}

/// A random polytope that is not a single point.
pub fn random_nonpoint_polytope(rng: &mut ChaCha8Rng, n: usize, max_vertices: usize) -> Polytope {
    loop {
        let p = random_polytope(rng, n, max_vertices.max(2));
        if !p.is_point() {
            return p;
        }
    }
}

/// A full-dimensional random polytope.
pub fn random_full_polytope(rng: &mut ChaCha8Rng, n: usize, max_vertices: usize) -> Polytope {
    loop {
        let extra = rng.gen_range(0..=max_vertices.saturating_sub(n + 1));
        let pts = (0..n + 1 + extra).map(|_| signed_point(rng, n)).collect();
        let p = Polytope::new(n, pts).expect("valid dimensions");
        if p.affine_dim() == n {
            return p;
        }
    }
}

/// `BᵀB + I` with small integer `B`: positive definite.
pub fn random_pd_matrix(rng: &mut ChaCha8Rng, n: usize) -> SymMatrix {
    let b: Vec<Vec<i64>> = (0..n).map(|_| (0..n).map(|_| rng.gen_range(-2..=2)).collect()).collect();
    SymMatrix::from_fn(n, |i, j| {
        let s: i64 = (0..n).map(|k| b[k][i] * b[k][j]).sum();
        Rat::from_integer((s + i64::from(i == j)).into())
    })
}

pub fn random_symmetric_matrix(rng: &mut ChaCha8Rng, n: usize) -> SymMatrix {
    SymMatrix::from_fn(n, |_, _| coordinate(rng))
}

/// A linear form with nonnegative coefficients, not identically zero.
fn nonnegative_form(rng: &mut ChaCha8Rng, n: usize) -> HomPoly {
    let mut c: Vec<Rat> = (0..n)
        .map(|_| if rng.gen_ratio(3, 10) { Rat::zero() } else { positive(rng) })
        .collect();
    if c.iter().all(Zero::is_zero) {
        let i = rng.gen_range(0..n);
        c[i] = positive(rng);
    }
    HomPoly::linear_form(&c)
}

fn product_of_forms(rng: &mut ChaCha8Rng, n: usize, d: u32) -> HomPoly {
    let mut p = HomPoly::constant(n, Rat::one());
    for _ in 0..d {
        p = &p * &nonnegative_form(rng, n);
    }
    p
}

/// Largest vertex count of corpus bodies; keeps Minkowski sums small.
pub const CORPUS_VERTICES: usize = 5;

fn volume_instance(rng: &mut ChaCha8Rng, ambient: usize, k: usize) -> (HomPoly, Vec<Polytope>) {
    let bodies: Vec<Polytope> = (0..k).map(|_| random_polytope(rng, ambient, CORPUS_VERTICES)).collect();
    (volume_polynomial(&bodies).expect("shared dimension"), bodies)
}

/// How a corpus polynomial was produced.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Origin {
    Product,
    Volume(Vec<Polytope>),
    Mixture { weight: Rat },
}

#[derive(Clone, Debug)]
pub struct CorpusPoly {
    pub seed: u64,
    pub trial: u64,
    pub origin: Origin,
    pub poly: HomPoly,
}

impl CorpusPoly {
    pub fn kind(&self) -> &'static str {
        match self.origin {
            Origin::Product => "product",
            Origin::Volume(_) => "volume",
            Origin::Mixture { .. } => "mixture",
        }
    }

    pub fn to_json(&self) -> Value {
        let mut v = json!({
            "seed": self.seed,
            "trial": self.trial,
            "kind": self.kind(),
            "poly": poly_to_json(&self.poly),
        });
        match &self.origin {
            Origin::Volume(bodies) => {
                v["bodies"] = json!(bodies.iter().map(polytope_to_json).collect::<Vec<_>>());
            }
            Origin::Mixture { weight } => v["weight"] = json!(crate::rational::fmt_rat(weight)),
            Origin::Product => {}
        }
        v
    }
}

/// Trial `trial` of the Lorentzian corpus for `seed`: a product of nonnegative
/// linear forms (`n ≤ 5`, `d ≤ 5`), a volume polynomial (`k ≤ 4` bodies in
/// `ℝ^n`, `2 ≤ n ≤ 4`), or a convex combination of the two kinds that passes
/// the membership test.
pub fn corpus_poly(seed: u64, trial: u64) -> CorpusPoly {
    let mut rng = trial_rng(seed, trial);
    let make = |origin, poly| CorpusPoly { seed, trial, origin, poly };
    match rng.gen_range(0..3) {
        0 => {
            let n = rng.gen_range(1..=5);
            let d = rng.gen_range(1..=5);
            make(Origin::Product, product_of_forms(&mut rng, n, d))
        }
        1 => {
            let ambient = rng.gen_range(2..=4);
            let k = rng.gen_range(1..=4);
            let (f, bodies) = volume_instance(&mut rng, ambient, k);
            make(Origin::Volume(bodies), f)
        }
        _ => {
            let ambient = rng.gen_range(2..=4);
            let k = rng.gen_range(1..=4);
            let (f, bodies) = volume_instance(&mut rng, ambient, k);
            for _ in 0..4 {
                let g = product_of_forms(&mut rng, k, ambient as u32);
                let w = rat(rng.gen_range(1..=7), 8);
                let mix = &f.scale(&w) + &g.scale(&(Rat::one() - &w));
                if is_lorentzian(&mix).holds {
                    return make(Origin::Mixture { weight: w }, mix);
                }
            }
            make(Origin::Volume(bodies), f)
        }
    }
}
