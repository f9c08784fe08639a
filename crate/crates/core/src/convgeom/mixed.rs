//! Mixed volumes by polarization, volume polynomials by interpolation, and
//! the convex rKT inequalities built on them.

use std::collections::HashMap;
use std::sync::Mutex;

use num::{One, Signed, Zero};
use rayon::prelude::*;
use serde_json::{json, Value};

use super::{minkowski_sum_all, Polytope};
use crate::error::{Error, Result};
use crate::lorentz::c_rayleigh_check;
use crate::matrix::solve;
use crate::poly::{HomPoly, MultiIndex};
use crate::rational::{binomial, factorial, fmt_rat, int, Rat};
use crate::verdict::{Verdict, Witness};

/// Bodies in a common ambient space with a cache of `vol(Σ wᵢKᵢ)` for
/// integer weight vectors `w`.
pub struct BodyFamily {
    dim: usize,
    bodies: Vec<Polytope>,
    cache: Mutex<HashMap<Vec<u32>, Rat>>,
}

impl BodyFamily {
    pub fn new(bodies: Vec<Polytope>) -> Result<Self> {
        let dim = bodies
            .first()
            .ok_or_else(|| Error::input("a body family needs at least one body"))?
            .dim();
        if let Some(i) = bodies.iter().position(|b| b.dim() != dim) {
            return Err(Error::input(format!(
                "body {i} lives in dimension {}, expected {dim}",
                bodies[i].dim()
            )));
        }
        Ok(BodyFamily { dim, bodies, cache: Mutex::new(HashMap::new()) })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn bodies(&self) -> &[Polytope] {
        &self.bodies
    }

    fn compute(&self, weights: &[u32]) -> Rat {
        let scaled: Vec<Polytope> = weights
            .iter()
            .zip(&self.bodies)
            .filter(|(&w, _)| w > 0)
            .map(|(&w, b)| b.scale(&int(w as i64)).expect("nonnegative weight"))
            .collect();
        if scaled.is_empty() {
            return Rat::zero();
        }
        let refs: Vec<&Polytope> = scaled.iter().collect();
        minkowski_sum_all(&refs).expect("shared dimension").volume().clone()
    }

    /// `vol(Σ wᵢKᵢ)` for every weight vector, computing misses in parallel.
    pub fn combination_volumes(&self, weights: &[Vec<u32>]) -> Vec<Rat> {
        let missing: Vec<Vec<u32>> = {
            let cache = self.cache.lock().unwrap();
            let mut m: Vec<Vec<u32>> = weights.iter().filter(|w| !cache.contains_key(*w)).cloned().collect();
            m.sort();
            m.dedup();
            m
        };
        let computed: Vec<(Vec<u32>, Rat)> = missing
            .into_par_iter()
            .map(|w| {
                let v = self.compute(&w);
                (w, v)
            })
            .collect();
        let mut cache = self.cache.lock().unwrap();
        cache.extend(computed);
        weights.iter().map(|w| cache[w].clone()).collect()
    }

    pub fn combination_volume(&self, weights: &[u32]) -> Rat {
        self.combination_volumes(&[weights.to_vec()]).remove(0)
    }

    /// `V(K₁[i₁], ..., K_r[i_r])` by inclusion–exclusion over sub-multisets.
    pub fn mixed_volume(&self, multiplicities: &[u32]) -> Result<Rat> {
        if multiplicities.len() != self.bodies.len() {
            return Err(Error::input(format!(
                "{} multiplicities for {} bodies",
                multiplicities.len(),
                self.bodies.len()
            )));
        }
        let total: u32 = multiplicities.iter().sum();
        if total as usize != self.dim {
            return Err(Error::input(format!(
                "multiplicities sum to {total}, expected the dimension {}",
                self.dim
            )));
        }
        let active: Vec<usize> = (0..multiplicities.len()).filter(|&i| multiplicities[i] > 0).collect();
        if let [only] = active[..] {
            return Ok(self.bodies[only].volume().clone());
        }
        let mut subs: Vec<Vec<u32>> = vec![vec![]];
        for &m in multiplicities {
            subs = subs
                .into_iter()
                .flat_map(|s| {
                    (0..=m).map(move |j| {
                        let mut t = s.clone();
                        t.push(j);
                        t
                    })
                })
                .collect();
        }
        subs.retain(|s| s.iter().any(|&j| j > 0));
        let vols = self.combination_volumes(&subs);
        let mut acc = Rat::zero();
        for (s, v) in subs.iter().zip(vols) {
            let mut c = num::BigInt::one();
            for (&m, &j) in multiplicities.iter().zip(s) {
                c *= binomial(m, j);
            }
            let size: u32 = s.iter().sum();
            let term = Rat::from_integer(c) * v;
            if (total - size) % 2 == 1 {
                acc -= term;
            } else {
                acc += term;
            }
        }
        Ok(acc / Rat::from_integer(factorial(total)))
    }

    /// `vol(Σ xᵢKᵢ)` as a polynomial, interpolated on `{x ∈ ℕ^k : |x| = n}`.
    pub fn volume_polynomial(&self) -> Result<HomPoly> {
        let k = self.bodies.len();
        let n = self.dim as u32;
        let nodes: Vec<Vec<u32>> = MultiIndex::all_of_degree(k, n)
            .into_iter()
            .map(|m| m.exponents().to_vec())
            .collect();
        let monomials = MultiIndex::all_of_degree(k, n);
        let values = self.combination_volumes(&nodes);
        let system: Vec<Vec<Rat>> = nodes
            .iter()
            .map(|x| {
                monomials
                    .iter()
                    .map(|a| {
                        let mut p = num::BigInt::one();
                        for (&xi, &ai) in x.iter().zip(a.exponents()) {
                            p *= num::pow(num::BigInt::from(xi), ai as usize);
                        }
                        Rat::from_integer(p)
                    })
                    .collect()
            })
            .collect();
        let coeffs = solve(&system, &values)
            .ok_or_else(|| Error::precondition("interpolation system is singular"))?;
        HomPoly::new(k, n, monomials.into_iter().zip(coeffs))
    }
}

/// Bodies with multiplicities summing to the ambient dimension.
#[derive(Clone, Debug)]
pub struct MixedVolumeSpec {
    pub bodies: Vec<Polytope>,
    pub multiplicities: Vec<u32>,
}

impl MixedVolumeSpec {
    pub fn new(bodies: Vec<Polytope>, multiplicities: Vec<u32>) -> Result<Self> {
        if bodies.len() != multiplicities.len() {
            return Err(Error::input("bodies and multiplicities must have equal length"));
        }
        let fam = BodyFamily::new(bodies.clone())?;
        let total: u32 = multiplicities.iter().sum();
        if total as usize != fam.dim() {
            return Err(Error::input(format!(
                "multiplicities sum to {total}, expected the dimension {}",
                fam.dim()
            )));
        }
        Ok(MixedVolumeSpec { bodies, multiplicities })
    }
}

pub fn mixed_volume(spec: &MixedVolumeSpec) -> Result<Rat> {
    BodyFamily::new(spec.bodies.clone())?.mixed_volume(&spec.multiplicities)
}

pub fn volume_polynomial(bodies: &[Polytope]) -> Result<HomPoly> {
    BodyFamily::new(bodies.to_vec())?.volume_polynomial()
}

/// `vol(B)·V(B[n−m], A₁..A_m) ≤ binom(m,k)·V(B[n−k], A₁..A_k)·V(B[n−m+k], A_{k+1}..A_m)`;
/// margin `RHS − LHS`.
pub fn rkt_convex_check(b: &Polytope, a: &[Polytope], k: usize) -> Result<Verdict> {
    let n = b.dim();
    let m = a.len();
    if k > m || m > n {
        return Err(Error::input(format!("need 0 <= k <= m <= n, got k = {k}, m = {m}, n = {n}")));
    }
    let mut bodies = vec![b.clone()];
    bodies.extend_from_slice(a);
    let fam = BodyFamily::new(bodies)?;
    let mults = |lead: usize, ones: &dyn Fn(usize) -> bool| -> Vec<u32> {
        std::iter::once(lead as u32).chain((0..m).map(|i| ones(i) as u32)).collect()
    };
    let all = fam.mixed_volume(&mults(n - m, &|_| true))?;
    let first = fam.mixed_volume(&mults(n - k, &|i| i < k))?;
    let second = fam.mixed_volume(&mults(n - m + k, &|i| i >= k))?;
    let lhs = b.volume() * all;
    let rhs = Rat::from_integer(binomial(m as u32, k as u32)) * first * second;
    Ok(Verdict::from_margin(rhs - lhs, || Witness::Configuration {
        description: format!("B = body 0, A = bodies 1..={m}, k = {k}"),
    }))
}

/// The bipyramid instance separating the `c = 1` bound from `2(1 − 1/n)`.
#[derive(Clone, Debug)]
pub struct RayleighCounterexample {
    pub volume: Rat,
    pub volume_p1: Rat,
    pub volume_p2: Rat,
    pub volume_p12: Rat,
    pub lhs: Rat,
    pub rhs_one: Rat,
    pub rhs_sharp: Rat,
    /// `LHS ≤ RHS₁`; expected to fail.
    pub one_bound: Verdict,
    /// `LHS ≤ RHS₂`; expected to hold with equality.
    pub sharp_bound: Verdict,
    /// `f(t,x₁,x₂) = vol(tB + x₁[0,e₁] + x₂[0,e₂])`.
    pub volume_poly: HomPoly,
    /// The `c = 1` Rayleigh check of `f` at `(1,0,0)`.
    pub poly_one_rayleigh: Verdict,
    /// The `c = 4/3` Rayleigh check of `f` at `(1,0,0)`.
    pub poly_sharp_rayleigh: Verdict,
}

impl RayleighCounterexample {
    pub fn to_json(&self) -> Value {
        json!({
            "vol_B": fmt_rat(&self.volume),
            "vol_p1_B": fmt_rat(&self.volume_p1),
            "vol_p2_B": fmt_rat(&self.volume_p2),
            "vol_p12_B": fmt_rat(&self.volume_p12),
            "lhs": fmt_rat(&self.lhs),
            "rhs_c1": fmt_rat(&self.rhs_one),
            "rhs_sharp": fmt_rat(&self.rhs_sharp),
            "c1_bound": self.one_bound.to_json(),
            "sharp_bound": self.sharp_bound.to_json(),
            "volume_polynomial": self.volume_poly.to_string(),
            "poly_rayleigh_c1": self.poly_one_rayleigh.to_json(),
            "poly_rayleigh_sharp": self.poly_sharp_rayleigh.to_json(),
        })
    }
}

pub fn one_rayleigh_counterexample_report() -> RayleighCounterexample {
    let b = Polytope::bipyramid();
    let n = b.dim() as i64;
    let volume = b.volume().clone();
    let volume_p1 = b.project(&[0]).expect("valid").volume().clone();
    let volume_p2 = b.project(&[1]).expect("valid").volume().clone();
    let volume_p12 = b.project(&[0, 1]).expect("valid").volume().clone();
    let lhs = &volume * &volume_p12;
    let rhs_one = &volume_p1 * &volume_p2;
    let sharp = int(2) * (Rat::one() - Rat::new(1.into(), n.into()));
    let rhs_sharp = &sharp * &rhs_one;
    let witness = || Witness::Configuration {
        description: "vol(B)vol(p12 B) vs vol(p1 B)vol(p2 B)".into(),
    };
    let one_bound = Verdict::from_margin(&rhs_one - &lhs, witness);
    let sharp_bound = Verdict::from_margin(&rhs_sharp - &lhs, witness);
    let volume_poly = volume_polynomial(&[b, Polytope::unit_segment(3, 0), Polytope::unit_segment(3, 1)])
        .expect("shared dimension");
    let at = vec![vec![int(1), int(0), int(0)]];
    let poly_one_rayleigh = c_rayleigh_check(&volume_poly, &int(1), &at).expect("nonnegative");
    let poly_sharp_rayleigh = c_rayleigh_check(&volume_poly, &sharp, &at).expect("nonnegative");
    debug_assert!(!lhs.is_negative());
    RayleighCounterexample {
        volume,
        volume_p1,
        volume_p2,
        volume_p12,
        lhs,
        rhs_one,
        rhs_sharp,
        one_bound,
        sharp_bound,
        volume_poly,
        poly_one_rayleigh,
        poly_sharp_rayleigh,
    }
}
