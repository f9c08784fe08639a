//! Schur-type valuations `Θ(M, N)`: Schur polynomials in tuples of bodies,
//! expanded multilinearly into mixed volumes with two free slots.

use num::{Signed, Zero};

use super::{schur, Partition};
use crate::convgeom::{BodyFamily, Polytope};
use crate::error::{Error, Result};
use crate::rational::Rat;
use crate::verdict::{Verdict, Witness};

/// Tuples `(λⁱ, Eᵢ)` with `|Eᵢ| = e(λⁱ)` and `Σ|λⁱ| = n − 2`.
#[derive(Clone, Debug)]
pub struct SchurValuationSpec {
    dim: usize,
    tuples: Vec<(Partition, Vec<Polytope>)>,
}

impl SchurValuationSpec {
    pub fn new(dim: usize, tuples: Vec<(Partition, Vec<Polytope>)>) -> Result<Self> {
        if dim < 2 {
            return Err(Error::input("ambient dimension must be at least 2"));
        }
        for (i, (lambda, bodies)) in tuples.iter().enumerate() {
            if bodies.len() != lambda.e() as usize {
                return Err(Error::input(format!(
                    "tuple {i}: {} bodies but the partition has e = {}",
                    bodies.len(),
                    lambda.e()
                )));
            }
            if let Some(b) = bodies.iter().find(|b| b.dim() != dim) {
                return Err(Error::input(format!(
                    "tuple {i}: body in dimension {}, expected {dim}",
                    b.dim()
                )));
            }
        }
        let total: u32 = tuples.iter().map(|(l, _)| l.size()).sum();
        if total as usize != dim - 2 {
            return Err(Error::input(format!(
                "partition sizes sum to {total}, expected n - 2 = {}",
                dim - 2
            )));
        }
        Ok(SchurValuationSpec { dim, tuples })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn tuples(&self) -> &[(Partition, Vec<Polytope>)] {
        &self.tuples
    }

    /// All monomial terms of `Π s_{λⁱ}(Eᵢ)` as (coefficient, body multiplicities)
    /// over the flattened body list.
    fn expansion(&self) -> Result<Vec<(Rat, Vec<u32>)>> {
        let mut terms: Vec<(Rat, Vec<u32>)> = vec![(Rat::from_integer(1.into()), vec![])];
        for (lambda, _) in &self.tuples {
            let s = schur(lambda, lambda.e())?;
            let mut next = Vec::new();
            for (c, mults) in &terms {
                for (exp, coef) in s.terms() {
                    let mut m = mults.clone();
                    m.extend_from_slice(exp.exponents());
                    next.push((c * coef, m));
                }
            }
            terms = next;
        }
        Ok(terms)
    }
}

fn check_slots(spec: &SchurValuationSpec, m: &Polytope, n: &Polytope) -> Result<()> {
    for (name, p) in [("M", m), ("N", n)] {
        if p.dim() != spec.dim {
            return Err(Error::input(format!(
                "{name} lives in dimension {}, expected {}",
                p.dim(),
                spec.dim
            )));
        }
    }
    Ok(())
}

struct Evaluator {
    family: BodyFamily,
    terms: Vec<(Rat, Vec<u32>)>,
}

impl Evaluator {
    fn new(spec: &SchurValuationSpec, m: &Polytope, n: &Polytope) -> Result<Self> {
        check_slots(spec, m, n)?;
        let mut bodies: Vec<Polytope> = spec.tuples.iter().flat_map(|(_, b)| b.iter().cloned()).collect();
        bodies.push(m.clone());
        bodies.push(n.clone());
        Ok(Evaluator { family: BodyFamily::new(bodies)?, terms: spec.expansion()? })
    }

    /// `Θ` with the free slots filled by multiplicities `(a, b)` of `M`, `N`.
    fn theta(&self, slots: [u32; 2]) -> Result<Rat> {
        let mut acc = Rat::zero();
        for (c, mults) in &self.terms {
            let mut full = mults.clone();
            full.extend_from_slice(&slots);
            acc += c * self.family.mixed_volume(&full)?;
        }
        Ok(acc)
    }
}

/// `Θ(M, N) = Σ c·V(bodies..., M, N)` over the monomials of the Schur product.
pub fn schur_valuation(spec: &SchurValuationSpec, m: &Polytope, n: &Polytope) -> Result<Rat> {
    Evaluator::new(spec, m, n)?.theta([1, 1])
}

/// `Θ(M,N)² ≥ Θ(M,M)·Θ(N,N)`; margin `LHS − RHS`.
pub fn schur_af_check(spec: &SchurValuationSpec, m: &Polytope, n: &Polytope) -> Result<Verdict> {
    let ev = Evaluator::new(spec, m, n)?;
    let mn = ev.theta([1, 1])?;
    let mm = ev.theta([2, 0])?;
    let nn = ev.theta([0, 2])?;
    debug_assert!(!mm.is_negative() && !nn.is_negative());
    let margin = &mn * &mn - mm * nn;
    Ok(Verdict::from_margin(margin, || Witness::Configuration {
        description: "M = first free body, N = second free body".into(),
    }))
}
