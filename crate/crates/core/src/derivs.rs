//! Tables of all partial derivatives `∂^α f(x)`, `|α| ≤ d`, at one point.
//!
//! Checkers compare products of derivative values; every such inequality is
//! homogeneous in both the coefficients of `f` and the point, so the table
//! works on the integer rescaling `L·f` at `q·x` and keeps the scale factors
//! to recover exact values.

use num::{BigInt, One, Zero};

use crate::error::{Error, Result};
use crate::poly::{HomPoly, MultiIndex};
use crate::rational::{big, common_denominator, to_integers, Rat};

const MAX_DENSE: usize = 1 << 22;

pub struct DerivativeTable {
    nvars: usize,
    degree: u32,
    base: usize,
    values: Vec<BigInt>,
    poly_scale: BigInt,
    point_scale: BigInt,
}

impl DerivativeTable {
    pub fn new(f: &HomPoly, x: &[Rat]) -> Result<Self> {
        let n = f.nvars();
        if x.len() != n {
            return Err(Error::input(format!(
                "point has length {} but nvars = {n}",
                x.len()
            )));
        }
        let d = f.degree();
        let base = d as usize + 1;
        let size = base
            .checked_pow(n as u32)
            .filter(|&s| s <= MAX_DENSE)
            .ok_or_else(|| Error::budget("derivative table too large (degree+1)^nvars > 2^22"))?;
        let poly_scale = f.integer_scale();
        let point_scale = common_denominator(x);
        let xi = to_integers(x, &point_scale);
        let powers: Vec<Vec<BigInt>> = xi
            .iter()
            .map(|v| {
                let mut p = vec![BigInt::one()];
                for k in 0..d as usize {
                    let next = &p[k] * v;
                    p.push(next);
                }
                p
            })
            .collect();
        let mut values = vec![BigInt::zero(); size];
        let mut beta = vec![0u32; n];
        for (exp, c) in f.terms() {
            let c_int = (c * big(&poly_scale)).to_integer();
            let a = exp.exponents();
            // every β ≤ a
            beta.iter_mut().for_each(|b| *b = 0);
            loop {
                let mut term = c_int.clone();
                for i in 0..n {
                    let (ai, bi) = (a[i], beta[i]);
                    for k in 0..bi {
                        term *= ai - k;
                    }
                    if ai > bi {
                        term *= &powers[i][(ai - bi) as usize];
                    }
                }
                let code: usize = beta
                    .iter()
                    .rev()
                    .fold(0usize, |acc, &b| acc * base + b as usize);
                values[code] += term;
                let mut k = 0;
                while k < n {
                    if beta[k] < a[k] {
                        beta[k] += 1;
                        break;
                    }
                    beta[k] = 0;
                    k += 1;
                }
                if k == n {
                    break;
                }
            }
        }
        Ok(DerivativeTable {
            nvars: n,
            degree: d,
            base,
            values,
            poly_scale,
            point_scale,
        })
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    /// Dense position of `α`. Codes add: `code(β+γ) = code(β) + code(γ)` when `|β+γ| ≤ d`.
    pub fn code(&self, alpha: &MultiIndex) -> usize {
        alpha
            .exponents()
            .iter()
            .rev()
            .fold(0usize, |acc, &b| acc * self.base + b as usize)
    }

    pub fn unit_code(&self, i: usize) -> usize {
        self.base.pow(i as u32)
    }

    /// `L · q^{d−|α|} · ∂^α f(x)` where `L`, `q` are the coefficient and point scales.
    pub fn scaled(&self, code: usize) -> &BigInt {
        &self.values[code]
    }

    /// Exact `∂^α f(x)`.
    pub fn exact(&self, alpha: &MultiIndex) -> Rat {
        let k = alpha.degree();
        if k > self.degree {
            return Rat::zero();
        }
        self.unscale(self.values[self.code(alpha)].clone(), self.degree - k, 1)
    }

    /// Divides a product of scaled values by `L^{poly_power} · q^{point_power}`.
    pub fn unscale(&self, value: BigInt, point_power: u32, poly_power: u32) -> Rat {
        let den = num::pow(self.poly_scale.clone(), poly_power as usize)
            * num::pow(self.point_scale.clone(), point_power as usize);
        Rat::new(value, den)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, rat};

    #[test]
    fn table_matches_symbolic_partials() {
        let f = HomPoly::from_pairs(
            3,
            3,
            &[
                (&[3, 0, 0], rat(1, 2)),
                (&[1, 1, 1], int(3)),
                (&[0, 1, 2], rat(-2, 3)),
                (&[0, 0, 3], int(5)),
            ],
        )
        .unwrap();
        let x = vec![rat(1, 3), int(2), rat(5, 2)];
        let t = DerivativeTable::new(&f, &x).unwrap();
        for a in MultiIndex::all_up_to_degree(3, 3) {
            let expect = f.partial(&a).unwrap().evaluate(&x).unwrap();
            assert_eq!(t.exact(&a), expect, "alpha = {a}");
        }
    }
}
