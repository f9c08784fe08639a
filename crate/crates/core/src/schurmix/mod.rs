//! Schur polynomials as determinants of elementary symmetric polynomials,
//! their derived versions, mixed discriminants and Schur-type valuations.

mod discriminant;
mod valuation;

pub use discriminant::{
    md_af_check, md_hodge_basis, md_hodge_form, mixed_discriminant, mixed_discriminant_with_multiplicities,
};
pub use valuation::{schur_af_check, schur_valuation, SchurValuationSpec};

use std::fmt;

use num::{One, Zero};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::poly::{HomPoly, MultiIndex};
use crate::rational::{int, Rat};

/// A weakly decreasing sequence of nonnegative parts bounded by `e`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Partition {
    parts: Vec<u32>,
    e: u32,
}

impl Partition {
    pub fn new(parts: Vec<u32>, e: u32) -> Result<Self> {
        if e == 0 {
            return Err(Error::input("width bound e must be at least 1"));
        }
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::input(format!("parts {parts:?} are not weakly decreasing")));
        }
        if let Some(&first) = parts.first() {
            if first > e {
                return Err(Error::input(format!("largest part {first} exceeds e = {e}")));
            }
        }
        Ok(Partition { parts, e })
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    pub fn e(&self) -> u32 {
        self.e
    }

    pub fn size(&self) -> u32 {
        self.parts.iter().sum()
    }

    /// Transposed Young diagram (nonzero parts only).
    pub fn conjugate(&self) -> Vec<u32> {
        let first = self.parts.first().copied().unwrap_or(0);
        (1..=first)
            .map(|k| self.parts.iter().filter(|&&p| p >= k).count() as u32)
            .collect()
    }

    /// Every partition of `size` with parts at most `e`, each listed without zero parts.
    pub fn all_of_size(size: u32, e: u32) -> Vec<Partition> {
        fn rec(rest: u32, cap: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
            if rest == 0 {
                out.push(cur.clone());
                return;
            }
            for p in (1..=cap.min(rest)).rev() {
                cur.push(p);
                rec(rest - p, p, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        rec(size, e, &mut Vec::new(), &mut out);
        out.into_iter().map(|parts| Partition { parts, e }).collect()
    }

    pub fn to_json(&self) -> Value {
        json!({"parts": self.parts, "e": self.e})
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let p: Vec<String> = self.parts.iter().map(|v| v.to_string()).collect();
        write!(f, "({})", p.join(","))
    }
}

/// `σ_k(x₁..x_e)`; zero when `k ∉ [0, e]`.
pub fn elementary_symmetric(k: i64, e: u32) -> HomPoly {
    let n = e as usize;
    if k < 0 {
        return HomPoly::zero(n.max(1), 0);
    }
    let k = k as u32;
    if k > e {
        return HomPoly::zero(n.max(1), k);
    }
    let terms = (0u64..1 << n)
        .filter(|m| m.count_ones() == k)
        .map(|m| {
            let exps = (0..n).map(|i| ((m >> i) & 1) as u32).collect();
            (MultiIndex::new(exps), Rat::one())
        });
    HomPoly::new(n, k, terms).expect("well-formed terms")
}

/// Determinant of a square matrix of polynomials by Laplace expansion over
/// column subsets. Products along any partial assignment share a degree.
fn poly_determinant(m: &[Vec<HomPoly>], nvars: usize, degree: u32) -> HomPoly {
    let size = m.len();
    let mut dp: Vec<Option<HomPoly>> = vec![None; 1 << size];
    dp[0] = Some(HomPoly::constant(nvars, Rat::one()));
    for mask in 0usize..1 << size {
        let row = mask.count_ones() as usize;
        if row == size {
            continue;
        }
        let Some(cur) = dp[mask].take() else { continue };
        if cur.is_zero() {
            continue;
        }
        for j in 0..size {
            if mask & (1 << j) != 0 || m[row][j].is_zero() {
                continue;
            }
            let inversions = (mask >> (j + 1)).count_ones();
            let mut term = &cur * &m[row][j];
            if inversions % 2 == 1 {
                term = -&term;
            }
            let next = mask | (1 << j);
            dp[next] = Some(match dp[next].take() {
                Some(acc) => &acc + &term,
                None => term,
            });
        }
        dp[mask] = Some(cur);
    }
    match dp[(1 << size) - 1].take() {
        Some(p) if !p.is_zero() => p,
        _ => HomPoly::zero(nvars, degree),
    }
}

/// `det[σ_{λᵢ−i+j}]` in `e` variables, of degree `|λ|`.
pub fn schur(lambda: &Partition, e: u32) -> Result<HomPoly> {
    if let Some(&first) = lambda.parts.first() {
        if first > e {
            return Err(Error::input(format!("largest part {first} exceeds e = {e}")));
        }
    }
    if e == 0 {
        return Err(Error::input("e must be at least 1"));
    }
    let nvars = e as usize;
    let size = lambda.parts.len();
    let matrix: Vec<Vec<HomPoly>> = (0..size)
        .map(|i| {
            (0..size)
                .map(|j| elementary_symmetric(lambda.parts[i] as i64 - i as i64 + j as i64, e))
                .collect()
        })
        .collect();
    Ok(poly_determinant(&matrix, nvars, lambda.size()))
}

/// Coefficient of `tⁱ` in `s_λ(x₁+t, ..., x_e+t)`.
pub fn derived_schur(lambda: &Partition, e: u32, i: u32) -> Result<HomPoly> {
    let total = lambda.size();
    if i > total {
        return Err(Error::input(format!("derived index {i} outside [0, {total}]")));
    }
    let s = schur(lambda, e)?;
    if i == 0 {
        return Ok(s);
    }
    let n = e as usize;
    let shift: Vec<Vec<Rat>> = (0..n)
        .map(|j| {
            let mut row = vec![Rat::zero(); n + 1];
            row[j] = int(1);
            row[n] = int(1);
            row
        })
        .collect();
    s.substitute_linear(&shift, n + 1)?.coefficient_of_power(n, i)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sigma(k: i64, e: u32) -> HomPoly {
        elementary_symmetric(k, e)
    }

    fn part(p: &[u32], e: u32) -> Partition {
        Partition::new(p.to_vec(), e).unwrap()
    }

    #[test]
    fn partition_validation() {
        assert!(Partition::new(vec![1, 2], 3).is_err());
        assert!(Partition::new(vec![4], 3).is_err());
        assert_eq!(part(&[3, 1, 1], 3).conjugate(), vec![3, 1, 1]);
        assert_eq!(part(&[2, 2], 2).conjugate(), vec![2, 2]);
        assert_eq!(part(&[3, 1], 3).conjugate(), vec![2, 1, 1]);
        assert_eq!(Partition::all_of_size(4, 4).len(), 5);
        assert_eq!(Partition::all_of_size(4, 2).len(), 3);
    }

    #[test]
    fn elementary_examples() {
        let x1 = HomPoly::var(2, 0);
        let x2 = HomPoly::var(2, 1);
        assert_eq!(sigma(1, 2), &x1 + &x2);
        assert_eq!(sigma(2, 2), &x1 * &x2);
        assert!(sigma(3, 2).is_zero());
        assert!(sigma(-1, 2).is_zero());
        assert_eq!(sigma(0, 3), HomPoly::constant(3, int(1)));
    }

    #[test]
    fn schur_examples() {
        for e in 2..=4 {
            assert_eq!(schur(&part(&[2], e), e).unwrap(), sigma(2, e));
            let s11 = &(&sigma(1, e) * &sigma(1, e)) - &sigma(2, e);
            assert_eq!(schur(&part(&[1, 1], e), e).unwrap(), s11);
        }
        let s21 = &(&sigma(1, 3) * &sigma(2, 3)) - &sigma(3, 3);
        assert_eq!(schur(&part(&[2, 1], 3), 3).unwrap(), s21);
        let s1 = sigma(1, 3);
        let s111 = &(&(&(&s1 * &s1) * &s1) - &(&(&s1 * &sigma(2, 3)).scale(&int(2)))) + &sigma(3, 3);
        assert_eq!(schur(&part(&[1, 1, 1], 3), 3).unwrap(), s111);
        let x = HomPoly::var(2, 0);
        let y = HomPoly::var(2, 1);
        let expect = &(&(&x * &x) + &(&x * &y)) + &(&y * &y);
        assert_eq!(schur(&part(&[1, 1], 2), 2).unwrap(), expect);
        assert!(schur(&part(&[3], 3), 2).is_err());
        assert_eq!(schur(&part(&[], 2), 2).unwrap(), HomPoly::constant(2, int(1)));
    }

    #[test]
    fn derived_examples() {
        for e in 1..=3 {
            let one = part(&[1], e);
            assert_eq!(derived_schur(&one, e, 0).unwrap(), sigma(1, e));
            assert_eq!(derived_schur(&one, e, 1).unwrap(), HomPoly::constant(e as usize, int(e as i64)));
        }
        let l = part(&[1, 1], 2);
        assert_eq!(derived_schur(&l, 2, 1).unwrap(), sigma(1, 2).scale(&int(3)));
        assert_eq!(derived_schur(&l, 2, 2).unwrap(), HomPoly::constant(2, int(3)));
        assert!(derived_schur(&l, 2, 3).is_err());
    }
}
