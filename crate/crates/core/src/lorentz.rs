//! Membership tests for the Lorentzian cone `L_n^d` and the checks built on
//! its Hessian structure: exact inertia, M-convex supports, the quadratic
//! slice test, the Hessian characterization and the c-Rayleigh property.

use std::collections::HashSet;

use num::{BigInt, One, Signed, Zero};
use serde_json::{json, Value};

use crate::derivs::DerivativeTable;
use crate::error::{Error, Result};
use crate::matrix::SymMatrix;
use crate::poly::{HomPoly, MultiIndex};
use crate::rational::{int, is_nonnegative, Rat};
use crate::verdict::{Verdict, Witness};

/// Numbers of positive, zero and negative eigenvalues.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Inertia {
    pub positive: usize,
    pub zero: usize,
    pub negative: usize,
}

impl Inertia {
    pub fn new(positive: usize, zero: usize, negative: usize) -> Self {
        Inertia { positive, zero, negative }
    }

    pub fn to_json(&self) -> Value {
        json!([self.positive, self.zero, self.negative])
    }
}

/// Exact inertia by symmetric congruence elimination (Sylvester's law).
///
/// A nonzero diagonal pivot is eliminated from both sides; when the active
/// block has a zero diagonal but a nonzero entry `m[p][q]`, adding row and
/// column `q` to `p` makes the pivot `2·m[p][q]` nonzero.
pub fn inertia(m: &SymMatrix) -> Inertia {
    let n = m.dim();
    let mut a: Vec<Vec<Rat>> = m.rows();
    let mut active: Vec<usize> = (0..n).collect();
    let mut res = Inertia::new(0, 0, 0);
    while !active.is_empty() {
        let pivot = active.iter().copied().find(|&i| !a[i][i].is_zero());
        let p = match pivot {
            Some(p) => p,
            None => {
                let pair = active.iter().enumerate().find_map(|(k, &i)| {
                    active[k + 1..]
                        .iter()
                        .copied()
                        .find(|&j| !a[i][j].is_zero())
                        .map(|j| (i, j))
                });
                let Some((p, q)) = pair else {
                    res.zero += active.len();
                    break;
                };
                // row_p += row_q, then col_p += col_q
                for &k in &active {
                    let v = a[q][k].clone();
                    a[p][k] += v;
                }
                for &k in &active {
                    let v = a[k][q].clone();
                    a[k][p] += v;
                }
                p
            }
        };
        let piv = a[p][p].clone();
        if piv.is_positive() {
            res.positive += 1;
        } else {
            res.negative += 1;
        }
        active.retain(|&i| i != p);
        for &i in &active {
            if a[i][p].is_zero() {
                continue;
            }
            let f = &a[i][p] / &piv;
            for &j in &active {
                let delta = &f * &a[p][j];
                a[i][j] -= delta;
            }
        }
    }
    res
}

/// Symmetric exchange property of a set of exponent vectors of equal degree.
/// The witness is the first failing `(α, β, i)` in input order.
pub fn m_convex_support(set: &[MultiIndex]) -> Result<Verdict> {
    let Some(first) = set.first() else {
        return Ok(Verdict::pass());
    };
    let (n, d) = (first.len(), first.degree());
    if let Some(bad) = set.iter().find(|a| a.len() != n || a.degree() != d) {
        return Err(Error::input(format!(
            "support elements must share length {n} and degree {d}; found {bad}"
        )));
    }
    let members: HashSet<&MultiIndex> = set.iter().collect();
    for alpha in set {
        for beta in set {
            for i in 0..n {
                if alpha.get(i) >= beta.get(i) {
                    continue;
                }
                let ok = (0..n).any(|j| {
                    beta.get(j) < alpha.get(j)
                        && alpha
                            .with_delta(i, j)
                            .is_some_and(|a| members.contains(&a))
                        && beta.with_delta(j, i).is_some_and(|b| members.contains(&b))
                });
                if !ok {
                    return Ok(Verdict::fail(Witness::Exchange {
                        alpha: alpha.clone(),
                        beta: beta.clone(),
                        i,
                    }));
                }
            }
        }
    }
    Ok(Verdict::pass())
}

fn negative_coefficient_error(f: &HomPoly) -> Result<()> {
    match f.first_negative_term() {
        Some((e, c)) => Err(Error::input(format!(
            "coefficient {c} of x^{e} is negative; only nonnegative coefficients are allowed"
        ))),
        None => Ok(()),
    }
}

fn hessian_inertia_of_quadratic(q: &HomPoly) -> Inertia {
    let origin = vec![Rat::zero(); q.nvars()];
    let h = q.hessian_at(&origin).expect("degree checked by caller");
    inertia(&h)
}

/// A nonnegative quadratic lies in `L_n^2` iff it is zero or its Hessian has
/// exactly one positive eigenvalue.
pub fn quadratic_in_l2(q: &HomPoly) -> Result<Verdict> {
    if q.degree() != 2 {
        return Err(Error::input(format!("expected a quadratic, got degree {}", q.degree())));
    }
    negative_coefficient_error(q)?;
    if q.is_zero() {
        return Ok(Verdict::pass());
    }
    let ine = hessian_inertia_of_quadratic(q);
    if ine.positive == 1 {
        Ok(Verdict::pass())
    } else {
        Ok(Verdict::fail(Witness::QuadraticSlice {
            alpha: MultiIndex::zero(q.nvars()),
            positive: ine.positive,
            zero: ine.zero,
            negative: ine.negative,
        }))
    }
}

/// Decides `f ∈ L_n^d` through nonnegativity, M-convexity of the support and
/// the quadratic slices `∂^α f`, `|α| = d − 2`.
pub fn is_lorentzian(f: &HomPoly) -> Verdict {
    if let Some((e, c)) = f.first_negative_term() {
        return Verdict::fail(Witness::NegativeCoefficient {
            exponent: e.clone(),
            coefficient: c.clone(),
        });
    }
    let d = f.degree();
    if d <= 1 {
        return Verdict::pass();
    }
    let support = f.support();
    let exchange = m_convex_support(&support).expect("support of a homogeneous polynomial");
    if !exchange.holds {
        return exchange;
    }
    for alpha in MultiIndex::all_of_degree(f.nvars(), d - 2) {
        let q = f.partial(&alpha).expect("lengths match");
        if q.is_zero() {
            continue;
        }
        let ine = hessian_inertia_of_quadratic(&q);
        if ine.positive != 1 {
            return Verdict::fail(Witness::QuadraticSlice {
                alpha,
                positive: ine.positive,
                zero: ine.zero,
                negative: ine.negative,
            });
        }
    }
    Verdict::pass()
}

/// Checks at `x` that "H_f(x) has exactly one positive eigenvalue" agrees with
/// "f(x)·H_f(x) − (1 − 1/d)·∇f(x)∇f(x)ᵀ is negative semidefinite", the latter
/// being a positive multiple of the Hessian of `f^{1/d}` (and of `log f`).
pub fn quadratic_class_equiv(f: &HomPoly, x: &[Rat]) -> Result<Verdict> {
    let d = f.degree();
    if d < 2 || f.nvars() < 2 {
        return Err(Error::precondition("needs degree >= 2 and at least two variables"));
    }
    let fx = f.evaluate(x)?;
    if !fx.is_positive() {
        return Err(Error::precondition(format!("f(x) = {fx} is not positive")));
    }
    let h = f.hessian_at(x)?;
    let g = f.gradient_at(x)?;
    let c = Rat::one() - Rat::new(BigInt::one(), BigInt::from(d));
    let scaled = SymMatrix::from_fn(f.nvars(), |i, j| &fx * h.get(i, j) - &c * &g[i] * &g[j]);
    let one_positive = inertia(&h).positive == 1;
    let nsd = inertia(&scaled).positive == 0;
    if one_positive == nsd {
        Ok(Verdict::pass())
    } else {
        Ok(Verdict::fail(Witness::HessianDisagreement {
            x: x.to_vec(),
            one_positive_eigenvalue: one_positive,
            scaled_matrix_nsd: nsd,
        }))
    }
}

/// `2(1 − 1/d)`, the Rayleigh constant every `f ∈ L_n^d` satisfies.
pub fn lorentzian_rayleigh_constant(d: u32) -> Rat {
    if d == 0 {
        return Rat::zero();
    }
    int(2) * (Rat::one() - Rat::new(BigInt::one(), BigInt::from(d)))
}

/// `∂^α f(x)·∂^{α+eᵢ+eⱼ} f(x) ≤ c·∂^{α+eᵢ} f(x)·∂^{α+eⱼ} f(x)` for every supplied
/// point, all `i ≤ j` and all `|α| ≤ d − 2`. On failure the margin is the
/// exact `RHS − LHS` at the witness.
pub fn c_rayleigh_check(f: &HomPoly, c: &Rat, points: &[Vec<Rat>]) -> Result<Verdict> {
    negative_coefficient_error(f)?;
    for x in points {
        if x.len() != f.nvars() {
            return Err(Error::input(format!(
                "point has length {} but nvars = {}",
                x.len(),
                f.nvars()
            )));
        }
        if !is_nonnegative(x) {
            return Err(Error::input("points must lie in the nonnegative orthant"));
        }
    }
    let d = f.degree();
    if d < 2 {
        return Ok(Verdict::pass());
    }
    let n = f.nvars();
    let alphas = MultiIndex::all_up_to_degree(n, d - 2);
    let (c_num, c_den) = (c.numer().clone(), c.denom().clone());
    for x in points {
        let t = DerivativeTable::new(f, x)?;
        for alpha in &alphas {
            let a = t.code(alpha);
            for i in 0..n {
                let ai = a + t.unit_code(i);
                for j in i..n {
                    let aj = a + t.unit_code(j);
                    let aij = ai + t.unit_code(j);
                    let lhs = t.scaled(a) * t.scaled(aij);
                    let rhs = t.scaled(ai) * t.scaled(aj);
                    if &lhs * &c_den > &rhs * &c_num {
                        let diff = rhs * &c_num - lhs * &c_den;
                        let point_power = 2 * (d - alpha.degree()) - 2;
                        let margin = t.unscale(diff, point_power, 2) / Rat::from_integer(c_den);
                        return Ok(Verdict::fail(Witness::Rayleigh {
                            x: x.clone(),
                            alpha: alpha.clone(),
                            i,
                            j,
                        })
                        .with_margin(margin));
                    }
                }
            }
        }
    }
    Ok(Verdict::pass())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    fn m(rows: &[&[i64]]) -> SymMatrix {
        SymMatrix::from_rows(
            &rows
                .iter()
                .map(|r| r.iter().map(|&v| int(v)).collect())
                .collect::<Vec<_>>(),
        )
        .unwrap()
    }

    fn p(nvars: usize, degree: u32, pairs: &[(&[u32], i64)]) -> HomPoly {
        let pairs: Vec<(&[u32], Rat)> = pairs.iter().map(|(e, c)| (*e, int(*c))).collect();
        HomPoly::from_pairs(nvars, degree, &pairs).unwrap()
    }

    fn mi(v: &[u32]) -> MultiIndex {
        MultiIndex::new(v.to_vec())
    }

    pub(crate) fn non_volume_cubic() -> HomPoly {
        p(
            3,
            3,
            &[
                (&[3, 0, 0], 14),
                (&[2, 1, 0], 6),
                (&[2, 0, 1], 24),
                (&[1, 1, 1], 12),
                (&[1, 0, 2], 6),
                (&[0, 1, 2], 3),
            ],
        )
    }

    #[test]
    fn inertia_examples() {
        assert_eq!(inertia(&SymMatrix::identity(3)), Inertia::new(3, 0, 0));
        assert_eq!(inertia(&m(&[&[0, 1], &[1, 0]])), Inertia::new(1, 0, 1));
        assert_eq!(inertia(&SymMatrix::zeros(2)), Inertia::new(0, 2, 0));
        // zero diagonal inside a larger block
        assert_eq!(
            inertia(&m(&[&[1, 0, 0], &[0, 0, 2], &[0, 2, 0]])),
            Inertia::new(2, 0, 1)
        );
        assert_eq!(inertia(&m(&[&[1, 1], &[1, 1]])), Inertia::new(1, 1, 0));
    }

    #[test]
    fn m_convex_examples() {
        let full = MultiIndex::all_of_degree(3, 3);
        assert!(m_convex_support(&full).unwrap().holds);
        let v = m_convex_support(&[mi(&[2, 0]), mi(&[0, 2])]).unwrap();
        assert!(!v.holds);
        assert_eq!(
            v.witness,
            Some(Witness::Exchange { alpha: mi(&[2, 0]), beta: mi(&[0, 2]), i: 1 })
        );
        assert!(m_convex_support(&non_volume_cubic().support()).unwrap().holds);
        assert!(m_convex_support(&[mi(&[2, 0]), mi(&[1, 0])]).is_err());
        assert!(m_convex_support(&[]).unwrap().holds);
    }

    #[test]
    fn quadratic_examples() {
        assert!(quadratic_in_l2(&p(2, 2, &[(&[1, 1], 1)])).unwrap().holds);
        let definite = quadratic_in_l2(&p(2, 2, &[(&[2, 0], 1), (&[0, 2], 1)])).unwrap();
        assert!(!definite.holds);
        assert!(matches!(
            definite.witness,
            Some(Witness::QuadraticSlice { positive: 2, .. })
        ));
        let rank_one = HomPoly::linear_form(&[int(1), int(1)]).pow(2);
        assert!(quadratic_in_l2(&rank_one).unwrap().holds);
        assert!(quadratic_in_l2(&HomPoly::zero(2, 2)).unwrap().holds);
        assert!(quadratic_in_l2(&p(2, 2, &[(&[2, 0], 1), (&[1, 1], -1)])).is_err());
        assert!(quadratic_in_l2(&HomPoly::var(2, 0)).is_err());
    }

    #[test]
    fn lorentzian_examples() {
        let power = HomPoly::linear_form(&[int(1), int(1), int(1), int(1)]).pow(4);
        assert!(is_lorentzian(&power).holds);
        assert!(is_lorentzian(&non_volume_cubic()).holds);
        let definite = p(2, 2, &[(&[2, 0], 1), (&[0, 2], 1)]);
        assert!(!is_lorentzian(&definite).holds);
        // x1^2 + x2^2 has non-M-convex support, caught before the slice test
        assert!(matches!(
            is_lorentzian(&definite).witness,
            Some(Witness::Exchange { .. })
        ));
        let neg = p(2, 1, &[(&[1, 0], 1), (&[0, 1], -1)]);
        assert!(matches!(
            is_lorentzian(&neg).witness,
            Some(Witness::NegativeCoefficient { .. })
        ));
        assert!(is_lorentzian(&HomPoly::constant(2, int(3))).holds);
        // support {x1^2, x1x2, x2^2} is M-convex but x1^2 + x1x2 + x2^2 has H = [[2,1],[1,2]]
        let bad_slice = p(2, 2, &[(&[2, 0], 1), (&[1, 1], 1), (&[0, 2], 1)]);
        assert!(matches!(
            is_lorentzian(&bad_slice).witness,
            Some(Witness::QuadraticSlice { positive: 2, .. })
        ));
    }

    #[test]
    fn hessian_characterization_examples() {
        let one = vec![int(1), int(1)];
        assert!(quadratic_class_equiv(&p(2, 2, &[(&[1, 1], 1)]), &one).unwrap().holds);
        let sq = HomPoly::linear_form(&[int(1), int(1)]).pow(2);
        assert!(quadratic_class_equiv(&sq, &one).unwrap().holds);
        let definite = p(2, 2, &[(&[2, 0], 1), (&[0, 2], 1)]);
        assert!(quadratic_class_equiv(&definite, &one).unwrap().holds);
        assert!(quadratic_class_equiv(&non_volume_cubic(), &[int(1), int(2), rat(1, 3)]).unwrap().holds);
        assert!(matches!(
            quadratic_class_equiv(&p(2, 2, &[(&[1, 1], 1)]), &[int(1), int(-1)]),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn rayleigh_examples() {
        let sq = HomPoly::linear_form(&[int(1), int(1)]).pow(2);
        assert!(c_rayleigh_check(&sq, &int(1), &[vec![int(1), int(1)]]).unwrap().holds);
        let pts = vec![
            vec![int(1), int(0), int(0)],
            vec![int(1), int(1), int(1)],
            vec![rat(1, 2), int(3), int(0)],
        ];
        assert!(c_rayleigh_check(&non_volume_cubic(), &lorentzian_rayleigh_constant(3), &pts).unwrap().holds);
        assert!(c_rayleigh_check(&sq, &int(1), &[vec![int(-1), int(1)]]).is_err());
        // x1x2 with c = 1/2: f·∂1∂2 f = 1 > 1/2 · 1
        let xy = p(2, 2, &[(&[1, 1], 1)]);
        let v = c_rayleigh_check(&xy, &rat(1, 2), &[vec![int(1), int(1)]]).unwrap();
        assert!(!v.holds);
        assert_eq!(v.margin, Some(rat(-1, 2)));
    }

    #[test]
    fn rayleigh_constant_values() {
        assert_eq!(lorentzian_rayleigh_constant(1), int(0));
        assert_eq!(lorentzian_rayleigh_constant(3), rat(4, 3));
        assert_eq!(lorentzian_rayleigh_constant(4), rat(3, 2));
    }
}
