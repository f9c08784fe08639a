//! Mixed discriminants of symmetric matrices and the Hodge-index form they
//! induce on the space of symmetric matrices.

use num::{One, Zero};

use crate::error::{Error, Result};
use crate::matrix::SymMatrix;
use crate::rational::{binomial, factorial, Rat};
use crate::verdict::{Verdict, Witness};

fn common_dim(mats: &[&SymMatrix]) -> Result<usize> {
    let n = mats.first().ok_or_else(|| Error::input("no matrices given"))?.dim();
    if let Some(i) = mats.iter().position(|m| m.dim() != n) {
        return Err(Error::input(format!("matrix {i} has dimension {}, expected {n}", mats[i].dim())));
    }
    Ok(n)
}

/// `D(M₁[i₁], ..., M_r[i_r])` by inclusion–exclusion over sub-multisets.
pub fn mixed_discriminant_with_multiplicities(mats: &[&SymMatrix], mults: &[u32]) -> Result<Rat> {
    let n = common_dim(mats)?;
    if mats.len() != mults.len() {
        return Err(Error::input("one multiplicity per matrix is required"));
    }
    let total: u32 = mults.iter().sum();
    if total as usize != n {
        return Err(Error::input(format!("{total} matrix slots for dimension {n}")));
    }
    let mut acc = Rat::zero();
    let mut choice = vec![0u32; mults.len()];
    loop {
        let size: u32 = choice.iter().sum();
        if size > 0 {
            let mut sum = SymMatrix::zeros(n);
            let mut coeff = num::BigInt::one();
            for ((m, &j), &i) in mats.iter().zip(&choice).zip(mults) {
                if j > 0 {
                    sum = sum.add(&m.scale(&Rat::from_integer(j.into())))?;
                }
                coeff *= binomial(i, j);
            }
            let term = Rat::from_integer(coeff) * sum.det();
            if (total - size) % 2 == 1 {
                acc -= term;
            } else {
                acc += term;
            }
        }
        let mut k = 0;
        while k < choice.len() {
            if choice[k] < mults[k] {
                choice[k] += 1;
                break;
            }
            choice[k] = 0;
            k += 1;
        }
        if k == choice.len() {
            break;
        }
    }
    Ok(acc / Rat::from_integer(factorial(total)))
}

/// `D(M₁, ..., M_n)`, normalized so that `D(M, ..., M) = det M`.
pub fn mixed_discriminant(mats: &[SymMatrix]) -> Result<Rat> {
    let refs: Vec<&SymMatrix> = mats.iter().collect();
    let n = common_dim(&refs)?;
    if mats.len() != n {
        return Err(Error::input(format!("{} matrices for dimension {n}", mats.len())));
    }
    mixed_discriminant_with_multiplicities(&refs, &vec![1; n])
}

/// Basis of symmetric `n×n` matrices: `E_ii` for `i` ascending, then
/// `E_ij + E_ji` for `i < j` in lexicographic order.
pub fn md_hodge_basis(n: usize) -> Vec<SymMatrix> {
    let unit = |a: usize, b: usize| {
        SymMatrix::from_fn(n, |i, j| {
            if (i, j) == (a, b) || (i, j) == (b, a) {
                Rat::one()
            } else {
                Rat::zero()
            }
        })
    };
    let mut out: Vec<SymMatrix> = (0..n).map(|i| unit(i, i)).collect();
    for i in 0..n {
        for j in i + 1..n {
            out.push(unit(i, j));
        }
    }
    out
}

fn require_definite(mats: &[&SymMatrix], what: &str) -> Result<()> {
    if let Some(i) = mats.iter().position(|m| !m.is_positive_definite()) {
        return Err(Error::input(format!("{what} {i} is not positive definite")));
    }
    Ok(())
}

/// Gram matrix of `q(M, N) = D(M, N, A₁..A_{m−2}, W[n−m])` in [`md_hodge_basis`].
pub fn md_hodge_form(hyps: &[SymMatrix], w: &SymMatrix, m: usize) -> Result<SymMatrix> {
    let n = w.dim();
    if m < 2 || m > n {
        return Err(Error::input(format!("need 2 <= m <= n, got m = {m}, n = {n}")));
    }
    if hyps.len() != m - 2 {
        return Err(Error::input(format!("expected {} hypothesis matrices, got {}", m - 2, hyps.len())));
    }
    let mut all: Vec<&SymMatrix> = hyps.iter().collect();
    all.push(w);
    common_dim(&all)?;
    require_definite(&hyps.iter().collect::<Vec<_>>(), "hypothesis matrix")?;
    require_definite(&[w], "reference matrix")?;
    let basis = md_hodge_basis(n);
    let size = basis.len();
    let mut entries = vec![vec![Rat::zero(); size]; size];
    for a in 0..size {
        for b in a..size {
            let mut mats: Vec<&SymMatrix> = vec![&basis[a], &basis[b]];
            mats.extend(hyps.iter());
            mats.push(w);
            let mut mults = vec![1u32; mats.len()];
            *mults.last_mut().unwrap() = (n - m) as u32;
            let v = mixed_discriminant_with_multiplicities(&mats, &mults)?;
            entries[a][b] = v.clone();
            entries[b][a] = v;
        }
    }
    SymMatrix::from_rows(&entries)
}

/// `D(A,B,rest)² ≥ D(A,A,rest)·D(B,B,rest)` for `A` and the `n−2` matrices of
/// `rest` positive definite, `B` arbitrary; margin `LHS − RHS`.
pub fn md_af_check(a: &SymMatrix, b: &SymMatrix, rest: &[SymMatrix]) -> Result<Verdict> {
    let n = a.dim();
    if n < 2 || rest.len() != n - 2 {
        return Err(Error::input(format!("expected {} further matrices", n.saturating_sub(2))));
    }
    let mut all: Vec<&SymMatrix> = vec![a, b];
    all.extend(rest.iter());
    common_dim(&all)?;
    require_definite(&[a], "matrix A")?;
    require_definite(&rest.iter().collect::<Vec<_>>(), "hypothesis matrix")?;
    let d = |x: &SymMatrix, y: &SymMatrix| -> Result<Rat> {
        let mut v = vec![x.clone(), y.clone()];
        v.extend_from_slice(rest);
        mixed_discriminant(&v)
    };
    let ab = d(a, b)?;
    let margin = &ab * &ab - d(a, a)? * d(b, b)?;
    Ok(Verdict::from_margin(margin, || Witness::Configuration {
        description: "A = matrix 0, B = matrix 1".into(),
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lorentz::{inertia, Inertia};
    use crate::rational::{int, rat};

    #[test]
    fn discriminant_examples() {
        assert_eq!(mixed_discriminant(&vec![SymMatrix::identity(3); 3]).unwrap(), int(1));
        let a = SymMatrix::diagonal(&[int(1), int(0)]);
        let b = SymMatrix::diagonal(&[int(0), int(1)]);
        assert_eq!(mixed_discriminant(&[a, b]).unwrap(), rat(1, 2));
        let m = SymMatrix::from_rows(&[vec![int(2), int(1)], vec![int(1), int(3)]]).unwrap();
        assert_eq!(mixed_discriminant(&[m.clone(), m.clone()]).unwrap(), m.det());
        assert!(mixed_discriminant(&[SymMatrix::identity(2)]).is_err());
    }

    #[test]
    fn hodge_form_examples() {
        let g = md_hodge_form(&[], &SymMatrix::identity(2), 2).unwrap();
        assert_eq!(inertia(&g), Inertia::new(1, 0, 2));
        let g3 = md_hodge_form(&[SymMatrix::identity(3)], &SymMatrix::identity(3), 3).unwrap();
        assert_eq!(inertia(&g3), Inertia::new(1, 0, 5));
        let w = SymMatrix::diagonal(&[int(1), int(2), int(5)]);
        let g = md_hodge_form(&[], &w, 2).unwrap();
        let g_scaled = md_hodge_form(&[], &w.scale(&int(3)), 2).unwrap();
        assert_eq!(g_scaled, g.scale(&int(3)));
        assert_eq!(inertia(&g), Inertia::new(1, 0, 5));
        let indefinite = SymMatrix::diagonal(&[int(1), int(-1)]);
        assert!(md_hodge_form(&[], &indefinite, 2).is_err());
    }

    #[test]
    fn matrix_af_examples() {
        let a = SymMatrix::identity(3);
        let b = SymMatrix::from_rows(&[
            vec![int(0), int(1), int(2)],
            vec![int(1), int(-3), int(0)],
            vec![int(2), int(0), int(1)],
        ])
        .unwrap();
        let rest = vec![SymMatrix::diagonal(&[int(1), int(2), int(3)])];
        assert!(md_af_check(&a, &b, &rest).unwrap().holds);
        assert_eq!(md_af_check(&a, &a, &rest).unwrap().margin, Some(int(0)));
        assert!(md_af_check(&b, &a, &rest).is_err());
    }
}
