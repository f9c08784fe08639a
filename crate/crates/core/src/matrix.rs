//! Exact rational matrices: symmetric matrices, determinants, congruences.

use num::{Signed, Zero};

use crate::error::{Error, Result};
use crate::rational::Rat;

/// A symmetric matrix with rational entries, stored row-major.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymMatrix {
    dim: usize,
    entries: Vec<Rat>,
}

impl SymMatrix {
    pub fn from_row_major(dim: usize, entries: Vec<Rat>) -> Result<Self> {
        if dim == 0 {
            return Err(Error::input("matrix dimension must be positive"));
        }
        if entries.len() != dim * dim {
            return Err(Error::input(format!(
                "expected {} entries for a {dim}x{dim} matrix, got {}",
                dim * dim,
                entries.len()
            )));
        }
        for i in 0..dim {
            for j in (i + 1)..dim {
                if entries[i * dim + j] != entries[j * dim + i] {
                    return Err(Error::input(format!(
                        "matrix is not symmetric at ({i},{j})"
                    )));
                }
            }
        }
        Ok(SymMatrix { dim, entries })
    }

    pub fn from_rows(rows: &[Vec<Rat>]) -> Result<Self> {
        let dim = rows.len();
        if rows.iter().any(|r| r.len() != dim) {
            return Err(Error::input("matrix rows must all have length equal to the row count"));
        }
        Self::from_row_major(dim, rows.iter().flatten().cloned().collect())
    }

    pub fn from_fn(dim: usize, mut f: impl FnMut(usize, usize) -> Rat) -> Self {
        let mut entries = vec![Rat::zero(); dim * dim];
        for i in 0..dim {
            for j in i..dim {
                let v = f(i, j);
                entries[i * dim + j] = v.clone();
                entries[j * dim + i] = v;
            }
        }
        SymMatrix { dim, entries }
    }

    pub fn zeros(dim: usize) -> Self {
        SymMatrix::from_fn(dim, |_, _| Rat::zero())
    }

    pub fn identity(dim: usize) -> Self {
        SymMatrix::from_fn(dim, |i, j| if i == j { crate::rational::int(1) } else { Rat::zero() })
    }

    pub fn diagonal(diag: &[Rat]) -> Self {
        SymMatrix::from_fn(diag.len(), |i, j| if i == j { diag[i].clone() } else { Rat::zero() })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, i: usize, j: usize) -> &Rat {
        &self.entries[i * self.dim + j]
    }

    pub fn rows(&self) -> Vec<Vec<Rat>> {
        self.entries.chunks(self.dim).map(|r| r.to_vec()).collect()
    }

    pub fn add(&self, other: &SymMatrix) -> Result<SymMatrix> {
        if self.dim != other.dim {
            return Err(Error::input(format!(
                "dimension mismatch: {} vs {}",
                self.dim, other.dim
            )));
        }
        Ok(SymMatrix {
            dim: self.dim,
            entries: self.entries.iter().zip(&other.entries).map(|(a, b)| a + b).collect(),
        })
    }

    pub fn scale(&self, c: &Rat) -> SymMatrix {
        SymMatrix {
            dim: self.dim,
            entries: self.entries.iter().map(|a| a * c).collect(),
        }
    }

    /// `Aᵀ M A` for a square matrix `a` of the same dimension.
    pub fn congruence(&self, a: &[Vec<Rat>]) -> Result<SymMatrix> {
        let n = self.dim;
        if a.len() != n || a.iter().any(|r| r.len() != n) {
            return Err(Error::input("congruence matrix must match the dimension"));
        }
        let ma: Vec<Vec<Rat>> = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| (0..n).map(|k| self.get(i, k) * &a[k][j]).sum())
                    .collect()
            })
            .collect();
        Ok(SymMatrix::from_fn(n, |i, j| (0..n).map(|k| &a[k][i] * &ma[k][j]).sum()))
    }

    pub fn det(&self) -> Rat {
        determinant(&self.rows())
    }

    /// Positive definiteness via leading principal minors.
    pub fn is_positive_definite(&self) -> bool {
        (1..=self.dim).all(|k| {
            let minor: Vec<Vec<Rat>> = (0..k)
                .map(|i| (0..k).map(|j| self.get(i, j).clone()).collect())
                .collect();
            determinant(&minor).is_positive()
        })
    }
}

/// Determinant of a square rational matrix by Gaussian elimination.
pub fn determinant(rows: &[Vec<Rat>]) -> Rat {
    let n = rows.len();
    let mut m: Vec<Vec<Rat>> = rows.to_vec();
    let mut det = crate::rational::int(1);
    for col in 0..n {
        let Some(piv) = (col..n).find(|&r| !m[r][col].is_zero()) else {
            return Rat::zero();
        };
        if piv != col {
            m.swap(piv, col);
            det = -det;
        }
        let p = m[col][col].clone();
        det *= &p;
        for r in (col + 1)..n {
            if m[r][col].is_zero() {
                continue;
            }
            let factor = &m[r][col] / &p;
            for c in col..n {
                let delta = &factor * &m[col][c];
                m[r][c] -= delta;
            }
        }
    }
    det
}

/// Rank of a rational matrix (rows of equal length).
pub fn rank(rows: &[Vec<Rat>]) -> usize {
    row_echelon(rows).1.len()
}

/// Reduced row echelon form; returns the nonzero rows and their pivot columns.
pub fn row_echelon(rows: &[Vec<Rat>]) -> (Vec<Vec<Rat>>, Vec<usize>) {
    let mut m: Vec<Vec<Rat>> = rows.to_vec();
    let ncols = m.first().map_or(0, |r| r.len());
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == m.len() {
            break;
        }
        let Some(piv) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(piv, r);
        let p = m[r][c].clone();
        for x in m[r].iter_mut() {
            *x /= &p;
        }
        for i in 0..m.len() {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                for k in 0..ncols {
                    let delta = &f * &m[r][k];
                    m[i][k] -= delta;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    m.truncate(r);
    (m, pivots)
}

/// Solves the square system `a·x = b`; `None` when singular.
pub fn solve(a: &[Vec<Rat>], b: &[Rat]) -> Option<Vec<Rat>> {
    let n = a.len();
    let mut m: Vec<Vec<Rat>> = a
        .iter()
        .zip(b)
        .map(|(row, bi)| {
            let mut r = row.clone();
            r.push(bi.clone());
            r
        })
        .collect();
    for col in 0..n {
        let piv = (col..n).find(|&r| !m[r][col].is_zero())?;
        m.swap(piv, col);
        let p = m[col][col].clone();
        for x in m[col].iter_mut() {
            *x /= &p;
        }
        for r in 0..n {
            if r != col && !m[r][col].is_zero() {
                let f = m[r][col].clone();
                for c in col..=n {
                    let delta = &f * &m[col][c];
                    m[r][c] -= delta;
                }
            }
        }
    }
    Some(m.into_iter().map(|mut r| r.pop().unwrap()).collect())
}
