//! Exact convex hulls by the placing (beneath-beyond) method on integer
//! coordinates. The boundary is kept as a triangulation; extreme points are
//! recovered from the facet normals and the volume from a cone decomposition.

use std::collections::HashMap;

use num::{BigInt, One, Signed, Zero};

use crate::matrix::{rank, row_echelon};
use crate::rational::{big, common_denominator, factorial, to_integers, Rat};

pub(crate) struct Hull {
    /// Indices into the input of the extreme points, input order.
    pub extreme: Vec<usize>,
    pub affine_dim: usize,
    /// Lebesgue volume in the ambient space; zero unless full-dimensional.
    pub volume: Rat,
}

struct Facet {
    verts: Vec<usize>,
    normal: Vec<BigInt>,
    offset: BigInt,
}

/// Fraction-free (Bareiss) determinant.
pub(crate) fn det_int(mut m: Vec<Vec<BigInt>>) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut negate = false;
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            let Some(i) = (k + 1..n).find(|&i| !m[i][k].is_zero()) else {
                return BigInt::zero();
            };
            m.swap(i, k);
            negate = !negate;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = (&m[i][j] * &m[k][k] - &m[i][k] * &m[k][j]) / &prev;
                m[i][j] = v;
            }
        }
        prev = m[k][k].clone();
    }
    let d = m[n - 1][n - 1].clone();
    if negate {
        -d
    } else {
        d
    }
}

fn dot(a: &[BigInt], b: &[BigInt]) -> BigInt {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn to_rat_rows(rows: &[Vec<BigInt>]) -> Vec<Vec<Rat>> {
    rows.iter().map(|r| r.iter().map(big).collect()).collect()
}

struct Placing<'a> {
    pts: &'a [Vec<BigInt>],
    r: usize,
    center: Vec<BigInt>,
    center_scale: BigInt,
    facets: Vec<Facet>,
}

impl<'a> Placing<'a> {
    fn make_facet(&self, verts: Vec<usize>) -> Facet {
        let r = self.r;
        let base = &self.pts[verts[0]];
        let diffs: Vec<Vec<BigInt>> = verts[1..]
            .iter()
            .map(|&v| self.pts[v].iter().zip(base).map(|(a, b)| a - b).collect())
            .collect();
        let mut normal: Vec<BigInt> = (0..r)
            .map(|j| {
                let minor: Vec<Vec<BigInt>> = diffs
                    .iter()
                    .map(|row| row.iter().enumerate().filter(|&(c, _)| c != j).map(|(_, v)| v.clone()).collect())
                    .collect();
                let d = det_int(minor);
                if j % 2 == 1 {
                    -d
                } else {
                    d
                }
            })
            .collect();
        let mut offset = dot(&normal, base);
        if dot(&normal, &self.center) > &offset * &self.center_scale {
            normal.iter_mut().for_each(|v| *v = -v.clone());
            offset = -offset;
        }
        Facet { verts, normal, offset }
    }

    fn insert(&mut self, p: usize) {
        let point = &self.pts[p];
        let visible: Vec<bool> = self
            .facets
            .iter()
            .map(|f| dot(&f.normal, point) > f.offset)
            .collect();
        if !visible.iter().any(|&v| v) {
            return;
        }
        let mut counts: HashMap<Vec<usize>, usize> = HashMap::new();
        let mut order: Vec<Vec<usize>> = Vec::new();
        for (f, _) in self.facets.iter().zip(&visible).filter(|(_, &v)| v) {
            for skip in 0..f.verts.len() {
                let ridge: Vec<usize> = f
                    .verts
                    .iter()
                    .enumerate()
                    .filter(|&(i, _)| i != skip)
                    .map(|(_, &v)| v)
                    .collect();
                let c = counts.entry(ridge.clone()).or_insert(0);
                if *c == 0 {
                    order.push(ridge);
                }
                *c += 1;
            }
        }
        let mut keep = visible.iter();
        self.facets.retain(|_| !*keep.next().unwrap());
        for ridge in order {
            if counts[&ridge] == 1 {
                let mut verts = ridge;
                verts.push(p);
                verts.sort_unstable();
                let f = self.make_facet(verts);
                self.facets.push(f);
            }
        }
    }
}

/// Full-dimensional hull of integer points in `Z^r`, `r ≥ 1`, affinely spanning.
/// Returns the extreme-point indices and `r!·volume`.
fn placing(pts: &[Vec<BigInt>], r: usize) -> (Vec<usize>, BigInt) {
    let mut init = vec![0usize];
    let mut diffs: Vec<Vec<Rat>> = Vec::new();
    for i in 1..pts.len() {
        if init.len() == r + 1 {
            break;
        }
        let d: Vec<Rat> = pts[i].iter().zip(&pts[0]).map(|(a, b)| big(&(a - b))).collect();
        diffs.push(d);
        if rank(&diffs) == diffs.len() {
            init.push(i);
        } else {
            diffs.pop();
        }
    }
    debug_assert_eq!(init.len(), r + 1);
    let mut center = vec![BigInt::zero(); r];
    for &i in &init {
        for (c, v) in center.iter_mut().zip(&pts[i]) {
            *c += v;
        }
    }
    let mut state = Placing {
        pts,
        r,
        center,
        center_scale: BigInt::from(r + 1),
        facets: Vec::new(),
    };
    for skip in 0..=r {
        let verts: Vec<usize> = init.iter().enumerate().filter(|&(i, _)| i != skip).map(|(_, &v)| v).collect();
        let f = state.make_facet(verts);
        state.facets.push(f);
    }
    for p in 0..pts.len() {
        if !init.contains(&p) {
            state.insert(p);
        }
    }

    let apex = &pts[init[0]];
    let mut scaled_volume = BigInt::zero();
    let mut normals_at: HashMap<usize, Vec<usize>> = HashMap::new();
    for (fi, f) in state.facets.iter().enumerate() {
        let m: Vec<Vec<BigInt>> = f
            .verts
            .iter()
            .map(|&v| pts[v].iter().zip(apex).map(|(a, b)| a - b).collect())
            .collect();
        scaled_volume += det_int(m).abs();
        for &v in &f.verts {
            normals_at.entry(v).or_default().push(fi);
        }
    }
    let mut extreme: Vec<usize> = normals_at
        .into_iter()
        .filter(|(_, fs)| {
            let rows: Vec<Vec<BigInt>> = fs.iter().map(|&fi| state.facets[fi].normal.clone()).collect();
            rank(&to_rat_rows(&rows)) == r
        })
        .map(|(v, _)| v)
        .collect();
    extreme.sort_unstable();
    (extreme, scaled_volume)
}

/// Hull of a nonempty list of points of common length `n ≥ 1`.
pub(crate) fn hull(points: &[Vec<Rat>]) -> Hull {
    let n = points[0].len();
    let mut order: Vec<usize> = (0..points.len()).collect();
    order.sort_by(|&a, &b| points[a].cmp(&points[b]));
    order.dedup_by(|a, b| points[*a] == points[*b]);
    if order.len() == 1 {
        return Hull { extreme: order, affine_dim: 0, volume: Rat::zero() };
    }
    let scale = common_denominator(points.iter().flatten());
    let ints: Vec<Vec<BigInt>> = order.iter().map(|&i| to_integers(&points[i], &scale)).collect();
    let diffs: Vec<Vec<Rat>> = ints[1..]
        .iter()
        .map(|p| p.iter().zip(&ints[0]).map(|(a, b)| big(&(a - b))).collect())
        .collect();
    let (_, pivots) = row_echelon(&diffs);
    let r = pivots.len();
    let projected: Vec<Vec<BigInt>> = ints
        .iter()
        .map(|p| pivots.iter().map(|&c| p[c].clone()).collect())
        .collect();
    let (extreme_local, scaled_volume) = placing(&projected, r);
    let volume = if r == n {
        Rat::new(scaled_volume, factorial(r as u32) * num::pow(scale, r))
    } else {
        Rat::zero()
    };
    let mut extreme: Vec<usize> = extreme_local.into_iter().map(|i| order[i]).collect();
    extreme.sort_unstable();
    Hull { extreme, affine_dim: r, volume }
}
