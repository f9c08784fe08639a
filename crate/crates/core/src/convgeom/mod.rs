//! Exact polytope geometry in V-representation: canonical extreme points,
//! Minkowski sums, projections, volumes and mixed volumes.

mod hull;
mod mixed;

pub use mixed::{
    mixed_volume, one_rayleigh_counterexample_report, rkt_convex_check, volume_polynomial,
    BodyFamily, MixedVolumeSpec, RayleighCounterexample,
};

use num::{One, Zero};

use crate::error::{Error, Result};
use crate::matrix::rank;
use crate::rational::{int, Rat};

/// A convex polytope given by its extreme points, sorted lexicographically.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Polytope {
    dim: usize,
    vertices: Vec<Vec<Rat>>,
    affine_dim: usize,
    volume: Rat,
}

impl Polytope {
    /// Convex hull of `points` in `ℝ^dim`.
    pub fn new(dim: usize, points: Vec<Vec<Rat>>) -> Result<Self> {
        if dim == 0 {
            return Err(Error::input("polytope dimension must be positive"));
        }
        if points.is_empty() {
            return Err(Error::input("polytope needs at least one vertex"));
        }
        if let Some(p) = points.iter().position(|p| p.len() != dim) {
            return Err(Error::input(format!(
                "vertex {p} has {} coordinates, expected {dim}",
                points[p].len()
            )));
        }
        Ok(Self::from_hull(dim, points))
    }

    fn from_hull(dim: usize, points: Vec<Vec<Rat>>) -> Self {
        let h = hull::hull(&points);
        let mut vertices: Vec<Vec<Rat>> = h.extreme.iter().map(|&i| points[i].clone()).collect();
        vertices.sort();
        Polytope { dim, vertices, affine_dim: h.affine_dim, volume: h.volume }
    }

    pub fn point(coords: Vec<Rat>) -> Result<Self> {
        Self::new(coords.len(), vec![coords])
    }

    /// `[0,1]^n`.
    pub fn cube(n: usize) -> Self {
        let pts = (0..1usize << n)
            .map(|mask| (0..n).map(|i| int(((mask >> i) & 1) as i64)).collect())
            .collect();
        Self::from_hull(n, pts)
    }

    /// The segment `[a, b]`.
    pub fn segment(a: Vec<Rat>, b: Vec<Rat>) -> Result<Self> {
        Self::new(a.len(), vec![a, b])
    }

    /// `[0, e_i]` in `ℝ^n`.
    pub fn unit_segment(n: usize, i: usize) -> Self {
        let mut e = vec![Rat::zero(); n];
        e[i] = Rat::one();
        Self::from_hull(n, vec![vec![Rat::zero(); n], e])
    }

    /// `conv(0, e_1, ..., e_n)`.
    pub fn standard_simplex(n: usize) -> Self {
        let mut pts = vec![vec![Rat::zero(); n]];
        for i in 0..n {
            let mut e = vec![Rat::zero(); n];
            e[i] = Rat::one();
            pts.push(e);
        }
        Self::from_hull(n, pts)
    }

    /// `conv([−1,1]² × {0}, ±e₃)`.
    pub fn bipyramid() -> Self {
        let mut pts = Vec::new();
        for (a, b) in [(-1, -1), (-1, 1), (1, -1), (1, 1)] {
            pts.push(vec![int(a), int(b), int(0)]);
        }
        pts.push(vec![int(0), int(0), int(1)]);
        pts.push(vec![int(0), int(0), int(-1)]);
        Self::from_hull(3, pts)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn vertices(&self) -> &[Vec<Rat>] {
        &self.vertices
    }

    pub fn affine_dim(&self) -> usize {
        self.affine_dim
    }

    pub fn is_point(&self) -> bool {
        self.vertices.len() == 1
    }

    /// Exact Lebesgue volume in `ℝ^dim`.
    pub fn volume(&self) -> &Rat {
        &self.volume
    }

    pub fn translate(&self, t: &[Rat]) -> Result<Self> {
        if t.len() != self.dim {
            return Err(Error::input("translation vector has the wrong length"));
        }
        let pts = self
            .vertices
            .iter()
            .map(|v| v.iter().zip(t).map(|(a, b)| a + b).collect())
            .collect();
        Ok(Self::from_hull(self.dim, pts))
    }

    /// `c·P` for `c ≥ 0`.
    pub fn scale(&self, c: &Rat) -> Result<Self> {
        if c < &Rat::zero() {
            return Err(Error::input("scaling factor must be nonnegative"));
        }
        let pts: Vec<Vec<Rat>> = self
            .vertices
            .iter()
            .map(|v| v.iter().map(|a| a * c).collect())
            .collect();
        if c.is_zero() {
            return Ok(Self::from_hull(self.dim, pts));
        }
        let mut volume = self.volume.clone();
        for _ in 0..self.dim {
            volume *= c;
        }
        Ok(Polytope { dim: self.dim, vertices: pts, affine_dim: self.affine_dim, volume })
    }

    pub fn minkowski_sum(&self, other: &Polytope) -> Result<Self> {
        if self.dim != other.dim {
            return Err(Error::input(format!(
                "Minkowski sum of polytopes in dimensions {} and {}",
                self.dim, other.dim
            )));
        }
        let mut pts = Vec::with_capacity(self.vertices.len() * other.vertices.len());
        for p in &self.vertices {
            for q in &other.vertices {
                pts.push(p.iter().zip(q).map(|(a, b)| a + b).collect());
            }
        }
        Ok(Self::from_hull(self.dim, pts))
    }

    /// Image under deleting the coordinates in `drop`.
    pub fn project(&self, drop: &[usize]) -> Result<Self> {
        if let Some(&bad) = drop.iter().find(|&&i| i >= self.dim) {
            return Err(Error::input(format!("coordinate {bad} out of range for dimension {}", self.dim)));
        }
        let keep: Vec<usize> = (0..self.dim).filter(|i| !drop.contains(i)).collect();
        if keep.is_empty() {
            return Err(Error::input("cannot drop every coordinate"));
        }
        let pts = self
            .vertices
            .iter()
            .map(|v| keep.iter().map(|&i| v[i].clone()).collect())
            .collect();
        Ok(Self::from_hull(keep.len(), pts))
    }
}

/// Dimension of the affine hull of `P`, by a direct rank computation.
pub fn affine_dim(p: &Polytope) -> usize {
    let base = &p.vertices[0];
    let diffs: Vec<Vec<Rat>> = p.vertices[1..]
        .iter()
        .map(|v| v.iter().zip(base).map(|(a, b)| a - b).collect())
        .collect();
    rank(&diffs)
}

/// Sum of a nonempty list of polytopes.
pub fn minkowski_sum_all(bodies: &[&Polytope]) -> Result<Polytope> {
    let (first, rest) = bodies
        .split_first()
        .ok_or_else(|| Error::input("empty Minkowski sum"))?;
    rest.iter().try_fold((*first).clone(), |acc, b| acc.minkowski_sum(b))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    fn v(c: &[i64]) -> Vec<Rat> {
        c.iter().map(|&x| int(x)).collect()
    }

    #[test]
    fn volume_examples() {
        assert_eq!(Polytope::cube(3).volume(), &int(1));
        let seg = Polytope::segment(v(&[0, 0]), v(&[1, 2])).unwrap();
        assert_eq!(seg.volume(), &int(0));
        let b = Polytope::bipyramid();
        assert_eq!(b.volume(), &rat(8, 3));
        assert_eq!(b.vertices().len(), 6);
        assert_eq!(Polytope::standard_simplex(4).volume(), &rat(1, 24));
    }

    #[test]
    fn minkowski_examples() {
        let sq = Polytope::cube(2);
        let origin = Polytope::point(v(&[0, 0])).unwrap();
        assert_eq!(sq.minkowski_sum(&origin).unwrap(), sq);
        let s = Polytope::unit_segment(2, 0).minkowski_sum(&Polytope::unit_segment(2, 1)).unwrap();
        assert_eq!(s, sq);
        let big = sq.translate(&v(&[-1, -1])).unwrap().scale(&int(2)).unwrap();
        let twice = big.minkowski_sum(&big).unwrap();
        assert_eq!(twice, big.scale(&int(2)).unwrap());
        assert_eq!(twice.volume(), &int(16));
        assert!(sq.minkowski_sum(&Polytope::cube(3)).is_err());
    }

    #[test]
    fn projection_examples() {
        let b = Polytope::bipyramid();
        let p1 = b.project(&[0]).unwrap();
        assert_eq!(p1.volume(), &int(2));
        assert_eq!(p1.vertices().len(), 4);
        assert_eq!(b.project(&[1]).unwrap().volume(), &int(2));
        let p12 = b.project(&[0, 1]).unwrap();
        assert_eq!(p12.volume(), &int(2));
        assert_eq!(p12.vertices(), &[v(&[-1]), v(&[1])]);
        assert!(b.project(&[0, 1, 2]).is_err());
        assert!(b.project(&[3]).is_err());
        let boxed = Polytope::cube(3).scale(&int(2)).unwrap();
        assert_eq!(boxed.project(&[2]).unwrap(), Polytope::cube(2).scale(&int(2)).unwrap());
    }

    #[test]
    fn affine_dimension() {
        assert_eq!(affine_dim(&Polytope::point(v(&[1, 2, 3])).unwrap()), 0);
        assert_eq!(affine_dim(&Polytope::unit_segment(3, 1)), 1);
        assert_eq!(affine_dim(&Polytope::bipyramid()), 3);
        assert_eq!(Polytope::bipyramid().affine_dim(), 3);
    }
}
