//! Numerical dimension of convex bodies against a full-dimensional reference
//! body, and the polymatroid it induces on Minkowski sums.

use std::collections::HashMap;

use num::{Signed, Zero};
use rayon::prelude::*;

use crate::convgeom::{minkowski_sum_all, BodyFamily, Polytope};
use crate::error::{Error, Result};
use crate::rational::Rat;
use crate::verdict::{Verdict, Witness};

pub use crate::convgeom::affine_dim;

/// Largest ground set checked exhaustively.
pub const MAX_GROUND_SET: usize = 12;

/// Bodies `A₁..A_s`, the cap `m` and the reference body `W`.
#[derive(Clone, Debug)]
pub struct GroundSet {
    bodies: Vec<Polytope>,
    m: usize,
    w: Polytope,
}

impl GroundSet {
    /// `w = None` selects the unit cube.
    pub fn new(bodies: Vec<Polytope>, m: usize, w: Option<Polytope>) -> Result<Self> {
        let dim = bodies
            .first()
            .ok_or_else(|| Error::input("ground set needs at least one body"))?
            .dim();
        if let Some(i) = bodies.iter().position(|b| b.dim() != dim) {
            return Err(Error::input(format!("body {i} lives in dimension {}, expected {dim}", bodies[i].dim())));
        }
        if m == 0 || m > dim {
            return Err(Error::input(format!("m = {m} outside [1, {dim}]")));
        }
        let w = w.unwrap_or_else(|| Polytope::cube(dim));
        if w.dim() != dim || w.affine_dim() != dim {
            return Err(Error::input("W must be full-dimensional in the ambient space"));
        }
        Ok(GroundSet { bodies, m, w })
    }

    pub fn dim(&self) -> usize {
        self.w.dim()
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn w(&self) -> &Polytope {
        &self.w
    }

    pub fn bodies(&self) -> &[Polytope] {
        &self.bodies
    }

    pub fn len(&self) -> usize {
        self.bodies.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bodies.is_empty()
    }
}

/// `max{k ≤ m : V(A[k], W[n−k]) > 0}`, or 0 when no such `k ≥ 1` exists.
pub fn nd_with(a: &Polytope, m: usize, w: &Polytope) -> Result<usize> {
    let n = w.dim();
    if a.dim() != n {
        return Err(Error::input(format!("body lives in dimension {}, expected {n}", a.dim())));
    }
    if w.vertices() == Polytope::cube(n).vertices() {
        for k in (1..=m).rev() {
            if cube_mixed_volume(a, k)?.is_positive() {
                return Ok(k);
            }
        }
        return Ok(0);
    }
    let fam = BodyFamily::new(vec![a.clone(), w.clone()])?;
    for k in (1..=m).rev() {
        if fam.mixed_volume(&[k as u32, (n - k) as u32])?.is_positive() {
            return Ok(k);
        }
    }
    Ok(0)
}

/// `V(A[k], C[n−k])` for the unit cube `C`: the average of the `k`-volumes
/// of the coordinate projections of `A`.
pub fn cube_mixed_volume(a: &Polytope, k: usize) -> Result<Rat> {
    let n = a.dim();
    if k == 0 || k > n {
        return Err(Error::input(format!("multiplicity {k} out of range 1..={n}")));
    }
    if k == n {
        return Ok(a.volume().clone());
    }
    let mut total = Rat::zero();
    let mut count = 0u64;
    for keep in subsets_of_size(n, k) {
        let drop: Vec<usize> = (0..n).filter(|i| !keep.contains(i)).collect();
        total += a.project(&drop)?.volume();
        count += 1;
    }
    Ok(total / Rat::from_integer(count.into()))
}

fn subsets_of_size(n: usize, k: usize) -> Vec<Vec<usize>> {
    (0u64..1 << n)
        .filter(|m| m.count_ones() as usize == k)
        .map(|m| members(m, n))
        .collect()
}

pub fn nd(a: &Polytope, ground: &GroundSet) -> Result<usize> {
    nd_with(a, ground.m, &ground.w)
}

/// Rank function `r(I) = nd(Σ_{i∈I} Aᵢ)` on subsets given as bitmasks.
pub struct RankOracle {
    ground: GroundSet,
    cache: HashMap<u64, usize>,
}

impl RankOracle {
    pub fn new(ground: GroundSet) -> Self {
        RankOracle { ground, cache: HashMap::new() }
    }

    pub fn ground(&self) -> &GroundSet {
        &self.ground
    }

    fn check_mask(&self, mask: u64) -> Result<()> {
        let s = self.ground.len();
        if s < 64 && mask >> s != 0 {
            return Err(Error::input(format!("subset {mask:#b} indexes beyond {s} bodies")));
        }
        Ok(())
    }

    /// Rank without consulting or filling the cache.
    pub fn rank_uncached(&self, mask: u64) -> Result<usize> {
        self.check_mask(mask)?;
        if mask == 0 {
            return Ok(0);
        }
        let members: Vec<&Polytope> = (0..self.ground.len())
            .filter(|i| mask >> i & 1 == 1)
            .map(|i| &self.ground.bodies[i])
            .collect();
        nd(&minkowski_sum_all(&members)?, &self.ground)
    }

    pub fn rank(&mut self, mask: u64) -> Result<usize> {
        if let Some(&r) = self.cache.get(&mask) {
            return Ok(r);
        }
        let r = self.rank_uncached(mask)?;
        self.cache.insert(mask, r);
        Ok(r)
    }

    /// `rank(I)` from a list of indices.
    pub fn rank_of(&mut self, subset: &[usize]) -> Result<usize> {
        let mut mask = 0u64;
        for &i in subset {
            if i >= self.ground.len() {
                return Err(Error::input(format!("index {i} out of range for {} bodies", self.ground.len())));
            }
            mask |= 1 << i;
        }
        self.rank(mask)
    }

    /// Ranks of every subset, indexed by bitmask.
    pub fn all_ranks(&mut self) -> Result<Vec<usize>> {
        let s = self.ground.len();
        if s > MAX_GROUND_SET {
            return Err(Error::budget(format!(
                "ground set of {s} bodies exceeds the exhaustive limit {MAX_GROUND_SET}"
            )));
        }
        let missing: Vec<u64> = (0..1u64 << s).filter(|m| !self.cache.contains_key(m)).collect();
        let computed: Vec<Result<(u64, usize)>> = missing
            .into_par_iter()
            .map(|m| self.rank_uncached(m).map(|r| (m, r)))
            .collect();
        for c in computed {
            let (m, r) = c?;
            self.cache.insert(m, r);
        }
        Ok((0..1u64 << s).map(|m| self.cache[&m]).collect())
    }
}

fn members(mask: u64, s: usize) -> Vec<usize> {
    (0..s).filter(|i| mask >> i & 1 == 1).collect()
}

/// Normalization, looplessness, monotonicity and submodularity over all subsets.
pub fn check_polymatroid(oracle: &mut RankOracle) -> Result<Verdict> {
    let r = oracle.all_ranks()?;
    let s = oracle.ground.len();
    let fail = |property: &str, a: u64, b: u64| {
        Verdict::fail(Witness::Subsets {
            property: property.into(),
            first: members(a, s),
            second: members(b, s),
        })
    };
    if r[0] != 0 {
        return Ok(fail("normalized", 0, 0));
    }
    if let Some(i) = (0..s).find(|&i| r[1 << i] == 0) {
        return Ok(fail("loopless", 1 << i, 0));
    }
    let full = (1u64 << s) - 1;
    for a in 0..=full {
        for i in 0..s {
            let b = a | 1 << i;
            if r[a as usize] > r[b as usize] {
                return Ok(fail("monotone", a, b));
            }
        }
    }
    let bad = (0..=full).into_par_iter().find_first(|&a| {
        (0..=full).any(|b| r[(a | b) as usize] + r[(a & b) as usize] > r[a as usize] + r[b as usize])
    });
    if let Some(a) = bad {
        let b = (0..=full)
            .find(|&b| r[(a | b) as usize] + r[(a & b) as usize] > r[a as usize] + r[b as usize])
            .expect("found above");
        return Ok(fail("submodular", a, b));
    }
    Ok(Verdict::pass())
}

/// `nd(A+B+C) + nd(C) ≤ nd(A+C) + nd(B+C)`; margin `RHS − LHS`.
pub fn submodularity_triple_check(
    a: &Polytope,
    b: &Polytope,
    c: &Polytope,
    m: usize,
    w: Option<Polytope>,
) -> Result<Verdict> {
    let ground = GroundSet::new(vec![a.clone(), b.clone(), c.clone()], m, w)?;
    let mut oracle = RankOracle::new(ground);
    let abc = oracle.rank(0b111)? as i64;
    let c_only = oracle.rank(0b100)? as i64;
    let ac = oracle.rank(0b101)? as i64;
    let bc = oracle.rank(0b110)? as i64;
    let margin = Rat::from_integer((ac + bc - abc - c_only).into());
    Ok(Verdict::from_margin(margin, || Witness::Configuration {
        description: format!("nd(A+B+C) = {abc}, nd(C) = {c_only}, nd(A+C) = {ac}, nd(B+C) = {bc}"),
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::int;

    fn point(n: usize) -> Polytope {
        Polytope::point(vec![int(1); n]).unwrap()
    }

    #[test]
    fn cube_mixed_volume_matches_polarization() {
        let a = Polytope::new(3, vec![
            vec![int(0), int(0), int(0)],
            vec![int(2), int(1), int(0)],
            vec![int(0), int(1), int(3)],
            vec![int(1), int(-1), int(1)],
        ]).unwrap();
        let fam = BodyFamily::new(vec![a.clone(), Polytope::cube(3)]).unwrap();
        for k in 1..=3 {
            assert_eq!(
                cube_mixed_volume(&a, k).unwrap(),
                fam.mixed_volume(&[k as u32, 3 - k as u32]).unwrap()
            );
        }
    }

    #[test]
    fn nd_examples() {
        let g = GroundSet::new(vec![Polytope::cube(3)], 3, None).unwrap();
        assert_eq!(nd(&point(3), &g).unwrap(), 0);
        assert_eq!(nd(&Polytope::bipyramid(), &g).unwrap(), 3);
        let g2 = GroundSet::new(vec![Polytope::cube(3)], 2, None).unwrap();
        assert_eq!(nd(&Polytope::unit_segment(3, 2), &g2).unwrap(), 1);
        assert!(GroundSet::new(vec![Polytope::cube(3)], 4, None).is_err());
        assert!(GroundSet::new(vec![Polytope::cube(3)], 2, Some(Polytope::unit_segment(3, 0))).is_err());
    }

    #[test]
    fn rank_examples() {
        let segs = vec![Polytope::unit_segment(3, 0), Polytope::unit_segment(3, 1)];
        let mut o = RankOracle::new(GroundSet::new(segs, 2, None).unwrap());
        assert_eq!(o.rank(0).unwrap(), 0);
        assert_eq!(o.rank_of(&[0]).unwrap(), 1);
        assert_eq!(o.rank_of(&[0, 1]).unwrap(), 2);
        assert!(o.rank_of(&[2]).is_err());
        assert!(check_polymatroid(&mut o).unwrap().holds);
    }

    #[test]
    fn planted_point_is_a_loop() {
        let bodies = vec![Polytope::unit_segment(3, 0), point(3), Polytope::cube(3)];
        let mut o = RankOracle::new(GroundSet::new(bodies, 3, None).unwrap());
        let v = check_polymatroid(&mut o).unwrap();
        assert_eq!(
            v.witness,
            Some(Witness::Subsets { property: "loopless".into(), first: vec![1], second: vec![] })
        );
    }

    #[test]
    fn triple_examples() {
        let a = Polytope::unit_segment(3, 0);
        let b = Polytope::unit_segment(3, 1);
        let v = submodularity_triple_check(&a, &b, &point(3), 2, None).unwrap();
        assert_eq!(v.margin, Some(int(0)));
        let k = Polytope::bipyramid();
        assert_eq!(submodularity_triple_check(&k, &k, &k, 3, None).unwrap().margin, Some(int(0)));
    }

    #[test]
    fn oversized_ground_set_is_rejected() {
        let bodies = vec![Polytope::unit_segment(2, 0); MAX_GROUND_SET + 1];
        let mut o = RankOracle::new(GroundSet::new(bodies, 1, None).unwrap());
        assert!(matches!(check_polymatroid(&mut o), Err(Error::Budget(_))));
    }
}
