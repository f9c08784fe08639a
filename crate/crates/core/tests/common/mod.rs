//! Independent oracles shared by the integration tests. None of them call
//! into the code paths they are used to check.

#![allow(dead_code)]

use std::collections::{BTreeMap, HashSet};

use lorentz_core::{HomPoly, MultiIndex, Rat};
use num::{BigInt, One, Signed, Zero};

pub fn int(n: i64) -> Rat {
    Rat::from_integer(n.into())
}

pub fn rat(p: i64, q: i64) -> Rat {
    Rat::new(p.into(), q.into())
}

pub fn ints(v: &[i64]) -> Vec<Rat> {
    v.iter().map(|&x| int(x)).collect()
}

fn factorial(n: u32) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * k)
}

/// `2^{kl}(d−k)!(d−l)!/(d!(d−k−l)!)` straight from factorials.
pub fn rkt_constant_oracle(d: u32, k: u32, l: u32) -> Rat {
    let num = (BigInt::one() << (k * l) as usize) * factorial(d - k) * factorial(d - l);
    let den = factorial(d) * factorial(d - k - l);
    Rat::new(num, den)
}

/// Permutations of `0..n` with their signs.
pub fn signed_permutations(n: usize) -> Vec<(Vec<usize>, bool)> {
    fn rec(cur: &mut Vec<usize>, used: &mut Vec<bool>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == used.len() {
            out.push(cur.clone());
            return;
        }
        for i in 0..used.len() {
            if !used[i] {
                used[i] = true;
                cur.push(i);
                rec(cur, used, out);
                cur.pop();
                used[i] = false;
            }
        }
    }
    let mut out = Vec::new();
    rec(&mut Vec::new(), &mut vec![false; n], &mut out);
    out.into_iter()
        .map(|p| {
            let inversions = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).filter(|&(i, j)| p[i] > p[j]).count();
            let even = inversions % 2 == 0;
            (p, even)
        })
        .collect()
}

/// `det[x_i^{exps_j}]` as a polynomial in `exps.len()` variables.
pub fn alternant(exps: &[u32]) -> HomPoly {
    let n = exps.len();
    let degree: u32 = exps.iter().sum();
    let mut terms: BTreeMap<Vec<u32>, Rat> = BTreeMap::new();
    for (p, even) in signed_permutations(n) {
        let mono: Vec<u32> = (0..n).map(|i| exps[p[i]]).collect();
        let c = terms.entry(mono).or_insert_with(Rat::zero);
        if even {
            *c += Rat::one();
        } else {
            *c -= Rat::one();
        }
    }
    HomPoly::new(n, degree, terms.into_iter().map(|(e, c)| (MultiIndex::new(e), c))).unwrap()
}

/// Conjugate partition, padded with zeros to length `e`.
pub fn conjugate_padded(parts: &[u32], e: u32) -> Vec<u32> {
    let largest = parts.first().copied().unwrap_or(0);
    let mut conj: Vec<u32> = (1..=largest).map(|k| parts.iter().filter(|&&p| p >= k).count() as u32).collect();
    conj.resize(e as usize, 0);
    conj
}

/// Bialternant identity `s_μ · a_δ = a_{μ+δ}` with `μ` the conjugate of
/// `parts`: returns `(a_{μ+δ}, a_δ)`.
pub fn bialternant_pair(parts: &[u32], e: u32) -> (HomPoly, HomPoly) {
    let mu = conjugate_padded(parts, e);
    let n = e as usize;
    let delta: Vec<u32> = (0..n).map(|j| (n - 1 - j) as u32).collect();
    let shifted: Vec<u32> = mu.iter().zip(&delta).map(|(a, b)| a + b).collect();
    (alternant(&shifted), alternant(&delta))
}

fn det(mut m: Vec<Vec<Rat>>) -> Rat {
    let n = m.len();
    let mut acc = Rat::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&r| !m[r][c].is_zero()) else {
            return Rat::zero();
        };
        if p != c {
            m.swap(p, c);
            acc = -acc;
        }
        acc *= &m[c][c];
        for r in c + 1..n {
            let f = &m[r][c] / &m[c][c];
            for k in c..n {
                let sub = &f * &m[c][k];
                m[r][k] -= sub;
            }
        }
    }
    acc
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    (0u32..1 << n)
        .filter(|m| m.count_ones() as usize == k)
        .map(|m| (0..n).filter(|i| m >> i & 1 == 1).collect())
        .collect()
}

/// Volume of the zonotope `Σ [0, gᵢ]`: the sum of `|det|` over `n`-subsets.
pub fn zonotope_volume(gens: &[Vec<Rat>]) -> Rat {
    let n = gens[0].len();
    subsets(gens.len(), n)
        .into_iter()
        .map(|s| det(s.iter().map(|&i| gens[i].clone()).collect()).abs())
        .fold(Rat::zero(), |a, b| a + b)
}

/// `|det[g₁..g_n]| / n!`.
pub fn segment_mixed_volume(gens: &[Vec<Rat>]) -> Rat {
    let n = gens.len() as u32;
    det(gens.to_vec()).abs() / Rat::from_integer(factorial(n))
}

/// Rank by plain Gaussian elimination.
pub fn rank(rows: &[Vec<Rat>]) -> usize {
    let mut m = rows.to_vec();
    let cols = m.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else { continue };
        m.swap(p, r);
        for i in 0..m.len() {
            if i != r && !m[i][c].is_zero() {
                let f = &m[i][c] / &m[r][c];
                for k in c..cols {
                    let sub = &f * &m[r][k];
                    m[i][k] -= sub;
                }
            }
        }
        r += 1;
    }
    r
}

/// Symmetric exchange property straight from the definition.
pub fn m_convex_oracle(set: &[Vec<u32>]) -> bool {
    let members: HashSet<&Vec<u32>> = set.iter().collect();
    let moved = |v: &Vec<u32>, minus: usize, plus: usize| -> Option<Vec<u32>> {
        let mut w = v.clone();
        w[minus] = w[minus].checked_sub(1)?;
        w[plus] += 1;
        Some(w)
    };
    for a in set {
        for b in set {
            for i in 0..a.len() {
                if a[i] <= b[i] {
                    continue;
                }
                let ok = (0..a.len()).any(|j| {
                    a[j] < b[j]
                        && moved(a, i, j).is_some_and(|x| members.contains(&x))
                        && moved(b, j, i).is_some_and(|y| members.contains(&y))
                });
                if !ok {
                    return false;
                }
            }
        }
    }
    true
}

/// `Π_j (Σ_i c_{ji} x_i)` expanded by repeated multiplication of term maps.
pub fn product_of_forms(forms: &[Vec<Rat>]) -> HomPoly {
    let n = forms[0].len();
    let mut acc: BTreeMap<Vec<u32>, Rat> = BTreeMap::new();
    acc.insert(vec![0; n], Rat::one());
    for form in forms {
        let mut next: BTreeMap<Vec<u32>, Rat> = BTreeMap::new();
        for (e, c) in &acc {
            for (i, a) in form.iter().enumerate() {
                if a.is_zero() {
                    continue;
                }
                let mut f = e.clone();
                f[i] += 1;
                *next.entry(f).or_insert_with(Rat::zero) += c * a;
            }
        }
        acc = next;
    }
    let d = forms.len() as u32;
    HomPoly::new(n, d, acc.into_iter().filter(|(_, c)| !c.is_zero()).map(|(e, c)| (MultiIndex::new(e), c))).unwrap()
}

pub fn is_positive(r: &Rat) -> bool {
    r.is_positive()
}
