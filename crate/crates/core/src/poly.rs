//! Sparse homogeneous polynomials with exact rational coefficients.
//!
//! A [`HomPoly`] is a map from exponent vectors ([`MultiIndex`]) to nonzero
//! coefficients, all of the same total degree. Zero coefficients are never
//! stored, so structural equality is polynomial equality.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::matrix::SymMatrix;
use crate::rational::{big, factorial, Rat};

/// Exponent vector `α = (α₁, …, αₙ)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MultiIndex(Vec<u32>);

impl MultiIndex {
    pub fn new(exponents: Vec<u32>) -> Self {
        MultiIndex(exponents)
    }

    pub fn zero(n: usize) -> Self {
        MultiIndex(vec![0; n])
    }

    /// The unit vector `eᵢ`.
    pub fn unit(n: usize, i: usize) -> Self {
        let mut v = vec![0; n];
        v[i] = 1;
        MultiIndex(v)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn get(&self, i: usize) -> u32 {
        self.0[i]
    }

    /// `|α| = Σ αᵢ`.
    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    /// `α! = Π αᵢ!`.
    pub fn factorial(&self) -> num::BigInt {
        self.0.iter().map(|&a| factorial(a)).product()
    }

    pub fn plus(&self, other: &MultiIndex) -> MultiIndex {
        debug_assert_eq!(self.len(), other.len());
        MultiIndex(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// `α − β` when `β ≤ α` componentwise.
    pub fn checked_minus(&self, other: &MultiIndex) -> Option<MultiIndex> {
        self.0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| a.checked_sub(*b))
            .collect::<Option<Vec<_>>>()
            .map(MultiIndex)
    }

    pub fn with_delta(&self, plus: usize, minus: usize) -> Option<MultiIndex> {
        let mut v = self.0.clone();
        v[minus] = v[minus].checked_sub(1)?;
        v[plus] += 1;
        Some(MultiIndex(v))
    }

    /// All multi-indices of length `n` and degree `d`, in lexicographic order.
    pub fn all_of_degree(n: usize, d: u32) -> Vec<MultiIndex> {
        fn rec(n: usize, d: u32, prefix: &mut Vec<u32>, out: &mut Vec<MultiIndex>) {
            if prefix.len() + 1 == n {
                prefix.push(d);
                out.push(MultiIndex(prefix.clone()));
                prefix.pop();
                return;
            }
            for a in 0..=d {
                prefix.push(a);
                rec(n, d - a, prefix, out);
                prefix.pop();
            }
        }
        let mut out = Vec::new();
        if n == 0 {
            if d == 0 {
                out.push(MultiIndex(Vec::new()));
            }
            return out;
        }
        rec(n, d, &mut Vec::with_capacity(n), &mut out);
        out
    }

    /// All multi-indices of length `n` with degree at most `d`, by degree then lexicographically.
    pub fn all_up_to_degree(n: usize, d: u32) -> Vec<MultiIndex> {
        (0..=d).flat_map(|k| Self::all_of_degree(n, k)).collect()
    }
}

impl fmt::Display for MultiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, a) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{a}")?;
        }
        write!(f, ")")
    }
}

/// A homogeneous polynomial of degree `degree` in `nvars` variables.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomPoly {
    nvars: usize,
    degree: u32,
    terms: BTreeMap<MultiIndex, Rat>,
}

impl HomPoly {
    /// Builds a polynomial from `(exponent, coefficient)` pairs. Repeated
    /// exponents are summed and zero coefficients dropped.
    pub fn new(
        nvars: usize,
        degree: u32,
        terms: impl IntoIterator<Item = (MultiIndex, Rat)>,
    ) -> Result<Self> {
        if nvars == 0 {
            return Err(Error::input("polynomial must have at least one variable"));
        }
        let mut p = HomPoly::zero(nvars, degree);
        for (exp, coef) in terms {
            if exp.len() != nvars {
                return Err(Error::input(format!(
                    "exponent {exp} has length {} but nvars = {nvars}",
                    exp.len()
                )));
            }
            if exp.degree() != degree {
                return Err(Error::input(format!(
                    "exponent {exp} has degree {} but polynomial degree is {degree}",
                    exp.degree()
                )));
            }
            p.add_term(exp, coef);
        }
        Ok(p)
    }

    /// Convenience constructor from integer exponent slices.
    pub fn from_pairs(nvars: usize, degree: u32, pairs: &[(&[u32], Rat)]) -> Result<Self> {
        Self::new(
            nvars,
            degree,
            pairs
                .iter()
                .map(|(e, c)| (MultiIndex::new(e.to_vec()), c.clone())),
        )
    }

    pub fn zero(nvars: usize, degree: u32) -> Self {
        HomPoly {
            nvars,
            degree,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(nvars: usize, c: Rat) -> Self {
        let mut p = HomPoly::zero(nvars, 0);
        p.add_term(MultiIndex::zero(nvars), c);
        p
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut p = HomPoly::zero(nvars, 1);
        p.add_term(MultiIndex::unit(nvars, i), Rat::one());
        p
    }

    /// `Σ cᵢ xᵢ`.
    pub fn linear_form(coeffs: &[Rat]) -> Self {
        let n = coeffs.len();
        let mut p = HomPoly::zero(n, 1);
        for (i, c) in coeffs.iter().enumerate() {
            p.add_term(MultiIndex::unit(n, i), c.clone());
        }
        p
    }

    fn add_term(&mut self, exp: MultiIndex, coef: Rat) {
        if coef.is_zero() {
            return;
        }
        let entry = self.terms.entry(exp);
        match entry {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(coef);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += coef;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&MultiIndex, &Rat)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, exp: &MultiIndex) -> Rat {
        self.terms.get(exp).cloned().unwrap_or_else(Rat::zero)
    }

    /// `supp(f)`, in ascending exponent order.
    pub fn support(&self) -> Vec<MultiIndex> {
        self.terms.keys().cloned().collect()
    }

    pub fn has_nonnegative_coefficients(&self) -> bool {
        self.terms.values().all(|c| !c.is_negative())
    }

    /// First term with a negative coefficient, if any.
    pub fn first_negative_term(&self) -> Option<(&MultiIndex, &Rat)> {
        self.terms.iter().find(|(_, c)| c.is_negative())
    }

    fn check_point(&self, x: &[Rat]) -> Result<()> {
        if x.len() != self.nvars {
            return Err(Error::input(format!(
                "point has length {} but nvars = {}",
                x.len(),
                self.nvars
            )));
        }
        Ok(())
    }

    /// `f(x) = Σ c_α x^α`.
    pub fn evaluate(&self, x: &[Rat]) -> Result<Rat> {
        self.check_point(x)?;
        Ok(self.eval_unchecked(x))
    }

    pub(crate) fn eval_unchecked(&self, x: &[Rat]) -> Rat {
        let d = self.degree as usize;
        let powers: Vec<Vec<Rat>> = x
            .iter()
            .map(|xi| {
                let mut p = Vec::with_capacity(d + 1);
                p.push(Rat::one());
                for k in 0..d {
                    let next = &p[k] * xi;
                    p.push(next);
                }
                p
            })
            .collect();
        let mut acc = Rat::zero();
        for (exp, c) in &self.terms {
            let mut t = c.clone();
            for (i, &a) in exp.exponents().iter().enumerate() {
                if a > 0 {
                    t *= &powers[i][a as usize];
                }
            }
            acc += t;
        }
        acc
    }

    /// `∂^α f`. Differentiating more than `degree` times gives the zero
    /// polynomial of degree 0.
    pub fn partial(&self, alpha: &MultiIndex) -> Result<HomPoly> {
        if alpha.len() != self.nvars {
            return Err(Error::input(format!(
                "multi-index {alpha} has length {} but nvars = {}",
                alpha.len(),
                self.nvars
            )));
        }
        let k = alpha.degree();
        if k > self.degree {
            return Ok(HomPoly::zero(self.nvars, 0));
        }
        let mut out = HomPoly::zero(self.nvars, self.degree - k);
        for (exp, c) in &self.terms {
            let Some(rest) = exp.checked_minus(alpha) else {
                continue;
            };
            let mut factor = num::BigInt::one();
            for (a, b) in exp.exponents().iter().zip(alpha.exponents()) {
                for j in 0..*b {
                    factor *= a - j;
                }
            }
            out.add_term(rest, c * big(&factor));
        }
        Ok(out)
    }

    /// `∂ᵢ f`.
    pub fn partial_var(&self, i: usize) -> Result<HomPoly> {
        if i >= self.nvars {
            return Err(Error::input(format!("variable index {i} out of range")));
        }
        self.partial(&MultiIndex::unit(self.nvars, i))
    }

    pub fn gradient_at(&self, x: &[Rat]) -> Result<Vec<Rat>> {
        self.check_point(x)?;
        (0..self.nvars)
            .map(|i| self.partial_var(i)?.evaluate(x))
            .collect()
    }

    /// The Hessian `[∂ᵢ∂ⱼ f(x)]`.
    pub fn hessian_at(&self, x: &[Rat]) -> Result<SymMatrix> {
        if self.degree < 2 {
            return Err(Error::input(format!(
                "Hessian needs degree >= 2, got {}",
                self.degree
            )));
        }
        self.check_point(x)?;
        let n = self.nvars;
        let mut entries = vec![Rat::zero(); n * n];
        for i in 0..n {
            let di = self.partial_var(i)?;
            for j in i..n {
                let v = di.partial_var(j)?.eval_unchecked(x);
                entries[i * n + j] = v.clone();
                entries[j * n + i] = v;
            }
        }
        SymMatrix::from_row_major(n, entries)
    }

    /// The complete homogeneous form `F_f(v₁, …, v_d)`, computed by
    /// polarization: `(1/d!) Σ_{S ⊆ [d]} (−1)^{d−|S|} f(Σ_{i∈S} vᵢ)`.
    pub fn multilinear_form(&self, vectors: &[Vec<Rat>]) -> Result<Rat> {
        let d = self.degree as usize;
        if vectors.len() != d {
            return Err(Error::input(format!(
                "complete homogeneous form of a degree-{d} polynomial takes {d} vectors, got {}",
                vectors.len()
            )));
        }
        for v in vectors {
            self.check_point(v)?;
        }
        if d > 24 {
            return Err(Error::budget("polarization over more than 2^24 subsets"));
        }
        let mut acc = Rat::zero();
        for mask in 0u32..(1u32 << d) {
            let mut sum = vec![Rat::zero(); self.nvars];
            for (i, v) in vectors.iter().enumerate() {
                if mask & (1 << i) != 0 {
                    for (s, x) in sum.iter_mut().zip(v) {
                        *s += x;
                    }
                }
            }
            let val = self.eval_unchecked(&sum);
            if (d - mask.count_ones() as usize) % 2 == 0 {
                acc += val;
            } else {
                acc -= val;
            }
        }
        Ok(acc / big(&factorial(d as u32)))
    }

    /// Pullback `g(y) = f(L·y)` along the `nvars × m` matrix `l` (row-major rows).
    pub fn substitute_linear(&self, l: &[Vec<Rat>], m: usize) -> Result<HomPoly> {
        if l.len() != self.nvars || l.iter().any(|row| row.len() != m) || m == 0 {
            return Err(Error::input(format!(
                "substitution matrix must be {}x{m}",
                self.nvars
            )));
        }
        let forms: Vec<HomPoly> = l.iter().map(|row| HomPoly::linear_form(row)).collect();
        let d = self.degree as usize;
        let mut powers: Vec<Vec<HomPoly>> = Vec::with_capacity(self.nvars);
        for form in &forms {
            let mut p = vec![HomPoly::constant(m, Rat::one())];
            for k in 0..d {
                let next = &p[k] * form;
                p.push(next);
            }
            powers.push(p);
        }
        let mut out = HomPoly::zero(m, self.degree);
        for (exp, c) in &self.terms {
            let mut t = HomPoly::constant(m, c.clone());
            for (i, &a) in exp.exponents().iter().enumerate() {
                if a > 0 {
                    t = &t * &powers[i][a as usize];
                }
            }
            out = &out + &t;
        }
        Ok(out)
    }

    pub fn scale(&self, c: &Rat) -> HomPoly {
        let mut out = HomPoly::zero(self.nvars, self.degree);
        for (e, v) in &self.terms {
            out.add_term(e.clone(), v * c);
        }
        out
    }

    pub fn pow(&self, k: u32) -> HomPoly {
        let mut acc = HomPoly::constant(self.nvars, Rat::one());
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    /// Terms whose exponent in `var` equals `power`, with that variable
    /// removed: the coefficient of `x_var^power` as a polynomial in the
    /// remaining variables.
    pub fn coefficient_of_power(&self, var: usize, power: u32) -> Result<HomPoly> {
        if var >= self.nvars || self.nvars < 2 {
            return Err(Error::input("cannot extract a variable from this polynomial"));
        }
        if power > self.degree {
            return Ok(HomPoly::zero(self.nvars - 1, 0));
        }
        let mut out = HomPoly::zero(self.nvars - 1, self.degree - power);
        for (e, c) in &self.terms {
            if e.get(var) == power {
                let mut v = e.exponents().to_vec();
                v.remove(var);
                out.add_term(MultiIndex(v), c.clone());
            }
        }
        Ok(out)
    }

    /// Multiplies by the LCM of the coefficient denominators so every
    /// coefficient becomes an integer. Returns the factor used.
    pub fn integer_scale(&self) -> num::BigInt {
        crate::rational::common_denominator(self.terms.values())
    }
}

fn sum_degree(a: &HomPoly, b: &HomPoly) -> u32 {
    match (a.is_zero(), b.is_zero()) {
        (true, false) => b.degree,
        (false, true) | (true, true) => a.degree,
        (false, false) => {
            assert_eq!(a.degree, b.degree, "adding polynomials of different degree");
            a.degree
        }
    }
}

impl Add for &HomPoly {
    type Output = HomPoly;

    /// Panics if the variable counts differ or both summands are nonzero with different degrees.
    fn add(self, rhs: &HomPoly) -> HomPoly {
        assert_eq!(self.nvars, rhs.nvars, "adding polynomials in different rings");
        let mut out = self.clone();
        out.degree = sum_degree(self, rhs);
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }
}

impl Sub for &HomPoly {
    type Output = HomPoly;

    fn sub(self, rhs: &HomPoly) -> HomPoly {
        self + &(-rhs)
    }
}

impl Neg for &HomPoly {
    type Output = HomPoly;

    fn neg(self) -> HomPoly {
        self.scale(&-Rat::one())
    }
}

impl Mul for &HomPoly {
    type Output = HomPoly;

    fn mul(self, rhs: &HomPoly) -> HomPoly {
        assert_eq!(self.nvars, rhs.nvars, "multiplying polynomials in different rings");
        let mut out = HomPoly::zero(self.nvars, self.degree + rhs.degree);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &rhs.terms {
                out.add_term(ea.plus(eb), ca * cb);
            }
        }
        out
    }
}

impl fmt::Display for HomPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        // highest exponents first reads more naturally
        for (k, (e, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            if k > 0 {
                write!(f, "{}", if neg { " - " } else { " + " })?;
            } else if neg {
                write!(f, "-")?;
            }
            let a = c.abs();
            let mono: Vec<String> = e
                .exponents()
                .iter()
                .enumerate()
                .filter(|(_, &p)| p > 0)
                .map(|(i, &p)| {
                    if p == 1 {
                        format!("x{}", i + 1)
                    } else {
                        format!("x{}^{p}", i + 1)
                    }
                })
                .collect();
            if mono.is_empty() {
                write!(f, "{a}")?;
            } else if a.is_one() {
                write!(f, "{}", mono.join("*"))?;
            } else {
                write!(f, "{a}*{}", mono.join("*"))?;
            }
        }
        Ok(())
    }
}
