//! Exact rational helpers.
//!
//! All coefficients, coordinates and volumes in this crate are [`Rat`]
//! values. Text form is `"p/q"` or `"p"`, never a decimal.

use num::bigint::BigInt;
use num::integer::Integer;
use num::rational::BigRational;
use num::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Arbitrary-precision rational, always in lowest terms with a positive denominator.
pub type Rat = BigRational;

pub fn rat(numer: i64, denom: i64) -> Rat {
    Rat::new(BigInt::from(numer), BigInt::from(denom))
}

pub fn int(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

pub fn big(n: &BigInt) -> Rat {
    Rat::from_integer(n.clone())
}

/// Parses `"p/q"` or `"p"` (optional leading `-`).
pub fn parse_rat(s: &str) -> Result<Rat> {
    let bad = || Error::input(format!("invalid rational `{s}` (expected \"p/q\" or \"p\")"));
    let t = s.trim();
    if t.is_empty() || t.contains(|c: char| !(c.is_ascii_digit() || c == '-' || c == '/')) {
        return Err(bad());
    }
    let (n, d) = match t.split_once('/') {
        Some((n, d)) => (n, d),
        None => (t, "1"),
    };
    let n: BigInt = n.parse().map_err(|_| bad())?;
    let d: BigInt = d.parse().map_err(|_| bad())?;
    if d.is_zero() {
        return Err(Error::input(format!("invalid rational `{s}`: zero denominator")));
    }
    Ok(Rat::new(n, d))
}

pub fn fmt_rat(r: &Rat) -> String {
    r.to_string()
}

pub fn fmt_vec(v: &[Rat]) -> Vec<String> {
    v.iter().map(fmt_rat).collect()
}

pub fn factorial(n: u32) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * k)
}

pub fn binomial(n: u32, k: u32) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

/// Least common multiple of the denominators, 1 for an empty input.
pub fn common_denominator<'a>(values: impl IntoIterator<Item = &'a Rat>) -> BigInt {
    values
        .into_iter()
        .fold(BigInt::one(), |acc, r| acc.lcm(r.denom()))
}

/// Multiplies every value by `scale` and returns the numerators. Panics if a
/// product is not integral, which callers rule out via [`common_denominator`].
pub fn to_integers(values: &[Rat], scale: &BigInt) -> Vec<BigInt> {
    values
        .iter()
        .map(|r| {
            let s = r * big(scale);
            debug_assert!(s.is_integer());
            s.to_integer()
        })
        .collect()
}

pub fn is_nonnegative(v: &[Rat]) -> bool {
    v.iter().all(|r| !r.is_negative())
}

/// Lossy conversion, only for human-facing ratios in reports.
pub fn approx_f64(r: &Rat) -> f64 {
    r.numer().to_f64().unwrap_or(f64::NAN) / r.denom().to_f64().unwrap_or(f64::NAN)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_format() {
        assert_eq!(parse_rat("3/6").unwrap(), rat(1, 2));
        assert_eq!(parse_rat("-4").unwrap(), int(-4));
        assert_eq!(fmt_rat(&rat(-6, 4)), "-3/2");
        assert_eq!(fmt_rat(&int(7)), "7");
        assert!(parse_rat("1.5").is_err());
        assert!(parse_rat("1/0").is_err());
        assert!(parse_rat("").is_err());
        assert!(parse_rat("a/b").is_err());
    }

    #[test]
    fn combinatorics() {
        assert_eq!(factorial(0), BigInt::one());
        assert_eq!(factorial(5), BigInt::from(120));
        assert_eq!(binomial(6, 2), BigInt::from(15));
        assert_eq!(binomial(3, 5), BigInt::zero());
        assert_eq!(common_denominator(&[rat(1, 4), rat(5, 6)]), BigInt::from(12));
    }
}
