//! Exact rational scalars and the integer combinatorial coefficients used
//! everywhere else in the crate.
//!
//! All structure constants and recursion coefficients are rational, so every
//! computation is carried out over arbitrary-precision rationals; there is no
//! floating point anywhere.

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, Zero};

use crate::error::{Error, Result};

/// Arbitrary-precision rational, always stored in lowest terms with a
/// positive denominator. Serializes as `"p/q"`, or `"p"` when `q == 1`.
pub type Rational = BigRational;

/// Arbitrary-precision integer.
pub type Int = BigInt;

/// Shorthand for a rational from machine integers.
pub fn rat(numer: i64, denom: i64) -> Rational {
    Rational::new(Int::from(numer), Int::from(denom))
}

/// Shorthand for an integer rational.
pub fn rat_int(n: i64) -> Rational {
    Rational::from_integer(Int::from(n))
}

/// Checked division; the other three operations cannot fail on rationals.
pub fn rat_div(lhs: &Rational, rhs: &Rational) -> Result<Rational> {
    if rhs.is_zero() {
        return Err(Error::DivisionByZero);
    }
    Ok(lhs / rhs)
}

/// Parse a rational from `"p/q"` or `"p"`.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n, d),
        None => (s, "1"),
    };
    let n: Int = num
        .parse()
        .map_err(|_| Error::UnknownLabel(format!("bad rational '{s}'")))?;
    let d: Int = den
        .parse()
        .map_err(|_| Error::UnknownLabel(format!("bad rational '{s}'")))?;
    if d.is_zero() {
        return Err(Error::DivisionByZero);
    }
    Ok(Rational::new(n, d))
}

pub fn factorial(n: u32) -> Int {
    let mut acc = Int::one();
    for k in 2..=n {
        acc *= Int::from(k);
    }
    acc
}

/// Generalized binomial coefficient `n(n-1)...(n-k+1) / k!` for arbitrary
/// integer `n` (possibly negative) and nonnegative `k`. Always an integer.
pub fn binomial(n: &Int, k: u32) -> Int {
    let mut num = Int::one();
    for j in 0..k {
        num *= n - Int::from(j);
    }
    // The falling factorial of length k is divisible by k!.
    num / factorial(k)
}

pub fn binomial_i64(n: i64, k: u32) -> Int {
    binomial(&Int::from(n), k)
}

/// `multichoose(q, k)`: multisets of size `k` from `q` kinds.
pub fn multichoose(q: usize, k: u32) -> Int {
    if q == 0 {
        return if k == 0 { Int::one() } else { Int::zero() };
    }
    binomial_i64(q as i64 + k as i64 - 1, k)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn arithmetic_is_exact_and_canonical() {
        assert_eq!(rat(1, 2) + rat(1, 3), rat(5, 6));
        assert_eq!(rat(7, 3) * rat_int(0), rat_int(0));
        // canonical form: 2/4 reduces
        assert_eq!(rat(2, 4) + rat_int(0), rat(1, 2));
        assert_eq!(rat(2, 4).to_string(), "1/2");
        assert_eq!(rat(-3, 6).to_string(), "-1/2");
        assert_eq!(rat_int(5).to_string(), "5");
    }

    #[test]
    fn division_by_zero_is_an_error() {
        assert!(rat_div(&rat_int(1), &rat_int(0)).is_err());
        assert_eq!(rat_div(&rat(1, 2), &rat(1, 3)).unwrap(), rat(3, 2));
    }

    #[test]
    fn parse_round_trips() {
        for s in ["5/6", "-7", "0", "22/7", "-13/11"] {
            let r = parse_rational(s).unwrap();
            assert_eq!(r.to_string(), s);
        }
        assert_eq!(parse_rational("2/4").unwrap(), rat(1, 2));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
    }

    #[test]
    fn binomial_examples() {
        assert_eq!(binomial_i64(5, 2), Int::from(10));
        assert_eq!(binomial_i64(17, 0), Int::from(1));
        assert_eq!(binomial_i64(-3, 0), Int::from(1));
        // (-1)(-2)/2 = 1
        assert_eq!(binomial_i64(-1, 2), Int::from(1));
        assert_eq!(binomial_i64(-2, 3), Int::from(-4));
    }

    #[test]
    fn binomial_pascal_recurrence() {
        for n in -20i64..=20 {
            for k in 1u32..=10 {
                assert_eq!(
                    binomial_i64(n, k),
                    binomial_i64(n - 1, k - 1) + binomial_i64(n - 1, k),
                    "n={n} k={k}"
                );
            }
        }
    }

    #[test]
    fn factorials() {
        assert_eq!(factorial(0), Int::from(1));
        assert_eq!(factorial(5), Int::from(120));
    }
}
