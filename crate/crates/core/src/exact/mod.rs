//! Exact coefficient arithmetic.
//!
//! Everything downstream computes over `Q[c, h]`: rationals for specialised
//! values, [`ScalarPoly`] for symbolic entries, and dense matrices of either.
//! Determinants are fraction-free (Bareiss) and definiteness is decided from
//! minors and characteristic-polynomial signs, so no floating point appears
//! anywhere.

mod matrix;
mod poly;

pub use matrix::{Definiteness, PolyMatrix, QMatrix};
pub use poly::{Monomial, ScalarPoly};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

/// Arbitrary precision rational, always kept in lowest terms with a positive
/// denominator.
pub type Rational = num_rational::BigRational;

/// `num / den` as an exact rational. Panics if `den == 0`.
pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Parses `"p/q"`, `"p"` or `"-p/q"`.
pub fn parse_rational(s: &str) -> crate::Result<Rational> {
    let s = s.trim();
    let err = || crate::Error::Parse(format!("invalid rational literal {s:?}"));
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let num: BigInt = num.parse().map_err(|_| err())?;
    let den: BigInt = den.parse().map_err(|_| err())?;
    if den.is_zero() {
        return Err(err());
    }
    Ok(Rational::new(num, den))
}

/// Canonical string form: `"p/q"`, or `"p"` for integers.
pub fn fmt_rational(q: &Rational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// Generalised binomial coefficient `m choose j` for any integer `m`.
pub fn binomial(m: i64, j: u32) -> Rational {
    let mut acc = Rational::one();
    for i in 0..j as i64 {
        acc *= int(m - i);
        acc /= int(i + 1);
    }
    acc
}

pub(crate) fn factorial(k: u32) -> BigInt {
    (1..=k as u64).fold(BigInt::one(), |acc, i| acc * BigInt::from(i))
}

pub(crate) fn sign_of(q: &Rational) -> i8 {
    if q.is_zero() {
        0
    } else if q.is_positive() {
        1
    } else {
        -1
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_literals() {
        assert_eq!(parse_rational("3/6").unwrap(), rat(1, 2));
        assert_eq!(parse_rational("-4").unwrap(), int(-4));
        assert_eq!(parse_rational(" 2/-4 ").unwrap(), rat(-1, 2));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
        assert_eq!(fmt_rational(&rat(6, 3)), "2");
        assert_eq!(fmt_rational(&rat(-1, 16)), "-1/16");
    }

    #[test]
    fn zero_normalises_to_zero_over_one() {
        let z = rat(0, 7);
        assert_eq!(z.numer(), &BigInt::zero());
        assert_eq!(z.denom(), &BigInt::one());
    }

    #[test]
    fn generalised_binomials() {
        assert_eq!(binomial(5, 2), int(10));
        assert_eq!(binomial(-1, 3), int(-1));
        assert_eq!(binomial(-2, 2), int(3));
        assert_eq!(binomial(2, 3), int(0));
        assert_eq!(binomial(7, 0), int(1));
    }
}
