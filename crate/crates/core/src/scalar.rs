//! Exact rational scalars.
//!
//! Everything in this crate is computed over ℚ. `BigRational` keeps every
//! value gcd-reduced with a positive denominator after each operation.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

pub type Scalar = BigRational;

pub fn int(n: i64) -> Scalar {
    Scalar::from_integer(BigInt::from(n))
}

/// `num / den`, reduced. Panics on a zero denominator.
pub fn frac(num: i64, den: i64) -> Scalar {
    Scalar::new(BigInt::from(num), BigInt::from(den))
}

pub fn zero() -> Scalar {
    Scalar::zero()
}

pub fn one() -> Scalar {
    Scalar::one()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScalarParseError {
    pub input: String,
    pub reason: &'static str,
}

impl fmt::Display for ScalarParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "malformed rational {:?}: {}", self.input, self.reason)
    }
}

impl std::error::Error for ScalarParseError {}

fn parse_int(s: &str) -> Option<BigInt> {
    let digits = s.strip_prefix('-').unwrap_or(s);
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    s.parse().ok()
}

/// Parses `"p"` or `"p/q"` with integer `p` and positive integer `q`.
/// Decimals, exponents, whitespace and a leading `+` are rejected.
pub fn parse_scalar(input: &str) -> Result<Scalar, ScalarParseError> {
    let err = |reason| ScalarParseError {
        input: input.to_string(),
        reason,
    };
    if input.contains('.') || input.contains('e') || input.contains('E') {
        return Err(err("decimals are not allowed, write p/q"));
    }
    match input.split_once('/') {
        None => parse_int(input).map(Scalar::from_integer).ok_or_else(|| err("not an integer")),
        Some((num, den)) => {
            let num = parse_int(num).ok_or_else(|| err("numerator is not an integer"))?;
            if den.starts_with('-') {
                return Err(err("denominator must be positive"));
            }
            let den = parse_int(den).ok_or_else(|| err("denominator is not an integer"))?;
            if den.is_zero() {
                return Err(err("zero denominator"));
            }
            Ok(Scalar::new(num, den))
        }
    }
}

/// Canonical text form: `"p"` for integers, `"p/q"` otherwise.
pub fn format_scalar(x: &Scalar) -> String {
    if x.is_integer() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

/// `x^k` for a non-negative exponent; `x^0 = 1` including `0^0`.
pub fn pow(x: &Scalar, k: usize) -> Scalar {
    let mut acc = one();
    for _ in 0..k {
        acc *= x;
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_integers_and_fractions() {
        assert_eq!(parse_scalar("3").unwrap(), int(3));
        assert_eq!(parse_scalar("-7").unwrap(), int(-7));
        assert_eq!(parse_scalar("2/4").unwrap(), frac(1, 2));
        assert_eq!(parse_scalar("-3/6").unwrap(), frac(-1, 2));
        assert_eq!(parse_scalar("0/5").unwrap(), zero());
    }

    #[test]
    fn rejects_decimals_and_junk() {
        for bad in ["0.5", "1e3", "", "-", "1/", "/2", "1/0", "1/-2", "+1", " 1", "a", "1//2"] {
            assert!(parse_scalar(bad).is_err(), "{bad:?} should be rejected");
        }
    }

    #[test]
    fn canonical_format() {
        assert_eq!(format_scalar(&frac(6, -4)), "-3/2");
        assert_eq!(format_scalar(&int(0)), "0");
        assert_eq!(format_scalar(&frac(10, 5)), "2");
    }

    #[test]
    fn zero_to_the_zero_is_one() {
        assert_eq!(pow(&zero(), 0), one());
        assert_eq!(pow(&frac(1, 2), 3), frac(1, 8));
    }
}
