//! Coefficient field abstraction.
//!
//! Everything in the crate is generic over a [`Scalar`]: a field with an
//! integer embedding. Exact types (`BigRational`, `Rational64`) make every
//! identity decidable; `f64` is supported for numerical exploration of the
//! kernel operations, where zero tests use a small absolute tolerance.

use std::fmt::{Debug, Display};
use std::ops::Neg;

use num_bigint::BigInt;
use num_rational::{BigRational, Rational64};
use num_traits::{Num, Zero};

pub trait Scalar:
    Num + Neg<Output = Self> + Clone + PartialEq + Debug + Display + Send + Sync + 'static
{
    fn from_i64(value: i64) -> Self;

    /// Whether zero tests on this type are exact.
    const EXACT: bool;

    /// Zero test used by elimination and by identity checks. Exact types
    /// fall back to `is_zero`.
    fn is_negligible(&self) -> bool {
        self.is_zero()
    }
}

impl Scalar for BigRational {
    const EXACT: bool = true;

    fn from_i64(value: i64) -> Self {
        BigRational::from_integer(BigInt::from(value))
    }
}

impl Scalar for Rational64 {
    const EXACT: bool = true;

    fn from_i64(value: i64) -> Self {
        Rational64::from_integer(value)
    }
}

impl Scalar for f64 {
    const EXACT: bool = false;

    fn from_i64(value: i64) -> Self {
        value as f64
    }

    fn is_negligible(&self) -> bool {
        self.abs() < 1e-9
    }
}

impl Scalar for f32 {
    const EXACT: bool = false;

    fn from_i64(value: i64) -> Self {
        value as f32
    }

    fn is_negligible(&self) -> bool {
        self.abs() < 1e-4
    }
}

/// Sign factor `(-1)^k` as a scalar.
pub fn sign<S: Scalar>(k: usize) -> S {
    if k & 1 == 0 {
        S::one()
    } else {
        -S::one()
    }
}

/// Parses `"a"` or `"a/b"` into a reduced rational.
pub fn parse_rational(text: &str) -> Option<BigRational> {
    let text = text.trim();
    let (num, den) = match text.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (text, "1"),
    };
    let num: BigInt = num.parse().ok()?;
    let den: BigInt = den.parse().ok()?;
    if den.is_zero() {
        return None;
    }
    Some(BigRational::new(num, den))
}

/// Formats a rational as `"num/den"`, omitting the denominator when it is 1.
pub fn format_rational(value: &BigRational) -> String {
    if value.is_integer() {
        value.numer().to_string()
    } else {
        format!("{}/{}", value.numer(), value.denom())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rationals_are_reduced_on_parse() {
        let r = parse_rational("6/-4").unwrap();
        assert_eq!(format_rational(&r), "-3/2");
        assert_eq!(format_rational(&parse_rational("10/5").unwrap()), "2");
        assert!(parse_rational("1/0").is_none());
        assert!(parse_rational("x").is_none());
    }

    #[test]
    fn sign_alternates() {
        assert_eq!(sign::<f64>(0), 1.0);
        assert_eq!(sign::<f64>(3), -1.0);
        assert_eq!(sign::<Rational64>(2), Rational64::from_integer(1));
    }
}
