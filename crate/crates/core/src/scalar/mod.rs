//! Exact coefficient fields.
//!
//! Everything above this module is written against the [`Scalar`] trait, so the
//! same elimination and rewriting code runs over `Q` (fast, used whenever the
//! parameter is specialized) and over `Q(d)` (used for generic-parameter
//! computations).

mod poly;
mod ratfunc;

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

pub use poly::Poly;
pub use ratfunc::{
    degree_bound, field_arith, parse_rational_function, set_degree_bound, FieldOp,
    RationalFunction, DEFAULT_DEGREE_BOUND,
};

/// Arbitrary-precision rational number.
pub type Rational = num_rational::BigRational;

/// An exact field usable as a coefficient domain.
pub trait Scalar:
    Clone
    + PartialEq
    + fmt::Debug
    + fmt::Display
    + Zero
    + One
    + Neg<Output = Self>
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Send
    + Sync
    + 'static
{
    /// Embeds a rational constant.
    fn from_rational(q: &Rational) -> Self;

    /// Rough size of the element; pivots with small weight are preferred.
    fn weight(&self) -> usize;

    /// Whether the printed form should carry a leading minus sign.
    fn is_negative_form(&self) -> bool;

    fn add_ref(&self, other: &Self) -> Self;
    fn sub_ref(&self, other: &Self) -> Self;
    fn mul_ref(&self, other: &Self) -> Self;
    /// Panics on division by zero.
    fn div_ref(&self, other: &Self) -> Self;

    fn neg_ref(&self) -> Self {
        -self.clone()
    }

    fn inv(&self) -> Self {
        Self::one().div_ref(self)
    }

    fn from_i64(n: i64) -> Self {
        Self::from_rational(&Rational::from_integer(BigInt::from(n)))
    }
}

impl Scalar for Rational {
    fn from_rational(q: &Rational) -> Self {
        q.clone()
    }

    fn weight(&self) -> usize {
        (self.numer().bits() + self.denom().bits()) as usize
    }

    fn is_negative_form(&self) -> bool {
        self.is_negative()
    }

    fn add_ref(&self, other: &Self) -> Self {
        self + other
    }

    fn sub_ref(&self, other: &Self) -> Self {
        self - other
    }

    fn mul_ref(&self, other: &Self) -> Self {
        self * other
    }

    fn div_ref(&self, other: &Self) -> Self {
        self / other
    }

    fn neg_ref(&self) -> Self {
        -self
    }
}

/// Parses `a`, `-a` or `a/b` with integer `a`, `b`.
pub fn parse_rational(text: &str) -> Option<Rational> {
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
    Some(Rational::new(num, den))
}

#[cfg(test)]
pub(crate) fn rational(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_plain_rationals() {
        assert_eq!(parse_rational("-3/6"), Some(rational(-1, 2)));
        assert_eq!(parse_rational("7"), Some(rational(7, 1)));
        assert_eq!(parse_rational("1/0"), None);
        assert_eq!(parse_rational("x"), None);
    }
}
