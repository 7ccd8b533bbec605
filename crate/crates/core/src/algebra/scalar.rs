use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

/// Exact rational number, always kept reduced with a positive denominator.
pub type Scalar = BigRational;

pub fn int(value: i64) -> Scalar {
    Scalar::from_integer(BigInt::from(value))
}

/// Coefficient ring of a [`ChernSeries`](super::ChernSeries).
pub trait Coefficient:
    Clone
    + PartialEq
    + fmt::Debug
    + fmt::Display
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
{
    fn from_scalar(value: Scalar) -> Self;

    fn scale(&self, factor: &Scalar) -> Self;
}

impl Coefficient for Scalar {
    fn from_scalar(value: Scalar) -> Self {
        value
    }

    fn scale(&self, factor: &Scalar) -> Self {
        self * factor
    }
}
