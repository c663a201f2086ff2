//! Scalar abstractions shared by the numeric kernels.
//!
//! The evaluation kernels are written once over [`Scalar`] so the benchmark
//! harness can instantiate them at `f64` (the default) and `f32`. The
//! reference divided-difference oracle only needs a field with an order, so it
//! takes the weaker [`Field`] bound and also works on exact rationals.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use std::fmt::Debug;
use std::ops::{Add, Div, Mul, Sub};

/// An ordered field with an exact embedding of small integers.
pub trait Field:
    Clone
    + Debug
    + PartialEq
    + PartialOrd
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
{
    fn from_index(i: usize) -> Self;
}

/// A copyable field with lossy conversions from/to `f64`, i.e. a machine float.
pub trait Scalar: Field + Copy {
    fn from_f64(x: f64) -> Self;
    fn to_f64(self) -> f64;
    fn is_finite(self) -> bool;
}

impl Field for f64 {
    #[inline]
    fn from_index(i: usize) -> Self {
        i as f64
    }
}

impl Scalar for f64 {
    #[inline]
    fn from_f64(x: f64) -> Self {
        x
    }
    #[inline]
    fn to_f64(self) -> f64 {
        self
    }
    #[inline]
    fn is_finite(self) -> bool {
        f64::is_finite(self)
    }
}

impl Field for f32 {
    #[inline]
    fn from_index(i: usize) -> Self {
        i as f32
    }
}

impl Scalar for f32 {
    #[inline]
    fn from_f64(x: f64) -> Self {
        x as f32
    }
    #[inline]
    fn to_f64(self) -> f64 {
        self as f64
    }
    #[inline]
    fn is_finite(self) -> bool {
        f32::is_finite(self)
    }
}

impl Field for BigRational {
    fn from_index(i: usize) -> Self {
        BigRational::from_integer(BigInt::from(i))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn integer_embedding_is_exact() {
        assert_eq!(f64::from_index(50), 50.0);
        assert_eq!(
            BigRational::from_index(7) / BigRational::from_index(2),
            BigRational::new(BigInt::from(7), BigInt::from(2))
        );
    }
}
