use std::fmt::Debug;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Num, One};

/// Field of values that measures and expectations are evaluated in.
///
/// Exact code paths use [`crate::Rational`]; the float impls exist for quick numerics
/// and plotting and are never used for equality checks.
pub trait Scalar: Num + Clone + PartialOrd + Debug {
    fn from_i64(v: i64) -> Self;

    /// `base^e` for any sign of `e`.
    fn int_pow(base: u32, e: i64) -> Self {
        let b = Self::from_i64(base as i64);
        let p = num_traits::pow(b, e.unsigned_abs() as usize);
        if e < 0 {
            Self::one() / p
        } else {
            p
        }
    }

    fn to_f64(&self) -> f64;
}

impl Scalar for BigRational {
    fn from_i64(v: i64) -> Self {
        BigRational::from_integer(BigInt::from(v))
    }

    fn int_pow(base: u32, e: i64) -> Self {
        let p = num_traits::pow(BigInt::from(base), e.unsigned_abs() as usize);
        if e < 0 {
            BigRational::new(BigInt::one(), p)
        } else {
            BigRational::from_integer(p)
        }
    }

    fn to_f64(&self) -> f64 {
        num_traits::ToPrimitive::to_f64(self).unwrap_or(f64::NAN)
    }
}

impl Scalar for f64 {
    fn from_i64(v: i64) -> Self {
        v as f64
    }

    fn int_pow(base: u32, e: i64) -> Self {
        (base as f64).powi(e as i32)
    }

    fn to_f64(&self) -> f64 {
        *self
    }
}

impl Scalar for f32 {
    fn from_i64(v: i64) -> Self {
        v as f32
    }

    fn int_pow(base: u32, e: i64) -> Self {
        (base as f32).powi(e as i32)
    }

    fn to_f64(&self) -> f64 {
        *self as f64
    }
}

/// Sum of an iterator of scalars.
pub(crate) fn sum<S: Scalar>(it: impl Iterator<Item = S>) -> S {
    it.fold(S::zero(), |a, b| a + b)
}
