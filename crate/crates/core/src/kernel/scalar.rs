//! Arithmetic modes for kernel computation: exact rationals for every
//! theorem-verification path, 64-bit floats for the optimizer and large
//! fuzz sweeps.

use std::fmt;
use std::ops::{Add, Mul, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Number type a step kernel can be evaluated over.
pub trait Scalar:
    Clone
    + PartialOrd
    + fmt::Debug
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Sized
{
    /// True when arithmetic is exact and comparisons carry no slack.
    const EXACT: bool;

    fn zero() -> Self;
    fn one() -> Self;
    fn ratio(num: u64, den: u64) -> Self;
    /// `2^{-k}`.
    fn inv_pow2(k: u32) -> Self;
    /// Additive tolerance for inequality checks: zero in exact mode,
    /// 1e-12 in float mode.
    fn slack() -> Self;
    fn abs(&self) -> Self;
    fn div(&self, other: &Self) -> Self;
    fn to_f64(&self) -> f64;
    /// Lossless text form: `"p/q"` in lowest terms, or a float with 17
    /// significant digits.
    fn render(&self) -> String;
}

impl Scalar for BigRational {
    const EXACT: bool = true;

    fn zero() -> Self {
        Zero::zero()
    }

    fn one() -> Self {
        One::one()
    }

    fn ratio(num: u64, den: u64) -> Self {
        BigRational::new(BigInt::from(num), BigInt::from(den))
    }

    fn inv_pow2(k: u32) -> Self {
        BigRational::new(BigInt::one(), BigInt::one() << k)
    }

    fn slack() -> Self {
        Zero::zero()
    }

    fn abs(&self) -> Self {
        Signed::abs(self)
    }

    fn div(&self, other: &Self) -> Self {
        self / other
    }

    fn to_f64(&self) -> f64 {
        ToPrimitive::to_f64(self).unwrap_or(f64::NAN)
    }

    fn render(&self) -> String {
        self.to_string()
    }
}

impl Scalar for f64 {
    const EXACT: bool = false;

    fn zero() -> Self {
        0.0
    }

    fn one() -> Self {
        1.0
    }

    fn ratio(num: u64, den: u64) -> Self {
        num as f64 / den as f64
    }

    fn inv_pow2(k: u32) -> Self {
        2f64.powi(-(k as i32))
    }

    fn slack() -> Self {
        1e-12
    }

    fn abs(&self) -> Self {
        f64::abs(*self)
    }

    fn div(&self, other: &Self) -> Self {
        self / other
    }

    fn to_f64(&self) -> f64 {
        *self
    }

    fn render(&self) -> String {
        format!("{:.16e}", self)
    }
}
