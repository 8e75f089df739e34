//! Scalar abstractions.
//!
//! Geometry is written against [`Real`] (implemented for `f32` and `f64`);
//! the combinatorial constants are written against [`Field`], which is also
//! implemented for the exact [`Rational`] type.

use std::fmt::{Debug, Display};
use std::iter::Sum;
use std::ops::Neg;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Float, FloatConst, FromPrimitive, Num, ToPrimitive};
use rand::Rng;
use rand_distr::{Distribution, StandardNormal};

/// Exact arbitrary-precision rational.
pub type Rational = BigRational;

/// Floating point scalar used by all geometric code. Every `Real` is also a
/// [`Field`], so the combinatorial constants can be evaluated directly in it.
pub trait Real:
    Field + Float + FloatConst + FromPrimitive + ToPrimitive + Sum + Debug + Display + Default + Send + Sync + 'static
{
    /// Multiplier applied to the f64-calibrated tolerances.
    const TOLERANCE_SCALE: f64;

    fn standard_normal<R: Rng + ?Sized>(rng: &mut R) -> Self;

    fn lit(v: f64) -> Self {
        Self::from_f64(v).expect("f64 literal representable")
    }

    fn from_usize_lossy(v: usize) -> Self {
        Self::from_usize(v).expect("usize representable")
    }

    /// Tolerance `base` (stated for f64) rescaled for this precision.
    fn tol(base: f64) -> Self {
        Self::lit(base * Self::TOLERANCE_SCALE)
    }

    fn as_f64(self) -> f64 {
        self.to_f64().expect("finite float converts to f64")
    }
}

impl Real for f64 {
    const TOLERANCE_SCALE: f64 = 1.0;

    fn standard_normal<R: Rng + ?Sized>(rng: &mut R) -> Self {
        StandardNormal.sample(rng)
    }
}

impl Real for f32 {
    const TOLERANCE_SCALE: f64 = 1.0e4;

    fn standard_normal<R: Rng + ?Sized>(rng: &mut R) -> Self {
        StandardNormal.sample(rng)
    }
}

/// Coefficient field for the combinatorial constants.
///
/// `Rational` gives exact values; the float impls are used where the
/// constants feed a floating point kernel.
pub trait Field: Clone + Num + Neg<Output = Self> + PartialOrd + Debug {
    fn from_int(v: i64) -> Self;

    fn from_bigint(v: BigInt) -> Self;
}

impl Field for Rational {
    fn from_int(v: i64) -> Self {
        Rational::from_integer(BigInt::from(v))
    }

    fn from_bigint(v: BigInt) -> Self {
        Rational::from_integer(v)
    }
}

impl Field for f64 {
    fn from_int(v: i64) -> Self {
        v as f64
    }

    fn from_bigint(v: BigInt) -> Self {
        v.to_f64().unwrap_or(f64::NAN)
    }
}

impl Field for f32 {
    fn from_int(v: i64) -> Self {
        v as f32
    }

    fn from_bigint(v: BigInt) -> Self {
        v.to_f32().unwrap_or(f32::NAN)
    }
}

/// Shorthand for an exact integer-valued rational.
pub fn rat(n: i64) -> Rational {
    Rational::from_int(n)
}

/// Shorthand for the exact fraction `n / d`.
pub fn frac(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}
