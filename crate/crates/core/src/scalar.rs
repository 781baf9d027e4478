//! Scalar abstractions shared by the polynomial and series arithmetic.
//!
//! Everything that manipulates polynomials or truncated series is generic
//! over a [`Scalar`] (commutative ring) or [`Field`]. The exact
//! Gaussian-rational scalar used by the main pipeline lives in
//! [`crate::gauss`]; the floating-point instantiations back the numeric
//! root-localization stage.

use num_traits::{One, Zero};
use std::ops::{Add, Div, Mul, Neg, Sub};

/// Commutative ring scalar with an exact embedding of machine integers.
pub trait Scalar:
    Clone
    + PartialEq
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
{
    fn from_integer(n: i64) -> Self;
}

/// Scalar with division (exact for the rational types, floating otherwise).
pub trait Field: Scalar + Div<Output = Self> {}

macro_rules! impl_float_scalar {
    ($($t:ty),*) => {$(
        impl Scalar for $t {
            fn from_integer(n: i64) -> Self { n as $t }
        }
        impl Field for $t {}
    )*};
}
impl_float_scalar!(f32, f64);

impl Scalar for num_complex::Complex<f64> {
    fn from_integer(n: i64) -> Self {
        num_complex::Complex::new(n as f64, 0.0)
    }
}
impl Field for num_complex::Complex<f64> {}

impl Scalar for num_rational::BigRational {
    fn from_integer(n: i64) -> Self {
        num_rational::BigRational::from_integer(n.into())
    }
}
impl Field for num_rational::BigRational {}
