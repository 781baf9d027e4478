//! First-order dual numbers `a + b*eps` with `eps^2 = 0`.
//!
//! Evaluating an expression on duals yields the value together with an exact
//! directional derivative, which is how the series oracle extracts the
//! linear dependence on a single undetermined coefficient without symbolic
//! algebra.

use crate::scalar::{Field, Scalar};
use num_traits::{One, Zero};
use std::ops::{Add, Div, Mul, Neg, Sub};

#[derive(Clone, PartialEq, Debug)]
pub struct Dual<T> {
    pub re: T,
    pub eps: T,
}

impl<T: Scalar> Dual<T> {
    pub fn constant(re: T) -> Self {
        Dual { re, eps: T::zero() }
    }

    /// The probe value `re + eps`: its coefficient of `eps` tracks
    /// sensitivity to the slot.
    pub fn slot(re: T) -> Self {
        Dual { re, eps: T::one() }
    }
}

impl<T: Scalar> Add for Dual<T> {
    type Output = Dual<T>;
    fn add(self, rhs: Self) -> Self {
        Dual { re: self.re + rhs.re, eps: self.eps + rhs.eps }
    }
}

impl<T: Scalar> Sub for Dual<T> {
    type Output = Dual<T>;
    fn sub(self, rhs: Self) -> Self {
        Dual { re: self.re - rhs.re, eps: self.eps - rhs.eps }
    }
}

impl<T: Scalar> Mul for Dual<T> {
    type Output = Dual<T>;
    fn mul(self, rhs: Self) -> Self {
        Dual {
            re: self.re.clone() * rhs.re.clone(),
            eps: self.re * rhs.eps + self.eps * rhs.re,
        }
    }
}

impl<T: Scalar> Neg for Dual<T> {
    type Output = Dual<T>;
    fn neg(self) -> Self {
        Dual { re: -self.re, eps: -self.eps }
    }
}

impl<T: Field> Div for Dual<T> {
    type Output = Dual<T>;
    fn div(self, rhs: Self) -> Self {
        let quot = self.re / rhs.re.clone();
        Dual {
            re: quot.clone(),
            eps: (self.eps - quot * rhs.eps) / rhs.re,
        }
    }
}

impl<T: Scalar> Zero for Dual<T> {
    fn zero() -> Self {
        Dual { re: T::zero(), eps: T::zero() }
    }
    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.eps.is_zero()
    }
}

impl<T: Scalar> One for Dual<T> {
    fn one() -> Self {
        Dual { re: T::one(), eps: T::zero() }
    }
}

impl<T: Scalar> Scalar for Dual<T> {
    fn from_integer(n: i64) -> Self {
        Dual::constant(T::from_integer(n))
    }
}
impl<T: Field> Field for Dual<T> {}
