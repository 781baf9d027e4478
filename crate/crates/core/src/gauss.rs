//! Exact complex rationals: numbers `a + b*i` with arbitrary-precision
//! rational parts, plus a few square-root bounding helpers used when exact
//! magnitudes have to be traded for certified rational bounds.

use crate::scalar::{Field, Scalar};
use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

/// Complex number with exact rational real and imaginary parts.
///
/// Canonical form is inherited from [`BigRational`], so equality is exact
/// and hashes agree with it.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct GaussRational {
    pub re: BigRational,
    pub im: BigRational,
}

impl GaussRational {
    pub fn new(re: BigRational, im: BigRational) -> Self {
        GaussRational { re, im }
    }

    pub fn from_rational(re: BigRational) -> Self {
        GaussRational { re, im: BigRational::zero() }
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_rational(BigRational::from_integer(n.into()))
    }

    pub fn from_int_pair(re: i64, im: i64) -> Self {
        GaussRational {
            re: BigRational::from_integer(re.into()),
            im: BigRational::from_integer(im.into()),
        }
    }

    /// The imaginary unit.
    pub fn i() -> Self {
        GaussRational { re: BigRational::zero(), im: BigRational::one() }
    }

    pub fn conj(&self) -> Self {
        GaussRational { re: self.re.clone(), im: -self.im.clone() }
    }

    /// `|self|^2`, an exact nonnegative rational.
    pub fn norm_sqr(&self) -> BigRational {
        &self.re * &self.re + &self.im * &self.im
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    /// Multiplicative inverse. Panics on zero.
    pub fn recip(&self) -> Self {
        let n = self.norm_sqr();
        assert!(!n.is_zero(), "division by zero");
        GaussRational { re: &self.re / &n, im: -(&self.im / &n) }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = GaussRational::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    pub fn to_complex_f64(&self) -> num_complex::Complex<f64> {
        num_complex::Complex::new(
            self.re.to_f64().unwrap_or(f64::NAN),
            self.im.to_f64().unwrap_or(f64::NAN),
        )
    }

    /// Total order: lexicographic by real part, then imaginary part.
    pub fn cmp_lex(&self, other: &Self) -> Ordering {
        self.re.cmp(&other.re).then_with(|| self.im.cmp(&other.im))
    }
}

impl Add for GaussRational {
    type Output = GaussRational;
    fn add(self, rhs: Self) -> Self {
        GaussRational { re: self.re + rhs.re, im: self.im + rhs.im }
    }
}

impl<'a> Add<&'a GaussRational> for &'a GaussRational {
    type Output = GaussRational;
    fn add(self, rhs: &GaussRational) -> GaussRational {
        GaussRational { re: &self.re + &rhs.re, im: &self.im + &rhs.im }
    }
}

impl Sub for GaussRational {
    type Output = GaussRational;
    fn sub(self, rhs: Self) -> Self {
        GaussRational { re: self.re - rhs.re, im: self.im - rhs.im }
    }
}

impl<'a> Sub<&'a GaussRational> for &'a GaussRational {
    type Output = GaussRational;
    fn sub(self, rhs: &GaussRational) -> GaussRational {
        GaussRational { re: &self.re - &rhs.re, im: &self.im - &rhs.im }
    }
}

impl Mul for GaussRational {
    type Output = GaussRational;
    fn mul(self, rhs: Self) -> Self {
        (&self).mul(&rhs)
    }
}

impl<'a> Mul<&'a GaussRational> for &'a GaussRational {
    type Output = GaussRational;
    fn mul(self, rhs: &GaussRational) -> GaussRational {
        GaussRational {
            re: &self.re * &rhs.re - &self.im * &rhs.im,
            im: &self.re * &rhs.im + &self.im * &rhs.re,
        }
    }
}

impl Neg for GaussRational {
    type Output = GaussRational;
    fn neg(self) -> Self {
        GaussRational { re: -self.re, im: -self.im }
    }
}

impl Div for GaussRational {
    type Output = GaussRational;
    fn div(self, rhs: Self) -> Self {
        (&self).mul(&rhs.recip())
    }
}

impl Zero for GaussRational {
    fn zero() -> Self {
        GaussRational { re: BigRational::zero(), im: BigRational::zero() }
    }
    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }
}

impl One for GaussRational {
    fn one() -> Self {
        GaussRational { re: BigRational::one(), im: BigRational::zero() }
    }
}

impl Scalar for GaussRational {
    fn from_integer(n: i64) -> Self {
        Self::from_int(n)
    }
}
impl Field for GaussRational {}

impl fmt::Display for GaussRational {
    /// Renders `0`, `3`, `-1/2`, `i`, `-2/3i`, `1/2+1/3i`, `1-i`, ...
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fn imag_part(im: &BigRational) -> String {
            if im.abs().is_one() {
                "i".to_string()
            } else {
                format!("{}i", im.abs())
            }
        }
        if self.is_zero() {
            write!(f, "0")
        } else if self.im.is_zero() {
            write!(f, "{}", self.re)
        } else if self.re.is_zero() {
            let sign = if self.im.is_negative() { "-" } else { "" };
            write!(f, "{}{}", sign, imag_part(&self.im))
        } else {
            let sign = if self.im.is_negative() { "-" } else { "+" };
            write!(f, "{}{}{}", self.re, sign, imag_part(&self.im))
        }
    }
}

impl fmt::Debug for GaussRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

/// Smallest integer `s` with `s^2 >= n`.
pub fn isqrt_ceil(n: &BigUint) -> BigUint {
    let s = n.sqrt();
    if &(&s * &s) == n {
        s
    } else {
        s + BigUint::one()
    }
}

/// Rational upper bound for `sqrt(x)`; requires `x >= 0`.
pub fn sqrt_upper(x: &BigRational) -> BigRational {
    assert!(!x.is_negative(), "sqrt of negative rational");
    let num = x.numer().magnitude();
    let den = x.denom().magnitude();
    // sqrt(a/b) = sqrt(a*b)/b <= ceil(sqrt(a*b))/b
    let s = isqrt_ceil(&(num * den));
    BigRational::new(BigInt::from(s), x.denom().clone())
}

/// Rational lower bound for `sqrt(x)`; requires `x >= 0`.
pub fn sqrt_lower(x: &BigRational) -> BigRational {
    assert!(!x.is_negative(), "sqrt of negative rational");
    let num = x.numer().magnitude();
    let den = x.denom().magnitude();
    let s = (num * den).sqrt();
    BigRational::new(BigInt::from(s), x.denom().clone())
}

/// Rounds `x` to the nearest multiple of `2^-bits` (ties away from zero).
pub fn round_dyadic(x: &BigRational, bits: u32) -> BigRational {
    let scale = BigInt::one() << bits;
    let scaled = x * BigRational::from_integer(scale.clone());
    // round to nearest integer, ties away from zero
    let (q, r) = scaled.numer().div_rem(scaled.denom());
    let twice_r: BigInt = r.abs() * BigInt::from(2);
    let rounded = if twice_r >= scaled.denom().abs() {
        if scaled.is_negative() {
            q - BigInt::one()
        } else {
            q + BigInt::one()
        }
    } else {
        q
    };
    BigRational::new(rounded, scale)
}

/// Parses a rational literal of the form `p`, `-p`, or `p/q` with `q > 0`.
pub fn parse_rational(text: &str) -> Option<BigRational> {
    let text = text.trim();
    let (sign, rest) = match text.strip_prefix('-') {
        Some(r) => (-1, r),
        None => (1, text.strip_prefix('+').unwrap_or(text)),
    };
    let mut parts = rest.splitn(2, '/');
    let numer: BigInt = parts.next()?.trim().parse().ok()?;
    let denom: BigInt = match parts.next() {
        Some(d) => d.trim().parse().ok()?,
        None => BigInt::one(),
    };
    if denom <= BigInt::zero() || numer < BigInt::zero() {
        return None;
    }
    Some(BigRational::new(numer * sign, denom))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rat(p: i64, q: i64) -> BigRational {
        BigRational::new(p.into(), q.into())
    }

    #[test]
    fn field_ops_round_trip() {
        let a = GaussRational::new(rat(1, 2), rat(-3, 4));
        let b = GaussRational::new(rat(2, 5), rat(7, 3));
        let prod = &a * &b;
        let back = prod / b.clone();
        assert_eq!(back, a);
        assert_eq!(&a * &a.recip(), GaussRational::one());
    }

    #[test]
    fn norm_and_conj() {
        let a = GaussRational::from_int_pair(3, 4);
        assert_eq!(a.norm_sqr(), rat(25, 1));
        assert_eq!(&a * &a.conj(), GaussRational::from_int(25));
    }

    #[test]
    fn display_forms() {
        assert_eq!(GaussRational::zero().to_string(), "0");
        assert_eq!(GaussRational::from_int(-3).to_string(), "-3");
        assert_eq!(GaussRational::new(rat(1, 2), rat(1, 3)).to_string(), "1/2+1/3i");
        assert_eq!(GaussRational::new(rat(0, 1), rat(-1, 1)).to_string(), "-i");
        assert_eq!(GaussRational::from_int_pair(1, -1).to_string(), "1-i");
        assert_eq!(GaussRational::new(rat(0, 1), rat(2, 1)).to_string(), "2i");
    }

    #[test]
    fn sqrt_bounds_bracket() {
        for (p, q) in [(2, 1), (25, 1), (7, 3), (1, 10), (123456, 789)] {
            let x = rat(p, q);
            let lo = sqrt_lower(&x);
            let hi = sqrt_upper(&x);
            assert!(&lo * &lo <= x, "lower bound too big for {x}");
            assert!(&hi * &hi >= x, "upper bound too small for {x}");
        }
        assert_eq!(sqrt_lower(&rat(25, 1)), rat(5, 1));
        assert_eq!(sqrt_upper(&rat(25, 1)), rat(5, 1));
    }

    #[test]
    fn dyadic_rounding() {
        let x = rat(1, 3);
        let r = round_dyadic(&x, 8);
        assert_eq!(r, rat(85, 256));
        let neg = round_dyadic(&rat(-1, 3), 8);
        assert_eq!(neg, rat(-85, 256));
        assert_eq!(round_dyadic(&rat(5, 1), 16), rat(5, 1));
    }

    #[test]
    fn parse_rational_literals() {
        assert_eq!(parse_rational("3"), Some(rat(3, 1)));
        assert_eq!(parse_rational("-3/4"), Some(rat(-3, 4)));
        assert_eq!(parse_rational("6/4"), Some(rat(3, 2)));
        assert_eq!(parse_rational("1/0"), None);
        assert_eq!(parse_rational("x"), None);
        assert_eq!(parse_rational("1/-2"), None);
    }

    #[test]
    fn lexicographic_order() {
        let a = GaussRational::from_int_pair(1, 5);
        let b = GaussRational::from_int_pair(2, -5);
        assert_eq!(a.cmp_lex(&b), Ordering::Less);
        let c = GaussRational::from_int_pair(1, 6);
        assert_eq!(a.cmp_lex(&c), Ordering::Less);
    }
}
