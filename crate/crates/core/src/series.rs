//! Truncated Laurent series with validity bookkeeping.
//!
//! A [`Series`] stores finitely many coefficients starting at some (possibly
//! negative) base exponent, together with an optional `valid_to` bound: every
//! coefficient with exponent below `valid_to` is known exactly (zero if not
//! stored), while coefficients at or beyond it are unknown. Series built from
//! finitely many explicit terms have `valid_to = None` and are exact
//! everywhere. Arithmetic propagates the bound pessimistically, so reading a
//! coefficient never silently returns a value contaminated by truncation.

use crate::poly::Poly;
use crate::scalar::Scalar;
use std::fmt;

#[derive(Clone, PartialEq, Debug)]
pub struct Series<T> {
    base: i64,
    coeffs: Vec<T>,
    /// Exclusive upper bound of known exponents; `None` means exact.
    valid_to: Option<i64>,
}

/// Reading past the validity bound of a truncated series.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct WindowTooNarrow {
    pub wanted: i64,
    pub valid_to: i64,
}

impl fmt::Display for WindowTooNarrow {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "series coefficient at exponent {} requested, but validity ends at {}",
            self.wanted, self.valid_to
        )
    }
}

impl<T: Scalar> Series<T> {
    pub fn zero() -> Self {
        Series { base: 0, coeffs: Vec::new(), valid_to: None }
    }

    pub fn monomial(c: T, exponent: i64) -> Self {
        Series { base: exponent, coeffs: vec![c], valid_to: None }.normalized()
    }

    /// Polynomial in the series variable, exact.
    pub fn from_poly(p: &Poly<T>) -> Self {
        Series { base: 0, coeffs: p.coeffs().to_vec(), valid_to: None }.normalized()
    }

    /// Builds from explicit coefficients for exponents `base..`, known
    /// exactly below `valid_to` only.
    pub fn from_window(base: i64, coeffs: Vec<T>, valid_to: i64) -> Self {
        let s = Series { base, coeffs, valid_to: Some(valid_to) };
        s.normalized()
    }

    fn normalized(mut self) -> Self {
        while self.coeffs.first().is_some_and(|c| c.is_zero()) {
            self.coeffs.remove(0);
            self.base += 1;
        }
        while self.coeffs.last().is_some_and(|c| c.is_zero()) {
            self.coeffs.pop();
        }
        if let Some(v) = self.valid_to {
            // stored coefficients at or past the bound are meaningless
            let len = (v - self.base).max(0) as usize;
            self.coeffs.truncate(len.min(self.coeffs.len()));
            while self.coeffs.last().is_some_and(|c| c.is_zero()) {
                self.coeffs.pop();
            }
        }
        self
    }

    pub fn valid_to(&self) -> Option<i64> {
        self.valid_to
    }

    /// Exponent of the lowest stored nonzero coefficient; for an
    /// all-zero-so-far truncated series this is the validity bound (an
    /// unknown tail could start there), and `None` for the exact zero.
    pub fn min_exponent(&self) -> Option<i64> {
        if self.coeffs.is_empty() {
            self.valid_to
        } else {
            Some(self.base)
        }
    }

    pub fn is_zero_where_known(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// First known nonzero coefficient, lowest exponent first.
    pub fn first_nonzero(&self) -> Option<(i64, &T)> {
        self.coeffs.iter().enumerate().find(|(_, c)| !c.is_zero()).map(|(k, c)| (self.base + k as i64, c))
    }

    /// Coefficient of `t^e`, or the truncation obstacle when `e` lies past
    /// the validity bound.
    pub fn coeff(&self, e: i64) -> Result<T, WindowTooNarrow> {
        if let Some(v) = self.valid_to {
            if e >= v {
                return Err(WindowTooNarrow { wanted: e, valid_to: v });
            }
        }
        if e < self.base || e >= self.base + self.coeffs.len() as i64 {
            Ok(T::zero())
        } else {
            Ok(self.coeffs[(e - self.base) as usize].clone())
        }
    }

    /// Forgets everything at or above `hi` (tightens the validity bound).
    pub fn truncated(&self, hi: i64) -> Self {
        let valid_to = Some(self.valid_to.map_or(hi, |v| v.min(hi)));
        Series { base: self.base, coeffs: self.coeffs.clone(), valid_to }.normalized()
    }

    pub fn map<U: Scalar>(&self, f: impl Fn(&T) -> U) -> Series<U> {
        Series { base: self.base, coeffs: self.coeffs.iter().map(f).collect(), valid_to: self.valid_to }
            .normalized()
    }

    pub fn scaled(&self, c: &T) -> Self {
        self.map(|a| a.clone() * c.clone())
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let valid_to = match (self.valid_to, rhs.valid_to) {
            (Some(a), Some(b)) => Some(a.min(b)),
            (Some(a), None) | (None, Some(a)) => Some(a),
            (None, None) => None,
        };
        if self.coeffs.is_empty() && rhs.coeffs.is_empty() {
            return Series { base: 0, coeffs: Vec::new(), valid_to };
        }
        let base = match (self.coeffs.is_empty(), rhs.coeffs.is_empty()) {
            (true, false) => rhs.base,
            (false, true) => self.base,
            _ => self.base.min(rhs.base),
        };
        let hi = (self.base + self.coeffs.len() as i64).max(rhs.base + rhs.coeffs.len() as i64);
        let mut coeffs = Vec::with_capacity((hi - base) as usize);
        for e in base..hi {
            let a = self.coeff_unchecked(e);
            let b = rhs.coeff_unchecked(e);
            coeffs.push(a + b);
        }
        Series { base, coeffs, valid_to }.normalized()
    }

    fn coeff_unchecked(&self, e: i64) -> T {
        if e < self.base || e >= self.base + self.coeffs.len() as i64 {
            T::zero()
        } else {
            self.coeffs[(e - self.base) as usize].clone()
        }
    }

    pub fn neg(&self) -> Self {
        self.map(|c| -c.clone())
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.neg())
    }

    /// Product. Coefficients are computed only below the propagated
    /// validity bound and below `cap` when given, which keeps deep
    /// recursions from doing quadratic work they will never read.
    pub fn mul(&self, rhs: &Self, cap: Option<i64>) -> Self {
        // an exact zero annihilates regardless of the other validity bound
        if (self.coeffs.is_empty() && self.valid_to.is_none())
            || (rhs.coeffs.is_empty() && rhs.valid_to.is_none())
        {
            return Series::zero();
        }
        let mut bound: Option<i64> = cap;
        let mut tighten = |b: Option<i64>| {
            if let Some(b) = b {
                bound = Some(bound.map_or(b, |cur| cur.min(b)));
            }
        };
        // unknown tail of one factor enters the product shifted by the
        // lowest exponent of the other
        match (self.valid_to, rhs.min_exponent()) {
            (Some(v), Some(m)) => tighten(Some(v + m)),
            (Some(_), None) => return Series::zero(),
            (None, _) => {}
        }
        match (rhs.valid_to, self.min_exponent()) {
            (Some(v), Some(m)) => tighten(Some(v + m)),
            (Some(_), None) => return Series::zero(),
            (None, _) => {}
        }
        if self.coeffs.is_empty() || rhs.coeffs.is_empty() {
            return Series { base: 0, coeffs: Vec::new(), valid_to: bound };
        }
        let base = self.base + rhs.base;
        let full_hi = base + self.coeffs.len() as i64 + rhs.coeffs.len() as i64 - 1;
        let hi = bound.map_or(full_hi, |b| b.min(full_hi));
        if hi <= base {
            return Series { base: 0, coeffs: Vec::new(), valid_to: bound };
        }
        let mut coeffs = vec![T::zero(); (hi - base) as usize];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                let k = i + j;
                if (k as i64) >= hi - base {
                    break;
                }
                coeffs[k] = coeffs[k].clone() + a.clone() * b.clone();
            }
        }
        Series { base, coeffs, valid_to: bound }.normalized()
    }

    pub fn pow(&self, e: u32, cap: Option<i64>) -> Self {
        let mut acc = Series::monomial(T::one(), 0);
        for _ in 0..e {
            acc = acc.mul(self, cap);
        }
        acc
    }

    /// Termwise derivative with respect to the series variable.
    pub fn derivative(&self) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(k, c)| c.clone() * T::from_integer(self.base + k as i64))
            .collect();
        Series { base: self.base - 1, coeffs, valid_to: self.valid_to.map(|v| v - 1) }.normalized()
    }

    pub fn nth_derivative(&self, n: usize) -> Self {
        let mut acc = self.clone();
        for _ in 0..n {
            acc = acc.derivative();
        }
        acc
    }
}
