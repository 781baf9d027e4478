//! Dense univariate polynomials over a generic scalar.
//!
//! Coefficients are stored in ascending degree with no trailing zeros, so
//! the zero polynomial is the empty list. Ring operations need only
//! [`Scalar`]; division, gcd, square-free decomposition, interpolation and
//! resultants additionally need [`Field`].

use crate::scalar::{Field, Scalar};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

#[derive(Clone, PartialEq, Debug)]
pub struct Poly<T> {
    coeffs: Vec<T>,
}

impl<T: Scalar> Poly<T> {
    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Poly::constant(T::one())
    }

    pub fn constant(c: T) -> Self {
        Poly::from_coeffs(vec![c])
    }

    /// The monomial `x`.
    pub fn x() -> Self {
        Poly::from_coeffs(vec![T::zero(), T::one()])
    }

    pub fn monomial(c: T, degree: usize) -> Self {
        let mut coeffs = vec![T::zero(); degree];
        coeffs.push(c);
        Poly::from_coeffs(coeffs)
    }

    /// Builds from ascending coefficients, trimming trailing zeros.
    pub fn from_coeffs(mut coeffs: Vec<T>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    /// Coefficient of `x^k` (zero beyond the degree).
    pub fn coeff(&self, k: usize) -> T {
        self.coeffs.get(k).cloned().unwrap_or_else(T::zero)
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&T> {
        self.coeffs.last()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn eval(&self, x: &T) -> T {
        let mut acc = T::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x.clone() + c.clone();
        }
        acc
    }

    pub fn map<U: Scalar>(&self, f: impl Fn(&T) -> U) -> Poly<U> {
        Poly::from_coeffs(self.coeffs.iter().map(f).collect())
    }

    pub fn derivative(&self) -> Self {
        if self.coeffs.len() <= 1 {
            return Poly::zero();
        }
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(k, c)| c.clone() * T::from_integer(k as i64))
            .collect();
        Poly::from_coeffs(coeffs)
    }

    pub fn scaled(&self, c: &T) -> Self {
        Poly::from_coeffs(self.coeffs.iter().map(|a| a.clone() * c.clone()).collect())
    }

    /// Multiplies by `x^k`.
    pub fn shift_up(&self, k: usize) -> Self {
        if self.is_zero() {
            return Poly::zero();
        }
        let mut coeffs = vec![T::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        Poly { coeffs }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Poly::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// `p(x + a)`.
    pub fn taylor_shift(&self, a: &T) -> Self {
        let mut acc = Poly::zero();
        let shift = Poly::from_coeffs(vec![a.clone(), T::one()]);
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * &shift) + &Poly::constant(c.clone());
        }
        acc
    }
}

impl<T: Scalar> Add for &Poly<T> {
    type Output = Poly<T>;
    fn add(self, rhs: &Poly<T>) -> Poly<T> {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let coeffs = (0..n).map(|k| self.coeff(k) + rhs.coeff(k)).collect();
        Poly::from_coeffs(coeffs)
    }
}

impl<T: Scalar> Sub for &Poly<T> {
    type Output = Poly<T>;
    fn sub(self, rhs: &Poly<T>) -> Poly<T> {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let coeffs = (0..n).map(|k| self.coeff(k) - rhs.coeff(k)).collect();
        Poly::from_coeffs(coeffs)
    }
}

impl<T: Scalar> Mul for &Poly<T> {
    type Output = Poly<T>;
    fn mul(self, rhs: &Poly<T>) -> Poly<T> {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        let mut coeffs = vec![T::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] = coeffs[i + j].clone() + a.clone() * b.clone();
            }
        }
        Poly::from_coeffs(coeffs)
    }
}

impl<T: Scalar> Neg for &Poly<T> {
    type Output = Poly<T>;
    fn neg(self) -> Poly<T> {
        Poly::from_coeffs(self.coeffs.iter().map(|c| -c.clone()).collect())
    }
}

impl<T: Scalar> Add for Poly<T> {
    type Output = Poly<T>;
    fn add(self, rhs: Poly<T>) -> Poly<T> {
        &self + &rhs
    }
}

impl<T: Scalar> Sub for Poly<T> {
    type Output = Poly<T>;
    fn sub(self, rhs: Poly<T>) -> Poly<T> {
        &self - &rhs
    }
}

impl<T: Scalar> Mul for Poly<T> {
    type Output = Poly<T>;
    fn mul(self, rhs: Poly<T>) -> Poly<T> {
        &self * &rhs
    }
}

impl<T: Scalar> Neg for Poly<T> {
    type Output = Poly<T>;
    fn neg(self) -> Poly<T> {
        -&self
    }
}

impl<T: Field> Poly<T> {
    /// Euclidean division: returns `(quotient, remainder)` with
    /// `self = quotient * divisor + remainder` and `deg r < deg d`.
    /// Panics on a zero divisor.
    pub fn divrem(&self, divisor: &Self) -> (Self, Self) {
        let d = divisor.degree().expect("division by the zero polynomial");
        let lead = divisor.leading().unwrap().clone();
        let mut rem = self.coeffs.clone();
        if rem.len() < d + 1 {
            return (Poly::zero(), self.clone());
        }
        let mut quot = vec![T::zero(); rem.len() - d];
        for k in (d..rem.len()).rev() {
            let q = rem[k].clone() / lead.clone();
            if !q.is_zero() {
                for (j, dc) in divisor.coeffs.iter().enumerate() {
                    rem[k - d + j] = rem[k - d + j].clone() - q.clone() * dc.clone();
                }
            }
            rem[k] = T::zero();
            quot[k - d] = q;
        }
        (Poly::from_coeffs(quot), Poly::from_coeffs(rem))
    }

    /// Exact division; panics if the remainder is nonzero.
    pub fn exact_div(&self, divisor: &Self) -> Self {
        let (q, r) = self.divrem(divisor);
        assert!(r.is_zero(), "inexact polynomial division");
        q
    }

    pub fn monic(&self) -> Self {
        match self.leading() {
            None => Poly::zero(),
            Some(l) => {
                let inv = T::one() / l.clone();
                self.scaled(&inv)
            }
        }
    }

    /// Monic gcd; `gcd(0, 0) = 0`.
    pub fn gcd(&self, other: &Self) -> Self {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let (_, r) = a.divrem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Divides out a known root once. Debug-asserts the remainder vanishes.
    pub fn deflate_root(&self, root: &T) -> Self {
        let lin = Poly::from_coeffs(vec![-root.clone(), T::one()]);
        let (q, r) = self.divrem(&lin);
        debug_assert!(r.is_zero(), "deflation by a non-root");
        q
    }

    /// Yun square-free decomposition: returns monic pairwise-coprime
    /// square-free factors with their multiplicities, so that
    /// `self = lc * prod f_i^(m_i)`. Requires characteristic zero.
    pub fn squarefree_decomposition(&self) -> Vec<(Self, usize)> {
        let mut out = Vec::new();
        if self.is_constant() {
            return out;
        }
        let f = self.monic();
        let df = f.derivative();
        let g = f.gcd(&df);
        let mut w = f.exact_div(&g);
        let y = df.exact_div(&g);
        let mut z = &y - &w.derivative();
        let mut i = 1usize;
        while !w.is_constant() {
            let gi = w.gcd(&z);
            if gi.degree().unwrap_or(0) > 0 {
                out.push((gi.clone(), i));
            }
            w = w.exact_div(&gi);
            let y2 = z.exact_div(&gi);
            z = &y2 - &w.derivative();
            i += 1;
        }
        out
    }

    /// Resultant via the Euclidean remainder sequence. By convention the
    /// resultant with the zero polynomial is zero.
    pub fn resultant(&self, other: &Self) -> T {
        fn go<T: Field>(a: &Poly<T>, b: &Poly<T>) -> T {
            let m = a.degree().expect("resultant of zero polynomial");
            match b.degree() {
                None => T::zero(),
                Some(0) => {
                    let mut acc = T::one();
                    for _ in 0..m {
                        acc = acc * b.coeffs[0].clone();
                    }
                    acc
                }
                Some(n) => {
                    let (_, r) = a.divrem(b);
                    if r.is_zero() && m >= 1 {
                        return T::zero();
                    }
                    let dr = r.degree().map_or(0, |d| d);
                    let mut acc = if (m * n) % 2 == 1 { -T::one() } else { T::one() };
                    let lead = b.leading().unwrap().clone();
                    for _ in 0..m.saturating_sub(dr) {
                        acc = acc * lead.clone();
                    }
                    acc * go(b, &r)
                }
            }
        }
        if self.is_zero() || other.is_zero() {
            return T::zero();
        }
        if self.is_constant() {
            let mut acc = T::one();
            for _ in 0..other.degree().unwrap() {
                acc = acc * self.coeffs[0].clone();
            }
            return acc;
        }
        go(self, other)
    }

    /// Unique interpolating polynomial through distinct nodes, by divided
    /// differences. Panics on repeated nodes.
    pub fn newton_interpolate(points: &[(T, T)]) -> Self {
        let n = points.len();
        if n == 0 {
            return Poly::zero();
        }
        // table[i] holds the divided difference f[x_i..x_(i+level)]
        let mut table: Vec<T> = points.iter().map(|(_, y)| y.clone()).collect();
        let xs: Vec<T> = points.iter().map(|(x, _)| x.clone()).collect();
        let mut coefs = vec![table[0].clone()];
        for level in 1..n {
            for i in 0..n - level {
                let dx = xs[i + level].clone() - xs[i].clone();
                assert!(!dx.is_zero(), "repeated interpolation node");
                table[i] = (table[i + 1].clone() - table[i].clone()) / dx;
            }
            coefs.push(table[0].clone());
        }
        let mut acc = Poly::zero();
        let mut basis = Poly::one();
        for (i, c) in coefs.iter().enumerate() {
            acc = &acc + &basis.scaled(c);
            if i + 1 < n {
                let lin = Poly::from_coeffs(vec![-xs[i].clone(), T::one()]);
                basis = &basis * &lin;
            }
        }
        acc
    }
}

impl<T: Scalar + fmt::Display> Poly<T> {
    /// Renders in descending powers with explicit `*` and `^`, e.g.
    /// `r^4-14*r^3-109*r^2-214*r-120`. Coefficients containing an inner
    /// sign or an imaginary part are parenthesized.
    pub fn display_with(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let body = c.to_string();
            let (sign, bare) = match body.strip_prefix('-') {
                Some(rest) if !rest.contains('+') && !rest.contains('-') => ("-", rest.to_string()),
                _ => ("+", body),
            };
            let needs_parens =
                bare.contains('+') || bare.contains('-') || (bare.contains('i') && bare != "i");
            let mag = if needs_parens { format!("({bare})") } else { bare };
            if out.is_empty() {
                if sign == "-" {
                    out.push('-');
                }
            } else {
                out.push_str(sign);
            }
            let coeff_is_one = mag == "1";
            match (k, coeff_is_one) {
                (0, _) => out.push_str(&mag),
                (1, true) => out.push_str(var),
                (1, false) => {
                    out.push_str(&mag);
                    out.push('*');
                    out.push_str(var);
                }
                (_, true) => {
                    out.push_str(var);
                    out.push_str(&format!("^{k}"));
                }
                (_, false) => {
                    out.push_str(&mag);
                    out.push('*');
                    out.push_str(var);
                    out.push_str(&format!("^{k}"));
                }
            }
        }
        out
    }
}
