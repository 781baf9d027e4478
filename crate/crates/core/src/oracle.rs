//! Reference computations by direct series substitution.
//!
//! Everything here works by literally plugging a candidate expansion into
//! the equation and reading off coefficients of the residual — no reliance
//! on the closed-form constructions used elsewhere. The two sampling
//! routines (`oracle_h`, `oracle_r`) recover the determining and resonance
//! polynomials by exact interpolation from substituted samples, so they can
//! cross-check the closed forms coefficient by coefficient.

use crate::dual::Dual;
use crate::gauss::GaussRational;
use crate::ode::{integral_bureau, EvaluatedODE};
use crate::poly::Poly;
use crate::series::{Series, WindowTooNarrow};
use crate::scalar::Scalar;
use num_traits::{One, Zero};
use std::fmt;

/// Embedding of the exact coefficient field into a computation scalar.
pub trait FromGauss: Scalar {
    fn from_gauss(g: &GaussRational) -> Self;
}

impl FromGauss for GaussRational {
    fn from_gauss(g: &GaussRational) -> Self {
        g.clone()
    }
}

impl FromGauss for Dual<GaussRational> {
    fn from_gauss(g: &GaussRational) -> Self {
        Dual::constant(g.clone())
    }
}

#[derive(Clone, PartialEq, Debug)]
pub enum OracleError {
    /// A residual coefficient was requested beyond the validity window of
    /// the substituted series.
    Window(WindowTooNarrow),
    /// An extra sample disagreed with the interpolated polynomial.
    InterpolationInconsistent {
        sample: GaussRational,
        expected: GaussRational,
        got: GaussRational,
    },
    /// The sampled resonance polynomial failed its shape invariant.
    NotMonic(Poly<GaussRational>),
}

impl fmt::Display for OracleError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OracleError::Window(w) => write!(f, "{w}"),
            OracleError::InterpolationInconsistent { sample, expected, got } => write!(
                f,
                "interpolation check failed at sample {sample}: expected {expected}, got {got}"
            ),
            OracleError::NotMonic(p) => {
                write!(f, "sampled polynomial is not monic of full degree: {}", p.display_with("r"))
            }
        }
    }
}

impl std::error::Error for OracleError {}

/// Residual of the equation at a candidate series: `w^(n)` minus every
/// right-hand term, with the independent-variable coefficients expanded
/// around the base point. `cap` optionally truncates the computation to
/// exponents below the bound; everything below the bound stays exact.
pub fn substitute<T: FromGauss>(eq: &EvaluatedODE, w: &Series<T>, cap: Option<i64>) -> Series<T> {
    let mut acc = w.nth_derivative(eq.order);
    if let Some(c) = cap {
        acc = acc.truncated(c);
    }
    for (chi, coeff) in &eq.shifted {
        let mut factors = vec![Series::from_poly(&coeff.map(T::from_gauss))];
        for (j, &e) in chi.exps().iter().enumerate() {
            if e == 0 {
                continue;
            }
            let wj = w.nth_derivative(j);
            for _ in 1..e {
                factors.push(wj.clone());
            }
            factors.push(wj);
        }
        // Intermediate caps are loosened by the minimum exponents of the
        // factors still to be multiplied in: truncating a partial product
        // at the final bound would let a factor with a negative lowest
        // exponent pull unknown tail below the bound.
        let mut term = factors[0].clone();
        for i in 1..factors.len() {
            let local_cap = cap.map(|c| {
                let rest: i64 = factors[i + 1..]
                    .iter()
                    .map(|f| f.min_exponent().unwrap_or(0))
                    .sum();
                c - rest
            });
            term = term.mul(&factors[i], local_cap);
        }
        acc = acc.sub(&term);
    }
    acc
}

/// Pole order of the equation, which must be a positive integer for any of
/// the sampling routines to make sense.
fn pole_order(eq: &EvaluatedODE) -> i64 {
    integral_bureau(&eq.leading.bureau).expect("sampling requires an integer pole order") as i64
}

/// The determining polynomial `H(q)` recovered by substituting `w = q t^-s`
/// for integer samples of `q` and interpolating the coefficient of
/// `t^(-s-n)`. One extra sample cross-checks the fit.
pub fn oracle_h(eq: &EvaluatedODE) -> Result<Poly<GaussRational>, OracleError> {
    let n = eq.order as i64;
    let s = pole_order(eq);
    let d = eq.leading.top_degree as i64;
    let mut points = Vec::new();
    for k in 1..=(d + 2) {
        let q = GaussRational::from_int(k);
        let w: Series<GaussRational> = Series::monomial(q.clone(), -s);
        let residual = substitute(eq, &w, None);
        let value = residual.coeff(-s - n).map_err(OracleError::Window)?;
        points.push((q, value));
    }
    let (check, fit_points) = points.split_last().expect("at least three samples");
    let fit = Poly::newton_interpolate(fit_points);
    let predicted = fit.eval(&check.0);
    if predicted != check.1 {
        return Err(OracleError::InterpolationInconsistent {
            sample: check.0.clone(),
            expected: check.1.clone(),
            got: predicted,
        });
    }
    assert!(fit.coeff(0).is_zero(), "determining polynomial must vanish at q = 0");
    Ok(fit)
}

/// The resonance polynomial `R(r; q)` at a fixed leading coefficient,
/// recovered by substituting `w = q t^-s + eps t^(r-s)` with a nilpotent
/// probe and interpolating the probe-linear part of the coefficient of
/// `t^(r-s-n)` over integer samples `r = 0..n`.
pub fn oracle_r(eq: &EvaluatedODE, q: &GaussRational) -> Result<Poly<GaussRational>, OracleError> {
    let n = eq.order as i64;
    let s = pole_order(eq);
    let mut points = Vec::new();
    for r in 0..=n {
        let base: Series<Dual<GaussRational>> = Series::monomial(Dual::constant(q.clone()), -s);
        let probe = Series::monomial(Dual::slot(GaussRational::zero()), r - s);
        let w = base.add(&probe);
        let residual = substitute(eq, &w, None);
        let value = residual.coeff(r - s - n).map_err(OracleError::Window)?;
        points.push((GaussRational::from_int(r), value.eps));
    }
    let fit = Poly::newton_interpolate(&points);
    if fit.degree() != Some(eq.order) || fit.leading() != Some(&GaussRational::one()) {
        return Err(OracleError::NotMonic(fit));
    }
    Ok(fit)
}
