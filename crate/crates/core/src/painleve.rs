//! Pole-family analysis: determining and resonance polynomials, resonance
//! sets, resonance products, and the recursive Laurent expansion.
//!
//! For an equation with integer pole order `s`, substituting the leading
//! behaviour `w = q t^-s` turns the deepest residual coefficient into the
//! determining polynomial `H(q)`; each nonzero root of `H` seeds a family
//! of pole-like expansions whose linearized recursion is governed by the
//! resonance polynomial `R(r; q)`. Everything here is built in closed form
//! from the dominant terms; the sampling routines in [`crate::oracle`]
//! recover the same objects independently and are used to cross-check.

use crate::gauss::GaussRational;
use crate::ode::{integral_bureau, EvaluatedODE};
use crate::oracle::substitute;
use crate::poly::Poly;
use crate::gauss::round_dyadic;
use crate::roots::{
    eval_ball, find_roots, integer_divisors, nearest_integer, scale_to_gaussian_integers, Ball,
    RootError, RootQ, RootValue,
};
use crate::series::Series;
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::collections::BTreeMap;
use std::fmt;

pub const DEFAULT_PRECISION_BITS: u32 = 256;
pub const DEFAULT_DEPTH_CAP: usize = 64;
/// Absolute distance below which a numeric root is snapped to the nearest
/// integer before exact certification.
pub const SNAP_TOLERANCE_BITS: u32 = 40;
/// Coefficient rounding for the probe polynomial used to locate snap
/// candidates within a numerically localized family.
const PROBE_COEFF_BITS: u32 = 192;
/// Root-finding precision cap for that probe; candidates only need to land
/// well inside the snap tolerance.
const PROBE_ROOT_BITS: u32 = 128;

/// `tau(s, j) = prod_{k=0}^{j-1} (-s - k)`: the coefficient picked up by
/// the j-th derivative of `t^-s`.
pub fn tau(s: u32, j: u32) -> BigInt {
    let mut acc = BigInt::one();
    for k in 0..j {
        acc *= -BigInt::from(s as i64 + k as i64);
    }
    acc
}

fn tau_gauss(s: u32, j: u32) -> GaussRational {
    GaussRational::from_rational(BigRational::from_integer(tau(s, j)))
}

/// `tau_r(j) = prod_{k=0}^{j-1} (r - s - k)` as a polynomial in `r`.
fn tau_shifted(s: u32, j: u32) -> Poly<GaussRational> {
    let mut acc = Poly::constant(GaussRational::one());
    for k in 0..j {
        let linear = Poly::from_coeffs(vec![
            GaussRational::from_int(-(s as i64 + k as i64)),
            GaussRational::one(),
        ]);
        acc = &acc * &linear;
    }
    acc
}

fn pole_order(eq: &EvaluatedODE) -> u32 {
    integral_bureau(&eq.leading.bureau).expect("analysis requires an integer pole order")
}

/// The determining polynomial, stored with the structural root at the
/// origin divided out.
#[derive(Clone, PartialEq, Debug)]
pub struct DeterminingPoly {
    /// `H(q)/q`; its constant term is `tau(s, n)` and never vanishes.
    pub reduced: Poly<GaussRational>,
    pub bureau: u32,
}

impl DeterminingPoly {
    /// `H(q)` itself.
    pub fn full(&self) -> Poly<GaussRational> {
        self.reduced.shift_up(1)
    }

    /// Number of nonzero roots of `H`, counted with multiplicity.
    pub fn m(&self) -> usize {
        self.reduced.degree().unwrap_or(0)
    }
}

/// `H(q)/q = tau(s,n) - sum over dominant chi of
/// a_chi * prod_j tau(s,j)^chi_j * q^(|chi|-1)`.
pub fn determining_polynomial(eq: &EvaluatedODE) -> DeterminingPoly {
    let s = pole_order(eq);
    let n = eq.order as u32;
    let mut h = Poly::constant(tau_gauss(s, n));
    for chi in &eq.leading.dominant {
        let a = &eq.values[chi];
        let mut scale = a.clone();
        for (j, &e) in chi.exps().iter().enumerate() {
            if e > 0 {
                scale = &scale * &tau_gauss(s, j as u32).pow(e);
            }
        }
        let power = chi.degree() as usize - 1;
        h = h - Poly::monomial(scale, power);
    }
    DeterminingPoly { reduced: h, bureau: s }
}

/// The resonance polynomial in `r` for a fixed exact leading coefficient:
/// `R(r) = tau_r(n) - sum over dominant chi of a_chi * prod_j
/// tau(s,j)^chi_j * q^(|chi|-1) * sum_j chi_j * tau_r(j) / tau(s,j)`.
pub fn resonance_polynomial_at(eq: &EvaluatedODE, q: &GaussRational) -> Poly<GaussRational> {
    let s = pole_order(eq);
    let n = eq.order as u32;
    let mut r = tau_shifted(s, n);
    for chi in &eq.leading.dominant {
        let a = &eq.values[chi];
        let mut scale = a.clone();
        for (j, &e) in chi.exps().iter().enumerate() {
            if e > 0 {
                scale = &scale * &tau_gauss(s, j as u32).pow(e);
            }
        }
        scale = &scale * &q.pow(chi.degree() - 1);
        let mut inner = Poly::zero();
        for (j, &e) in chi.exps().iter().enumerate() {
            if e == 0 {
                continue;
            }
            let weight = GaussRational::from_int(e as i64) * tau_gauss(s, j as u32).recip();
            inner = inner + tau_shifted(s, j as u32).scaled(&weight);
        }
        r = r - inner.scaled(&scale);
    }
    r
}

/// The resonance polynomial reorganized as a polynomial in `q` at a fixed
/// resonance candidate `r`; used for exact certification of integer
/// resonances on numerically localized families.
pub fn resonance_in_q(eq: &EvaluatedODE, r: &GaussRational) -> Poly<GaussRational> {
    let s = pole_order(eq);
    let n = eq.order as u32;
    let mut out = Poly::constant(tau_shifted(s, n).eval(r));
    for chi in &eq.leading.dominant {
        let a = &eq.values[chi];
        let mut scale = a.clone();
        for (j, &e) in chi.exps().iter().enumerate() {
            if e > 0 {
                scale = &scale * &tau_gauss(s, j as u32).pow(e);
            }
        }
        let mut inner = GaussRational::zero();
        for (j, &e) in chi.exps().iter().enumerate() {
            if e == 0 {
                continue;
            }
            let weight = GaussRational::from_int(e as i64) * tau_gauss(s, j as u32).recip();
            inner = inner + &weight * &tau_shifted(s, j as u32).eval(r);
        }
        let power = chi.degree() as usize - 1;
        out = out - Poly::monomial(&scale * &inner, power);
    }
    out
}

/// Resonance polynomial attached to a localized root of the determining
/// polynomial. For a certified-numeric root the coefficients come from the
/// exact disk center and are flagged as such.
#[derive(Clone, PartialEq, Debug)]
pub struct ResonancePoly {
    pub coeffs: Poly<GaussRational>,
    pub exact: bool,
}

pub fn resonance_polynomial(eq: &EvaluatedODE, q: &RootQ) -> ResonancePoly {
    ResonancePoly {
        coeffs: resonance_polynomial_at(eq, q.center()),
        exact: q.is_exact(),
    }
}

/// All roots of the determining polynomial (never including the divided-out
/// origin).
pub fn determining_roots(
    h: &DeterminingPoly,
    precision_bits: u32,
) -> Result<Vec<RootQ>, RootError> {
    find_roots(&h.reduced, precision_bits)
}

/// Outcome of splitting a resonance polynomial into integer roots and the
/// rest. `others` localizes non-integer roots when possible; `unresolved`
/// counts roots that resisted localization. The set is "all integer"
/// exactly when both are empty.
#[derive(Clone, PartialEq, Debug)]
pub struct ResonanceSet {
    /// Integer roots, ascending, duplicated per multiplicity.
    pub integers: Vec<BigInt>,
    pub others: Vec<RootQ>,
    pub unresolved: usize,
}

impl ResonanceSet {
    pub fn all_integer(&self) -> bool {
        self.others.is_empty() && self.unresolved == 0
    }

    pub fn negatives(&self) -> Vec<BigInt> {
        self.integers.iter().filter(|k| k.is_negative()).cloned().collect()
    }

    pub fn positives(&self) -> Vec<i64> {
        self.integers
            .iter()
            .filter(|k| k.is_positive())
            .map(|k| k.to_i64().expect("positive resonances fit in i64"))
            .collect()
    }

    pub fn has_repeats(&self) -> bool {
        self.integers.windows(2).any(|w| w[0] == w[1])
            || self.others.iter().any(|r| r.multiplicity > 1)
    }
}

/// Distance-to-integer snap: `Some(k)` when the value lies within
/// `2^-SNAP_TOLERANCE_BITS` of the integer `k`.
fn snap_to_integer(x: &GaussRational) -> Option<BigInt> {
    let (k, dist) = nearest_integer(&x.re);
    let tol = BigRational::new(BigInt::one(), BigInt::one() << SNAP_TOLERANCE_BITS);
    if &dist * &dist + &x.im * &x.im <= &tol * &tol {
        Some(k)
    } else {
        None
    }
}

/// Integer divisor candidates for the roots of `p` (which must have a
/// nonzero constant term); `None` when the factoring budget is exceeded.
fn integer_root_candidates(p: &Poly<GaussRational>) -> Option<Vec<BigInt>> {
    let scaled = scale_to_gaussian_integers(p);
    let (re, im) = &scaled[0];
    let g = re.abs().to_biguint().unwrap().gcd(&im.abs().to_biguint().unwrap());
    let divs = integer_divisors(&g)?;
    let mut out = Vec::with_capacity(divs.len() * 2);
    for d in divs {
        let d = BigInt::from(d);
        out.push(d.clone());
        out.push(-d);
    }
    Some(out)
}

/// Splits the roots of an exact resonance polynomial into integers and the
/// rest. Integer roots are found exactly: by divisor candidates of the
/// constant term when the factoring budget allows, otherwise by certified
/// localization plus snap-and-verify. Non-integer roots are localized for
/// reporting when the numeric stage succeeds.
pub fn resonance_roots(rp: &ResonancePoly, precision_bits: u32) -> ResonanceSet {
    let mut p = rp.coeffs.clone();
    let mut integers: Vec<BigInt> = Vec::new();
    while p.degree().unwrap_or(0) >= 1 && p.coeff(0).is_zero() {
        integers.push(BigInt::zero());
        p = p.exact_div(&Poly::x());
    }
    if p.degree().unwrap_or(0) >= 1 {
        match integer_root_candidates(&p) {
            Some(mut cands) => {
                cands.sort();
                cands.dedup();
                for k in cands {
                    let kg = GaussRational::new(
                        BigRational::from_integer(k.clone()),
                        BigRational::zero(),
                    );
                    while p.degree().unwrap_or(0) >= 1 && p.eval(&kg).is_zero() {
                        p = p.deflate_root(&kg);
                        integers.push(k.clone());
                    }
                }
            }
            None => {
                if let Ok(roots) = find_roots(&p, precision_bits.max(64)) {
                    for root in roots {
                        if let Some(k) = snap_to_integer(root.center()) {
                            let kg = GaussRational::new(
                                BigRational::from_integer(k.clone()),
                                BigRational::zero(),
                            );
                            while p.degree().unwrap_or(0) >= 1 && p.eval(&kg).is_zero() {
                                p = p.deflate_root(&kg);
                                integers.push(k.clone());
                            }
                        }
                    }
                }
            }
        }
    }
    let (others, unresolved) = match p.degree().unwrap_or(0) {
        0 => (Vec::new(), 0),
        d => match find_roots(&p, precision_bits) {
            Ok(roots) => (roots, 0),
            Err(_) => (Vec::new(), d),
        },
    };
    integers.sort();
    ResonanceSet { integers, others, unresolved }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum ProductError {
    /// The leading coefficient is a multiple root of the determining
    /// polynomial, so the resonance product vanishes identically.
    ZeroProduct,
}

impl fmt::Display for ProductError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ProductError::ZeroProduct => {
                write!(f, "resonance product vanishes: multiple root of the determining polynomial")
            }
        }
    }
}

impl std::error::Error for ProductError {}

/// Product of all resonances of a family: `(-1)^n * H'(q)`, evaluated
/// exactly or over the certifying disk.
pub fn resonance_product(
    eq: &EvaluatedODE,
    h: &DeterminingPoly,
    q: &RootQ,
) -> Result<Ball, ProductError> {
    if q.multiplicity > 1 {
        return Err(ProductError::ZeroProduct);
    }
    let h_prime = h.full().derivative();
    let mut value = match &q.value {
        RootValue::Exact(v) => Ball::exact(h_prime.eval(v)),
        RootValue::Certified(b) => eval_ball(&h_prime, b),
    };
    if eq.order % 2 == 1 {
        value.center = -value.center;
    }
    Ok(value)
}

/// One family of pole-like expansions: a root of the determining
/// polynomial together with its resonance data.
#[derive(Clone, Debug)]
pub struct PoleFamily {
    pub q: RootQ,
    pub res_poly: ResonancePoly,
    pub resonances: ResonanceSet,
    /// `None` exactly when the root is multiple (vanishing product).
    pub product: Option<Ball>,
}

impl PoleFamily {
    pub fn is_exact(&self) -> bool {
        self.q.is_exact()
    }

    pub fn negatives(&self) -> Vec<BigInt> {
        self.resonances.negatives()
    }
}

/// Builds every pole family: localizes the roots of the determining
/// polynomial, attaches resonance polynomials and resonance sets, and
/// computes the products. Families are ordered with exact roots first.
///
/// For a certified-numeric root the resonance polynomial is taken at the
/// disk center; a snapped integer resonance `k` is kept only under a
/// two-part certificate: the resultant of `H/q` and `R(k; .)` (both exact
/// polynomials in `q`) vanishes, so `k` is a true resonance of some family,
/// and the disk image of `R(k; .)` at this root contains zero, tying it to
/// this family.
pub fn pole_families(eq: &EvaluatedODE, precision_bits: u32) -> Result<Vec<PoleFamily>, RootError> {
    let det = determining_polynomial(eq);
    if det.m() == 0 {
        return Ok(Vec::new());
    }
    let roots = determining_roots(&det, precision_bits)?;
    let mut families = Vec::with_capacity(roots.len());
    for root in roots {
        let res_poly = resonance_polynomial(eq, &root);
        let resonances = if root.is_exact() {
            resonance_roots(&res_poly, precision_bits)
        } else {
            let RootValue::Certified(ball) = &root.value else { unreachable!() };
            numeric_family_resonances(eq, &det, ball, &res_poly, precision_bits)
        };
        let product = match resonance_product(eq, &det, &root) {
            Ok(b) => Some(b),
            Err(ProductError::ZeroProduct) => None,
        };
        families.push(PoleFamily { q: root, res_poly, resonances, product });
    }
    Ok(families)
}

fn numeric_family_resonances(
    eq: &EvaluatedODE,
    det: &DeterminingPoly,
    qball: &Ball,
    res_poly: &ResonancePoly,
    precision_bits: u32,
) -> ResonanceSet {
    let degree = res_poly.coeffs.degree().unwrap_or(0);
    // The polynomial built at the ball's center carries dyadic coefficients
    // as wide as the certification precision, which makes root-finding on it
    // needlessly slow. Roots here only serve as snap candidates (the integer
    // certificate below is exact and checked against the original ball) and
    // as approximate localizations of the rest, so a rounded probe at a much
    // coarser precision is sufficient: its root drift is far below the snap
    // tolerance for any polynomial this pipeline produces.
    let probe = res_poly.coeffs.map(|c| {
        GaussRational::new(round_dyadic(&c.re, PROBE_COEFF_BITS), round_dyadic(&c.im, PROBE_COEFF_BITS))
    });
    let roots = match find_roots(&probe, precision_bits.min(PROBE_ROOT_BITS)) {
        Ok(r) => r,
        Err(_) => {
            return ResonanceSet { integers: Vec::new(), others: Vec::new(), unresolved: degree }
        }
    };
    let mut integers = Vec::new();
    let mut others = Vec::new();
    for root in roots {
        let snapped = snap_to_integer(root.center());
        let certified = snapped.as_ref().is_some_and(|k| {
            let rk = resonance_in_q(eq, &GaussRational::new(
                BigRational::from_integer(k.clone()),
                BigRational::zero(),
            ));
            det.reduced.resultant(&rk).is_zero() && eval_ball(&rk, qball).contains_zero()
        });
        if certified {
            let k = snapped.unwrap();
            for _ in 0..root.multiplicity {
                integers.push(k.clone());
            }
        } else {
            others.push(root);
        }
    }
    integers.sort();
    ResonanceSet { integers, others, unresolved: 0 }
}

/// A truncated pole-like expansion `w = q t^-s + sum_j c_j t^(j-s)`.
#[derive(Clone, PartialEq, Debug)]
pub struct LaurentExpansion {
    pub pole_order: u32,
    pub q: GaussRational,
    /// `c_1 ... c_depth`.
    pub coefficients: Vec<GaussRational>,
    /// Positive resonance indices whose coefficients were taken as free
    /// parameters, ascending.
    pub free_indices: Vec<i64>,
}

#[derive(Clone, PartialEq, Debug)]
pub enum ExpandError {
    /// The family's leading coefficient is only numerically localized; the
    /// exact recursion is not available.
    InexactLeading,
    /// The family has non-integer resonances, so the recursion divides by
    /// zero at no integer index but the expansion is not meaningful.
    NonIntegerResonances,
    DepthBeyondSupport { depth: usize, max: usize },
    MissingFreeValue(i64),
    /// Nonzero obstruction at a resonance index: logarithms would be
    /// required.
    CompatibilityFailure { index: i64, obstruction: GaussRational },
}

impl fmt::Display for ExpandError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExpandError::InexactLeading => {
                write!(f, "expansion requires an exactly known leading coefficient")
            }
            ExpandError::NonIntegerResonances => {
                write!(f, "expansion requires all-integer resonances")
            }
            ExpandError::DepthBeyondSupport { depth, max } => {
                write!(f, "requested depth {depth} exceeds the supported maximum {max}")
            }
            ExpandError::MissingFreeValue(j) => {
                write!(f, "no free value supplied for the resonance at index {j}")
            }
            ExpandError::CompatibilityFailure { index, obstruction } => {
                write!(f, "compatibility fails at resonance {index}: obstruction {obstruction}")
            }
        }
    }
}

impl std::error::Error for ExpandError {}

/// Computes `c_j` for `j = 1..depth` by solving `R(j) c_j = -Q_j`, where
/// `Q_j` is read off from the residual of the current truncation; at each
/// positive resonance the obstruction `Q_j` must vanish and the supplied
/// free value is installed.
pub fn expand_laurent(
    eq: &EvaluatedODE,
    family: &PoleFamily,
    depth: usize,
    free_values: &BTreeMap<i64, GaussRational>,
    max_depth: usize,
) -> Result<LaurentExpansion, ExpandError> {
    if depth > max_depth {
        return Err(ExpandError::DepthBeyondSupport { depth, max: max_depth });
    }
    let q = family.q.exact_value().ok_or(ExpandError::InexactLeading)?;
    if !family.resonances.all_integer() {
        return Err(ExpandError::NonIntegerResonances);
    }
    let s = pole_order(eq) as i64;
    let n = eq.order as i64;
    let positive: Vec<i64> = family.resonances.positives();
    let mut w: Series<GaussRational> = Series::monomial(q.clone(), -s);
    let mut coefficients = Vec::with_capacity(depth);
    let mut free_indices = Vec::new();
    for j in 1..=depth as i64 {
        let target = j - s - n;
        let residual = substitute(eq, &w, Some(target + 1));
        let obstruction = residual
            .coeff(target)
            .expect("capped substitution keeps the needed window");
        let c_j = if positive.contains(&j) {
            if !obstruction.is_zero() {
                return Err(ExpandError::CompatibilityFailure { index: j, obstruction });
            }
            free_indices.push(j);
            free_values.get(&j).cloned().ok_or(ExpandError::MissingFreeValue(j))?
        } else {
            let rj = family.res_poly.coeffs.eval(&GaussRational::from_int(j));
            debug_assert!(!rj.is_zero(), "nonresonant index with vanishing recursion pivot");
            -(obstruction / rj)
        };
        if !c_j.is_zero() {
            w = w.add(&Series::monomial(c_j.clone(), j - s));
        }
        coefficients.push(c_j);
    }
    Ok(LaurentExpansion { pole_order: s as u32, q: q.clone(), coefficients, free_indices })
}
