//! Root localization for polynomials with exact complex-rational
//! coefficients.
//!
//! Strategy: multiplicities are split off exactly (square-free
//! decomposition), then every root that is a Gaussian rational is found by
//! exact divisor-candidate search on the integer-scaled polynomial and
//! deflated out. Whatever remains is localized numerically: simultaneous
//! f64 iteration for seeds, exact-rational Newton polishing with dyadic
//! rounding, and an a-posteriori certified error radius
//! `deg * |p(x)| / |p'(x)|`. Numeric results are disks guaranteed to
//! contain exactly one root each; failure to certify is an error, never a
//! silent approximation.

use crate::gauss::{round_dyadic, sqrt_lower, sqrt_upper, GaussRational};
use crate::poly::Poly;
use num_bigint::{BigInt, BigUint};
use num_complex::Complex64;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

/// Closed disk `|x - center| <= radius` in the complex plane with exact
/// rational data.
#[derive(Clone, PartialEq, Debug)]
pub struct Ball {
    pub center: GaussRational,
    pub radius: BigRational,
}

impl Ball {
    pub fn exact(center: GaussRational) -> Self {
        Ball { center, radius: BigRational::zero() }
    }

    pub fn contains_zero(&self) -> bool {
        self.center.norm_sqr() <= &self.radius * &self.radius
    }

    pub fn contains(&self, x: &GaussRational) -> bool {
        (&self.center - x).norm_sqr() <= &self.radius * &self.radius
    }

    /// Rational upper bound for `|x|` over the disk.
    pub fn abs_upper(&self) -> BigRational {
        sqrt_upper(&self.center.norm_sqr()) + &self.radius
    }

    /// Rational lower bound for `|x|` over the disk (zero if it straddles
    /// the origin).
    pub fn abs_lower(&self) -> BigRational {
        let low = sqrt_lower(&self.center.norm_sqr()) - &self.radius;
        if low.is_negative() {
            BigRational::zero()
        } else {
            low
        }
    }

    pub fn add(&self, rhs: &Ball) -> Ball {
        Ball { center: &self.center + &rhs.center, radius: &self.radius + &rhs.radius }
    }

    /// Disk guaranteed to contain `1/x` for every `x` in `self`, when the
    /// disk excludes the origin.
    pub fn recip(&self) -> Option<Ball> {
        let low = self.abs_lower();
        if !low.is_positive() {
            return None;
        }
        let center = self.center.recip();
        // |1/x - 1/c| = |x - c| / (|x| |c|) <= r / (low * low_center)
        let low_center = sqrt_lower(&self.center.norm_sqr());
        let radius = &self.radius / (&low * &low_center);
        Some(Ball { center, radius })
    }

    pub fn is_exact(&self) -> bool {
        self.radius.is_zero()
    }
}

impl fmt::Display for Ball {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} ± {}", self.center, self.radius)
    }
}

/// Evaluates `p` over a disk: exact value at the center plus a rigorous
/// radius bound `r * sum_i i*|a_i|*(|c|+r)^(i-1)` from the mean value
/// inequality.
pub fn eval_ball(p: &Poly<GaussRational>, b: &Ball) -> Ball {
    let center = p.eval(&b.center);
    if b.radius.is_zero() {
        return Ball::exact(center);
    }
    let reach = b.abs_upper();
    let mut pow = BigRational::one();
    let mut bound = BigRational::zero();
    for (i, a) in p.coeffs().iter().enumerate().skip(1) {
        let mag = sqrt_upper(&a.norm_sqr());
        bound += BigRational::from_integer(i.into()) * mag * &pow;
        pow *= &reach;
    }
    Ball { center, radius: &b.radius * &bound }
}

#[derive(Clone, PartialEq, Debug)]
pub enum RootValue {
    Exact(GaussRational),
    Certified(Ball),
}

#[derive(Clone, PartialEq, Debug)]
pub struct RootQ {
    pub value: RootValue,
    pub multiplicity: usize,
}

impl RootQ {
    pub fn is_exact(&self) -> bool {
        matches!(self.value, RootValue::Exact(_))
    }

    pub fn exact_value(&self) -> Option<&GaussRational> {
        match &self.value {
            RootValue::Exact(v) => Some(v),
            RootValue::Certified(_) => None,
        }
    }

    /// Exact center of the localization (the value itself when exact).
    pub fn center(&self) -> &GaussRational {
        match &self.value {
            RootValue::Exact(v) => v,
            RootValue::Certified(b) => &b.center,
        }
    }

    /// Fixed total order: exact roots first, then by (re, im) of the
    /// center. Used everywhere families are listed.
    pub fn cmp_order(&self, other: &Self) -> Ordering {
        match (self.is_exact(), other.is_exact()) {
            (true, false) => Ordering::Less,
            (false, true) => Ordering::Greater,
            _ => self.center().cmp_lex(other.center()),
        }
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum RootError {
    NumericFailure(String),
}

impl fmt::Display for RootError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RootError::NumericFailure(msg) => write!(f, "numeric root certification failed: {msg}"),
        }
    }
}

impl std::error::Error for RootError {}

/// All complex roots of `p` with multiplicities: exact where the root is a
/// Gaussian rational, certified disks otherwise. `precision_bits` sets the
/// target disk radius `2^-precision_bits` (relative to the root size).
pub fn find_roots(p: &Poly<GaussRational>, precision_bits: u32) -> Result<Vec<RootQ>, RootError> {
    assert!(p.degree().unwrap_or(0) >= 1, "root finding needs degree >= 1");
    let mut out: Vec<RootQ> = Vec::new();
    for (factor, mult) in p.squarefree_decomposition() {
        let mut f = factor;
        while f.degree().unwrap_or(0) >= 1 && f.coeff(0).is_zero() {
            out.push(RootQ { value: RootValue::Exact(GaussRational::zero()), multiplicity: mult });
            f = f.exact_div(&Poly::x());
        }
        if f.degree().unwrap_or(0) == 0 {
            continue;
        }
        for cand in exact_candidates(&f) {
            if f.degree().unwrap_or(0) == 0 {
                break;
            }
            if f.eval(&cand).is_zero() {
                f = f.deflate_root(&cand);
                out.push(RootQ { value: RootValue::Exact(cand), multiplicity: mult });
            }
        }
        match f.degree().unwrap_or(0) {
            0 => {}
            1 => {
                let root = -(f.coeff(0) / f.coeff(1));
                out.push(RootQ { value: RootValue::Exact(root), multiplicity: mult });
            }
            _ => {
                for ball in numeric_roots(&f, precision_bits)? {
                    out.push(RootQ { value: RootValue::Certified(ball), multiplicity: mult });
                }
            }
        }
    }
    out.sort_by(|a, b| a.cmp_order(b));
    Ok(out)
}

/// Candidate Gaussian-rational roots of `f` from divisor pairs of the
/// integer-scaled constant and leading coefficients. A superset of all
/// Gaussian-rational roots when the factoring budget suffices; possibly
/// incomplete (even empty) otherwise, in which case the numeric stage picks
/// up the remainder.
fn exact_candidates(f: &Poly<GaussRational>) -> Vec<GaussRational> {
    const MAX_CANDIDATES: usize = 100_000;
    let scaled = scale_to_gaussian_integers(f);
    let c0 = scaled.first().expect("nonzero polynomial").clone();
    let clead = scaled.last().expect("nonzero polynomial").clone();
    let (Some(num_divs), Some(den_divs)) = (gaussian_divisors(&c0), gaussian_divisors(&clead))
    else {
        return Vec::new();
    };
    if num_divs
        .len()
        .checked_mul(den_divs.len())
        .and_then(|n| n.checked_mul(4))
        .is_none_or(|n| n > MAX_CANDIDATES)
    {
        return Vec::new();
    }
    let units = [
        GaussRational::one(),
        GaussRational::i(),
        -GaussRational::one(),
        -GaussRational::i(),
    ];
    let mut cands = Vec::new();
    for u in &num_divs {
        let u = gauss_from_pair(u);
        for v in &den_divs {
            let v = gauss_from_pair(v);
            let base = &u * &v.recip();
            for unit in &units {
                cands.push(&base * unit);
            }
        }
    }
    cands.sort_by(|a, b| a.cmp_lex(b));
    cands.dedup();
    cands
}

fn gauss_from_pair(p: &(BigInt, BigInt)) -> GaussRational {
    GaussRational::new(
        BigRational::from_integer(p.0.clone()),
        BigRational::from_integer(p.1.clone()),
    )
}

/// Clears denominators: returns the coefficients of `lcm * f` as Gaussian
/// integers `(re, im)`.
pub(crate) fn scale_to_gaussian_integers(f: &Poly<GaussRational>) -> Vec<(BigInt, BigInt)> {
    let mut lcm = BigInt::one();
    for c in f.coeffs() {
        lcm = lcm.lcm(c.re.denom());
        lcm = lcm.lcm(c.im.denom());
    }
    f.coeffs()
        .iter()
        .map(|c| {
            let re = c.re.numer() * (&lcm / c.re.denom());
            let im = c.im.numer() * (&lcm / c.im.denom());
            (re, im)
        })
        .collect()
}

// ---------------------------------------------------------------------------
// integer factoring (deterministic, budgeted)
// ---------------------------------------------------------------------------

const TRIAL_LIMIT: u64 = 100_000;
const RHO_STEP_BUDGET: u32 = 1 << 18;
const MAX_DIVISORS: usize = 4096;
/// Inputs above this size are not worth factoring for divisor candidates;
/// the numeric stage handles them instead.
const FACTOR_BIT_BUDGET: u64 = 128;

/// Deterministic Miller-Rabin; the fixed witness set is proven exact below
/// 3.3e24 and overwhelming beyond.
fn is_probable_prime(n: &BigUint) -> bool {
    let two = BigUint::from(2u32);
    if n < &two {
        return false;
    }
    for p in [2u32, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let p = BigUint::from(p);
        if n == &p {
            return true;
        }
        if (n % &p).is_zero() {
            return false;
        }
    }
    let n_minus_1 = n - BigUint::one();
    let s = n_minus_1.trailing_zeros().unwrap_or(0);
    let d = &n_minus_1 >> s;
    'witness: for a in [2u32, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = BigUint::from(a).modpow(&d, n);
        if x.is_one() || x == n_minus_1 {
            continue;
        }
        for _ in 1..s {
            x = x.modpow(&two, n);
            if x == n_minus_1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Pollard's rho with fixed parameters; `None` when the step budget runs
/// out.
fn pollard_rho(n: &BigUint) -> Option<BigUint> {
    for c in 1u32..20 {
        let c = BigUint::from(c);
        let mut x = BigUint::from(2u32);
        let mut y = x.clone();
        for _ in 0..RHO_STEP_BUDGET {
            x = (&x * &x + &c) % n;
            y = (&y * &y + &c) % n;
            y = (&y * &y + &c) % n;
            let diff = if x > y { &x - &y } else { &y - &x };
            if diff.is_zero() {
                break;
            }
            let d = diff.gcd(n);
            if !d.is_one() {
                if &d == n {
                    break;
                }
                return Some(d);
            }
        }
    }
    None
}

/// Full factorization within the budget; `None` when a cofactor resists or
/// the input is too large to be worth the attempt.
pub(crate) fn factor_integer(n: &BigUint) -> Option<BTreeMap<BigUint, u32>> {
    let mut out = BTreeMap::new();
    if n.is_zero() || n.bits() > FACTOR_BIT_BUDGET {
        return None;
    }
    let mut rest = n.clone();
    let mut p = 2u64;
    while p <= TRIAL_LIMIT {
        let bp = BigUint::from(p);
        if &bp * &bp > rest {
            break;
        }
        while (&rest % &bp).is_zero() {
            *out.entry(bp.clone()).or_insert(0) += 1;
            rest /= &bp;
        }
        p = if p == 2 { 3 } else { p + 2 };
    }
    let mut stack = vec![rest];
    while let Some(m) = stack.pop() {
        if m.is_one() {
            continue;
        }
        if is_probable_prime(&m) {
            *out.entry(m).or_insert(0) += 1;
            continue;
        }
        let d = pollard_rho(&m)?;
        stack.push(&m / &d);
        stack.push(d);
    }
    Some(out)
}

/// All positive divisors, or `None` past the budget.
pub(crate) fn integer_divisors(n: &BigUint) -> Option<Vec<BigUint>> {
    let factors = factor_integer(n)?;
    let mut divs = vec![BigUint::one()];
    for (p, e) in factors {
        let mut next = Vec::with_capacity(divs.len() * (e as usize + 1));
        for d in &divs {
            let mut cur = d.clone();
            next.push(cur.clone());
            for _ in 0..e {
                cur = &cur * &p;
                next.push(cur.clone());
            }
        }
        divs = next;
        if divs.len() > MAX_DIVISORS {
            return None;
        }
    }
    divs.sort();
    Some(divs)
}

// ---------------------------------------------------------------------------
// Gaussian-integer arithmetic and divisor enumeration
// ---------------------------------------------------------------------------

type GInt = (BigInt, BigInt);

fn gmul(a: &GInt, b: &GInt) -> GInt {
    (&a.0 * &b.0 - &a.1 * &b.1, &a.0 * &b.1 + &a.1 * &b.0)
}

fn gsub(a: &GInt, b: &GInt) -> GInt {
    (&a.0 - &b.0, &a.1 - &b.1)
}

fn gnorm(a: &GInt) -> BigInt {
    &a.0 * &a.0 + &a.1 * &a.1
}

fn gis_zero(a: &GInt) -> bool {
    a.0.is_zero() && a.1.is_zero()
}

/// Rounded division `a/b` (nearest Gaussian integer), the Euclidean step.
fn gdiv_round(a: &GInt, b: &GInt) -> GInt {
    let conj = (b.0.clone(), -b.1.clone());
    let num = gmul(a, &conj);
    let den = gnorm(b);
    (round_div(&num.0, &den), round_div(&num.1, &den))
}

fn round_div(a: &BigInt, b: &BigInt) -> BigInt {
    let (q, r) = a.div_rem(b);
    if &r.abs() * BigInt::from(2) > b.abs() {
        if (r.is_negative()) == (b.is_negative()) {
            q + BigInt::one()
        } else {
            q - BigInt::one()
        }
    } else {
        q
    }
}

/// Exact division in Z[i]; `None` when `b` does not divide `a`.
fn gdiv_exact(a: &GInt, b: &GInt) -> Option<GInt> {
    let conj = (b.0.clone(), -b.1.clone());
    let num = gmul(a, &conj);
    let den = gnorm(b);
    let (q_re, r_re) = num.0.div_rem(&den);
    let (q_im, r_im) = num.1.div_rem(&den);
    if r_re.is_zero() && r_im.is_zero() {
        Some((q_re, q_im))
    } else {
        None
    }
}

fn ggcd(a: &GInt, b: &GInt) -> GInt {
    let mut a = a.clone();
    let mut b = b.clone();
    while !gis_zero(&b) {
        let q = gdiv_round(&a, &b);
        let r = gsub(&a, &gmul(&q, &b));
        a = b;
        b = r;
    }
    a
}

/// A square root of -1 modulo a prime `p = 1 (mod 4)`.
fn sqrt_minus_one(p: &BigUint) -> BigUint {
    let one = BigUint::one();
    let exp_legendre = (p - &one) >> 1;
    let exp_fourth = (p - &one) >> 2;
    let p_minus_1 = p - &one;
    for r in 2u64.. {
        let r = BigUint::from(r);
        if r.modpow(&exp_legendre, p) == p_minus_1 {
            let x = r.modpow(&exp_fourth, p);
            debug_assert_eq!(x.modpow(&BigUint::from(2u32), p), p_minus_1);
            return x;
        }
    }
    unreachable!("a quadratic non-residue exists below any odd prime")
}

/// A Gaussian prime above the rational prime `p` (which must split or
/// ramify: `p = 2` or `p = 1 (mod 4)`).
fn gaussian_prime_above(p: &BigUint) -> GInt {
    if p == &BigUint::from(2u32) {
        return (BigInt::one(), BigInt::one());
    }
    let x = sqrt_minus_one(p);
    ggcd(&(BigInt::from(p.clone()), BigInt::zero()), &(BigInt::from(x), BigInt::one()))
}

/// All divisors of `g` in Z[i] up to units, or `None` past the factoring or
/// count budget. `g` must be nonzero.
fn gaussian_divisors(g: &GInt) -> Option<Vec<GInt>> {
    assert!(!gis_zero(g));
    let norm = gnorm(g).to_biguint().expect("norm is positive");
    let norm_factors = factor_integer(&norm)?;
    // prime powers dividing g: list of (pi, max exponent)
    let mut prime_powers: Vec<(GInt, u32)> = Vec::new();
    for (p, e) in &norm_factors {
        let four = BigUint::from(4u32);
        if p == &BigUint::from(2u32) {
            prime_powers.push(((BigInt::one(), BigInt::one()), *e));
        } else if (p % &four) == BigUint::from(3u32) {
            debug_assert_eq!(e % 2, 0);
            prime_powers.push(((BigInt::from(p.clone()), BigInt::zero()), e / 2));
        } else {
            let pi = gaussian_prime_above(p);
            let pi_conj = (pi.0.clone(), -pi.1.clone());
            // split prime: valuations of pi and its conjugate found by
            // exact trial division
            let mut v = 0u32;
            let mut cur = g.clone();
            while let Some(next) = gdiv_exact(&cur, &pi) {
                cur = next;
                v += 1;
                if v >= *e {
                    break;
                }
            }
            if v > 0 {
                prime_powers.push((pi, v));
            }
            if *e - v > 0 {
                prime_powers.push((pi_conj, e - v));
            }
        }
    }
    let mut divs: Vec<GInt> = vec![(BigInt::one(), BigInt::zero())];
    for (pi, e) in prime_powers {
        let mut next = Vec::with_capacity(divs.len() * (e as usize + 1));
        for d in &divs {
            let mut cur = d.clone();
            next.push(cur.clone());
            for _ in 0..e {
                cur = gmul(&cur, &pi);
                next.push(cur.clone());
            }
        }
        divs = next;
        if divs.len() > MAX_DIVISORS {
            return None;
        }
    }
    Some(divs)
}

// ---------------------------------------------------------------------------
// numeric stage
// ---------------------------------------------------------------------------

/// Simultaneous root iteration on f64 seeds; deterministic initial guesses
/// and iteration order.
fn aberth_f64(coeffs: &[Complex64]) -> Vec<Complex64> {
    let deg = coeffs.len() - 1;
    let lead = coeffs[deg];
    let radius = 1.0
        + coeffs[..deg]
            .iter()
            .map(|c| (c / lead).norm())
            .fold(0.0f64, f64::max);
    let mut z: Vec<Complex64> = (0..deg)
        .map(|k| {
            let theta = 2.0 * std::f64::consts::PI * (k as f64) / (deg as f64) + 0.4;
            Complex64::from_polar(radius, theta)
        })
        .collect();
    let eval = |x: Complex64| {
        let mut p = Complex64::new(0.0, 0.0);
        let mut dp = Complex64::new(0.0, 0.0);
        for c in coeffs.iter().rev() {
            dp = dp * x + p;
            p = p * x + c;
        }
        (p, dp)
    };
    for _ in 0..500 {
        let mut max_step = 0.0f64;
        for k in 0..deg {
            let (p, dp) = eval(z[k]);
            if p.norm() == 0.0 {
                continue;
            }
            let w = if dp.norm() == 0.0 { Complex64::new(1e-12, 1e-12) } else { p / dp };
            let mut s = Complex64::new(0.0, 0.0);
            for j in 0..deg {
                if j != k {
                    let d = z[k] - z[j];
                    if d.norm() > 0.0 {
                        s += 1.0 / d;
                    }
                }
            }
            let denom = 1.0 - w * s;
            let step = if denom.norm() == 0.0 { w } else { w / denom };
            z[k] -= step;
            let rel = step.norm() / (1.0 + z[k].norm());
            max_step = max_step.max(rel);
        }
        if max_step < 1e-14 {
            break;
        }
    }
    z
}

fn gauss_from_f64(x: Complex64) -> Option<GaussRational> {
    let re = BigRational::from_float(x.re)?;
    let im = BigRational::from_float(x.im)?;
    Some(GaussRational::new(re, im))
}

/// Certified bound on the distance from `x` to the nearest root of `f`:
/// `deg * |f(x)| / |f'(x)|`. `None` when the derivative bound collapses.

/// Localizes all roots of a square-free polynomial that has no
/// Gaussian-rational roots left, as pairwise-disjoint certified disks.
fn numeric_roots(f: &Poly<GaussRational>, precision_bits: u32) -> Result<Vec<Ball>, RootError> {
    let deg = f.degree().unwrap();
    let coeffs: Vec<Complex64> = f.coeffs().iter().map(|c| c.to_complex_f64()).collect();
    if coeffs.iter().any(|c| !c.re.is_finite() || !c.im.is_finite()) {
        return Err(RootError::NumericFailure(
            "coefficients exceed the floating-point range".to_string(),
        ));
    }
    let df = f.derivative();
    let working_bits = precision_bits + 64;
    let seeds = aberth_f64(&coeffs);
    let mut balls = Vec::with_capacity(deg);
    for seed in seeds {
        let mut x = gauss_from_f64(seed).ok_or_else(|| {
            RootError::NumericFailure("non-finite seed from the f64 stage".to_string())
        })?;
        let mut best: Option<Ball> = None;
        // Certification is far more expensive than a Newton step, so it is
        // only attempted once the step size suggests the iterate could pass:
        // |step| below 2^gate_slack_bits times the acceptance radius.
        let gate_slack =
            BigRational::from_integer(BigInt::one() << (2 * precision_bits.saturating_sub(20)));
        for _ in 0..80 {
            let fx = f.eval(&x);
            let dfx = df.eval(&x);
            if dfx.is_zero() {
                break;
            }
            let step = fx.clone() / dfx.clone();
            let scale_sqr = BigRational::one().max(x.norm_sqr());
            if step.norm_sqr() * &gate_slack <= scale_sqr {
                let low = sqrt_lower(&dfx.norm_sqr());
                if low.is_positive() {
                    let r = BigRational::from_integer(deg.into()) * sqrt_upper(&fx.norm_sqr())
                        / low;
                    let scale = BigRational::one().max(sqrt_upper(&x.norm_sqr()));
                    let target =
                        scale / BigRational::from_integer(BigInt::one() << precision_bits);
                    if best.as_ref().is_none_or(|b| r < b.radius) {
                        best = Some(Ball { center: x.clone(), radius: r.clone() });
                    }
                    if r <= target {
                        break;
                    }
                }
            }
            let next = &x - &step;
            x = GaussRational::new(
                round_dyadic(&next.re, working_bits),
                round_dyadic(&next.im, working_bits),
            );
        }
        match best {
            Some(b) => {
                let scale = BigRational::one().max(b.abs_upper());
                let target = scale / BigRational::from_integer(BigInt::one() << precision_bits);
                if b.radius > target {
                    return Err(RootError::NumericFailure(format!(
                        "could not certify a root near {} to the requested precision",
                        b.center
                    )));
                }
                balls.push(b);
            }
            None => {
                return Err(RootError::NumericFailure(
                    "Newton polishing failed to certify a root".to_string(),
                ))
            }
        }
    }
    for i in 0..balls.len() {
        for j in i + 1..balls.len() {
            let dist_sqr = (&balls[i].center - &balls[j].center).norm_sqr();
            let rsum = &balls[i].radius + &balls[j].radius;
            if dist_sqr <= &rsum * &rsum {
                return Err(RootError::NumericFailure(
                    "certified disks are not pairwise disjoint".to_string(),
                ));
            }
        }
    }
    balls.sort_by(|a, b| a.center.cmp_lex(&b.center));
    Ok(balls)
}

/// Nearest integer to a rational, with the absolute snap distance.
pub fn nearest_integer(x: &BigRational) -> (BigInt, BigRational) {
    let q = x.numer().div_rem(x.denom()).0;
    let candidates = [
        q.clone() - BigInt::one(),
        q.clone(),
        q + BigInt::one(),
    ];
    let mut best = candidates[0].clone();
    let mut best_dist: Option<BigRational> = None;
    for c in candidates {
        let dist = (x - BigRational::from_integer(c.clone())).abs();
        if best_dist.as_ref().is_none_or(|d| &dist < d) {
            best_dist = Some(dist);
            best = c;
        }
    }
    (best, best_dist.unwrap())
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::ToPrimitive;

    fn rat(p: i64, q: i64) -> BigRational {
        BigRational::new(p.into(), q.into())
    }

    fn rpoly(coeffs: &[i64]) -> Poly<GaussRational> {
        Poly::from_coeffs(coeffs.iter().map(|&c| GaussRational::from_int(c)).collect())
    }

    #[test]
    fn linear_root_is_exact() {
        // 2q + 120
        let roots = find_roots(&rpoly(&[120, 2]), 256).unwrap();
        assert_eq!(roots.len(), 1);
        assert_eq!(roots[0].exact_value(), Some(&GaussRational::from_int(-60)));
        assert_eq!(roots[0].multiplicity, 1);
    }

    #[test]
    fn quartic_with_integer_roots() {
        // 6q^4 - 30q^2 + 24 = 6(q^2-1)(q^2-4)
        let roots = find_roots(&rpoly(&[24, 0, -30, 0, 6]), 256).unwrap();
        let values: Vec<i64> = roots
            .iter()
            .map(|r| r.exact_value().unwrap().re.to_integer().to_i64().unwrap())
            .collect();
        assert_eq!(values, vec![-2, -1, 1, 2]);
        assert!(roots.iter().all(|r| r.multiplicity == 1));
    }

    #[test]
    fn repeated_root_multiplicity() {
        // (q-1)^2
        let roots = find_roots(&rpoly(&[1, -2, 1]), 256).unwrap();
        assert_eq!(roots.len(), 1);
        assert_eq!(roots[0].exact_value(), Some(&GaussRational::from_int(1)));
        assert_eq!(roots[0].multiplicity, 2);
    }

    #[test]
    fn gaussian_integer_roots() {
        // q^2 + 1 = (q-i)(q+i)
        let roots = find_roots(&rpoly(&[1, 0, 1]), 256).unwrap();
        assert_eq!(roots.len(), 2);
        let mut vals: Vec<GaussRational> =
            roots.iter().map(|r| r.exact_value().unwrap().clone()).collect();
        vals.sort_by(|a, b| a.cmp_lex(b));
        assert_eq!(vals, vec![GaussRational::from_int_pair(0, -1), GaussRational::i()]);
    }

    #[test]
    fn rational_and_zero_roots() {
        // q(3q - 2)
        let p = Poly::from_coeffs(vec![
            GaussRational::zero(),
            GaussRational::from_int(-2),
            GaussRational::from_int(3),
        ]);
        let roots = find_roots(&p, 256).unwrap();
        let vals: Vec<GaussRational> =
            roots.iter().map(|r| r.exact_value().unwrap().clone()).collect();
        assert!(vals.contains(&GaussRational::zero()));
        assert!(vals.contains(&GaussRational::from_rational(rat(2, 3))));
    }

    #[test]
    fn irrational_roots_get_certified_disks() {
        // q^2 - 2
        let roots = find_roots(&rpoly(&[-2, 0, 1]), 128).unwrap();
        assert_eq!(roots.len(), 2);
        for r in &roots {
            assert!(!r.is_exact());
            if let RootValue::Certified(b) = &r.value {
                // the disk must contain the true root: check |center^2 - 2|
                // is small compared to the certified radius times |f'|
                assert!(b.radius < rat(1, 1 << 30) * rat(1, 1 << 30));
                let resid = (&b.center * &b.center - GaussRational::from_int(2)).norm_sqr();
                let r2 = &b.radius * &b.radius;
                // |f(c)| <= radius * sup|f'| <= radius * 4 on the disk
                assert!(resid <= r2 * rat(16, 1));
            }
        }
        // centers near +-sqrt(2)
        let c0 = roots[0].center().to_complex_f64();
        let c1 = roots[1].center().to_complex_f64();
        assert!((c0.re + std::f64::consts::SQRT_2).abs() < 1e-12);
        assert!((c1.re - std::f64::consts::SQRT_2).abs() < 1e-12);
    }

    #[test]
    fn cubic_with_complex_pair() {
        // q^3 - 2: one real root, two complex
        let roots = find_roots(&rpoly(&[-2, 0, 0, 1]), 128).unwrap();
        assert_eq!(roots.len(), 3);
        assert!(roots.iter().all(|r| !r.is_exact()));
        let real_count = roots
            .iter()
            .filter(|r| r.center().to_complex_f64().im.abs() < 1e-10)
            .count();
        assert_eq!(real_count, 1);
    }

    #[test]
    fn mixed_exact_and_numeric() {
        // (q - 1)(q^2 - 3)
        let p = &rpoly(&[-1, 1]) * &rpoly(&[-3, 0, 1]);
        let roots = find_roots(&p, 128).unwrap();
        assert_eq!(roots.len(), 3);
        // exact roots sort before certified ones
        assert!(roots[0].is_exact());
        assert_eq!(roots[0].exact_value(), Some(&GaussRational::from_int(1)));
        assert!(!roots[1].is_exact() && !roots[2].is_exact());
    }

    #[test]
    fn prime_testing_and_rho() {
        assert!(is_probable_prime(&BigUint::from(2u32)));
        assert!(is_probable_prime(&BigUint::from(104729u32)));
        assert!(!is_probable_prime(&BigUint::from(104730u32)));
        assert!(is_probable_prime(&BigUint::from(1000000007u64)));
        let f = factor_integer(&BigUint::from(8051u32)).unwrap();
        let expect: BTreeMap<BigUint, u32> =
            [(BigUint::from(83u32), 1), (BigUint::from(97u32), 1)].into();
        assert_eq!(f, expect);
    }

    #[test]
    fn divisor_enumeration() {
        let divs = integer_divisors(&BigUint::from(12u32)).unwrap();
        let expect: Vec<BigUint> =
            [1u32, 2, 3, 4, 6, 12].iter().map(|&n| BigUint::from(n)).collect();
        assert_eq!(divs, expect);

        // divisors of 5 in Z[i]: 1, 2+i, 2-i, 5 (up to units)
        let g = (BigInt::from(5), BigInt::zero());
        let divs = gaussian_divisors(&g).unwrap();
        assert_eq!(divs.len(), 4);
        let norms: Vec<i64> =
            divs.iter().map(|d| gnorm(d).to_i64().unwrap()).collect();
        let mut sorted = norms.clone();
        sorted.sort();
        assert_eq!(sorted, vec![1, 5, 5, 25]);
    }

    #[test]
    fn gaussian_gcd_and_division() {
        let a = (BigInt::from(5), BigInt::zero());
        let pi = (BigInt::from(2), BigInt::from(1));
        let q = gdiv_exact(&a, &pi).unwrap();
        assert_eq!(gmul(&q, &pi), a);
        assert!(gdiv_exact(&pi, &a).is_none());
        let g = ggcd(&a, &(BigInt::from(3), BigInt::from(1)));
        // gcd(5, 3+i): norm(3+i)=10, shares the factor 2+i (norm 5)
        assert_eq!(gnorm(&g), BigInt::from(5));
    }

    #[test]
    fn ball_arithmetic() {
        let b = Ball { center: GaussRational::from_int(3), radius: rat(1, 8) };
        assert!(!b.contains_zero());
        assert!(b.contains(&GaussRational::from_rational(rat(25, 8))));
        assert!(!b.contains(&GaussRational::from_int(4)));
        let inv = b.recip().unwrap();
        // 1/3 must lie inside the reciprocal disk
        assert!(inv.contains(&GaussRational::from_rational(rat(1, 3))));
        let straddling = Ball { center: GaussRational::from_rational(rat(1, 10)), radius: rat(1, 2) };
        assert!(straddling.recip().is_none());

        let p = rpoly(&[-2, 0, 1]);
        let eb = eval_ball(&p, &b);
        // contains p(3) = 7 and the whole image of the disk
        assert!(eb.contains(&GaussRational::from_int(7)));
        assert!(eb.contains(&p.eval(&GaussRational::from_rational(rat(25, 8)))));
    }

    #[test]
    fn ball_evaluation_stays_conservative_inside_the_unit_disk() {
        // 16x^2 - 3 vanishes at sqrt(3)/4 ~ 0.43301270, which lies inside
        // the disk around 0.433013 of radius 3e-7 but near its edge; the
        // evaluated disk must still contain zero. A radius bound that uses
        // reach^i instead of reach^(i-1) undershoots here because the reach
        // is below one.
        let p = rpoly(&[-3, 0, 16]);
        let b = Ball {
            center: GaussRational::from_rational(rat(433_013, 1_000_000)),
            radius: rat(3, 10_000_000),
        };
        let eb = eval_ball(&p, &b);
        assert!(eb.contains_zero());
        // and it must cover the image of interior points
        for num in [4_330_128i64, 4_330_129, 4_330_131] {
            let z = GaussRational::from_rational(rat(num, 10_000_000));
            assert!(b.contains(&z));
            assert!(eb.contains(&p.eval(&z)));
        }
    }

    #[test]
    fn integer_snapping() {
        let (k, d) = nearest_integer(&rat(7, 2));
        assert!(k == BigInt::from(3) || k == BigInt::from(4));
        assert_eq!(d, rat(1, 2));
        let (k, d) = nearest_integer(&rat(-13, 3));
        assert_eq!(k, BigInt::from(-4));
        assert_eq!(d, rat(1, 3));
        let (k, d) = nearest_integer(&rat(20, 1));
        assert_eq!(k, BigInt::from(20));
        assert!(d.is_zero());
    }
}
