//! The battery of necessary conditions for pole-like single-valuedness,
//! aggregated into a deterministic verdict.
//!
//! Checks run in a fixed order: Bureau number, highest-derivative
//! membership of the dominant terms, survival of the top-degree
//! coefficient, per-family resonance structure, the residue identity, the
//! resonance-sum identities, compatibility at positive resonances, and a
//! final negative-resonance consistency diagnostic. The first hard failure
//! short-circuits the remaining checks; every executed check is retained.
//!
//! A passing battery establishes necessary conditions only — equations
//! exist that clear every check here yet still branch around poles of
//! atypical order.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::gauss::GaussRational;
use crate::ode::{integral_bureau, EvaluatedODE, OdeError, PolynomialODE};
use crate::painleve::{
    determining_polynomial, expand_laurent, pole_families, DeterminingPoly, ExpandError,
    PoleFamily, DEFAULT_DEPTH_CAP, DEFAULT_PRECISION_BITS,
};
use crate::roots::{Ball, RootQ};

pub const CHECK_BUREAU: &str = "check_bureau";
pub const CHECK_LEADING_DERIVATIVE: &str = "check_leading_derivative";
pub const CHECK_VANISH: &str = "check_vanish";
pub const CHECK_FAMILIES: &str = "check_families";
pub const CHECK_RESIDUE_IDENTITY: &str = "check_residue_identity";
pub const CHECK_SUM_IDENTITIES: &str = "check_sum_identities";
pub const CHECK_COMPATIBILITY: &str = "check_compatibility";
pub const CHECK_NEGATIVE_RESONANCE_THEOREM: &str = "check_negative_resonance_theorem";

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Outcome {
    Pass,
    Fail,
    Indeterminate,
}

impl Outcome {
    pub fn as_str(self) -> &'static str {
        match self {
            Outcome::Pass => "pass",
            Outcome::Fail => "fail",
            Outcome::Indeterminate => "indeterminate",
        }
    }
}

impl fmt::Display for Outcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// One executed check: its identifier, outcome, and a human-readable
/// account citing the exact values involved.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CheckResult {
    pub check_id: &'static str,
    pub outcome: Outcome,
    pub detail: String,
    /// Set on per-family checks only.
    pub family_index: Option<usize>,
}

impl CheckResult {
    fn global(check_id: &'static str, outcome: Outcome, detail: String) -> Self {
        CheckResult { check_id, outcome, detail, family_index: None }
    }

    fn for_family(check_id: &'static str, outcome: Outcome, detail: String, k: usize) -> Self {
        CheckResult { check_id, outcome, detail, family_index: Some(k) }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Verdict {
    FailsPainleve,
    PassesNecessary,
    Indeterminate,
}

impl Verdict {
    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::FailsPainleve => "FailsPainleve",
            Verdict::PassesNecessary => "PassesNecessary",
            Verdict::Indeterminate => "Indeterminate",
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

fn factorial_big(k: u64) -> BigInt {
    let mut acc = BigInt::from(1);
    for j in 2..=k {
        acc *= BigInt::from(j);
    }
    acc
}

fn fmt_ints(list: &[BigInt]) -> String {
    let parts: Vec<String> = list.iter().map(|k| k.to_string()).collect();
    format!("[{}]", parts.join(", "))
}

fn fmt_root(q: &RootQ) -> String {
    match q.exact_value() {
        Some(v) => v.to_string(),
        None => {
            let c = q.center().to_complex_f64();
            format!("~{:.6}{:+.6}i", c.re, c.im)
        }
    }
}

fn fmt_ball(b: &Ball) -> String {
    if b.is_exact() {
        b.center.to_string()
    } else {
        let c = b.center.to_complex_f64();
        format!("~{:.6}{:+.6}i (radius <= {:.3e})", c.re, c.im, b.radius.to_f64().unwrap_or(0.0))
    }
}

/// The Bureau number must be exactly 1 or 2; any other rational disqualifies
/// the equation from having poles of a consistent typical order.
pub fn check_bureau(eq: &EvaluatedODE) -> CheckResult {
    let b = &eq.leading.bureau;
    match integral_bureau(b) {
        Some(s @ (1 | 2)) => CheckResult::global(
            CHECK_BUREAU,
            Outcome::Pass,
            format!("Bureau number {s} is admissible"),
        ),
        _ => CheckResult::global(
            CHECK_BUREAU,
            Outcome::Fail,
            format!("Bureau number {b} is not 1 or 2"),
        ),
    }
}

/// Some dominant term must involve the (n−1)-st or (n−2)-nd derivative,
/// with `w` itself filling those slots for first- and second-order
/// equations.
pub fn check_leading_derivative(eq: &EvaluatedODE) -> CheckResult {
    let n = eq.order;
    let hit = eq.leading.dominant.iter().any(|chi| {
        let e = chi.exps();
        e[n - 1] > 0 || (n >= 2 && e[n - 2] > 0)
    });
    if hit {
        CheckResult::global(
            CHECK_LEADING_DERIVATIVE,
            Outcome::Pass,
            format!("a dominant term involves derivative order {} or {}", n - 1, n.saturating_sub(2)),
        )
    } else {
        CheckResult::global(
            CHECK_LEADING_DERIVATIVE,
            Outcome::Fail,
            format!("no dominant term involves derivative order {} or {}", n - 1, n.saturating_sub(2)),
        )
    }
}

/// The reduced determining polynomial must reach its structural maximum
/// degree d−1; a vanished top coefficient leaves too few pole families.
pub fn check_vanish(eq: &EvaluatedODE, h: &DeterminingPoly) -> CheckResult {
    let d = eq.leading.top_degree as usize;
    let m = h.m();
    debug_assert!(m <= d - 1);
    if m == d - 1 {
        CheckResult::global(CHECK_VANISH, Outcome::Pass, format!("m = {m} = d-1 with d = {d}"))
    } else {
        CheckResult::global(
            CHECK_VANISH,
            Outcome::Fail,
            format!("m = {m} < d-1 = {}: the top-degree coefficient vanishes", d - 1),
        )
    }
}

/// Per-family structure: the leading coefficient must be a simple root and
/// the resonances distinct integers containing −1 and excluding 0. For
/// numerically localized families only certified facts decide; anything
/// uncertified leaves the family indeterminate.
pub fn check_families(families: &[PoleFamily]) -> Vec<CheckResult> {
    families
        .iter()
        .enumerate()
        .map(|(k, fam)| {
            let q = fmt_root(&fam.q);
            let set = &fam.resonances;
            if fam.product.is_none() {
                return CheckResult::for_family(
                    CHECK_FAMILIES,
                    Outcome::Fail,
                    format!("q = {q} is a multiple root of the determining polynomial"),
                    k,
                );
            }
            if set.has_repeats() {
                return CheckResult::for_family(
                    CHECK_FAMILIES,
                    Outcome::Fail,
                    format!("repeated resonance in {}", fmt_ints(&set.integers)),
                    k,
                );
            }
            if set.integers.iter().any(|r| r.is_zero()) {
                return CheckResult::for_family(
                    CHECK_FAMILIES,
                    Outcome::Fail,
                    format!("resonance 0 present in {}", fmt_ints(&set.integers)),
                    k,
                );
            }
            if fam.is_exact() && !set.others.is_empty() {
                return CheckResult::for_family(
                    CHECK_FAMILIES,
                    Outcome::Fail,
                    format!("non-integer resonance {}", fmt_root(&set.others[0])),
                    k,
                );
            }
            if set.all_integer() {
                if set.integers.iter().any(|r| *r == BigInt::from(-1)) {
                    CheckResult::for_family(
                        CHECK_FAMILIES,
                        Outcome::Pass,
                        format!(
                            "q = {q}: resonances {} are distinct integers with -1, without 0",
                            fmt_ints(&set.integers)
                        ),
                        k,
                    )
                } else {
                    CheckResult::for_family(
                        CHECK_FAMILIES,
                        Outcome::Fail,
                        format!("-1 missing from resonances {}", fmt_ints(&set.integers)),
                        k,
                    )
                }
            } else {
                let pending = set.others.len() + set.unresolved;
                CheckResult::for_family(
                    CHECK_FAMILIES,
                    Outcome::Indeterminate,
                    format!(
                        "q = {q}: {} certified integer resonances, {pending} uncertified",
                        set.integers.len()
                    ),
                    k,
                )
            }
        })
        .collect()
}

/// The reciprocals of the resonance products over all families must sum to
/// −1/(n+ℬ−1)!. Exact families compare exactly; certified-numeric families
/// compare by disk containment.
pub fn check_residue_identity(families: &[PoleFamily], n: usize, bureau: u32) -> CheckResult {
    let target = GaussRational::new(
        BigRational::new(BigInt::from(-1), factorial_big((n as u64) + (bureau as u64) - 1)),
        BigRational::zero(),
    );
    let mut products = Vec::with_capacity(families.len());
    for fam in families {
        match &fam.product {
            Some(b) => products.push(b),
            None => {
                return CheckResult::global(
                    CHECK_RESIDUE_IDENTITY,
                    Outcome::Indeterminate,
                    "a vanishing resonance product leaves the identity undefined".to_string(),
                )
            }
        }
    }
    let all_exact = products.iter().all(|b| b.is_exact());
    if all_exact {
        let mut sum = GaussRational::from_int(0);
        for b in &products {
            sum = &sum + &b.center.recip();
        }
        if sum == target {
            CheckResult::global(
                CHECK_RESIDUE_IDENTITY,
                Outcome::Pass,
                format!("sum of reciprocal products is {sum}, matching -1/{}!", n + bureau as usize - 1),
            )
        } else {
            CheckResult::global(
                CHECK_RESIDUE_IDENTITY,
                Outcome::Fail,
                format!("sum of reciprocal products is {sum}, expected {target}"),
            )
        }
    } else {
        let mut acc = Ball::exact(GaussRational::from_int(0));
        for b in &products {
            match b.recip() {
                Some(r) => acc = acc.add(&r),
                None => {
                    return CheckResult::global(
                        CHECK_RESIDUE_IDENTITY,
                        Outcome::Indeterminate,
                        format!("certified disk {} for a product may contain zero", fmt_ball(b)),
                    )
                }
            }
        }
        if acc.contains(&target) {
            CheckResult::global(
                CHECK_RESIDUE_IDENTITY,
                Outcome::Pass,
                format!(
                    "sum of reciprocal products {} contains -1/{}! at certified precision",
                    fmt_ball(&acc),
                    n + bureau as usize - 1
                ),
            )
        } else {
            CheckResult::global(
                CHECK_RESIDUE_IDENTITY,
                Outcome::Fail,
                format!("sum of reciprocal products {} excludes {target}", fmt_ball(&acc)),
            )
        }
    }
}

/// First and second power sums of a family's resonances, exact when either
/// the resonance polynomial or the full certified-integer root list is
/// exact knowledge.
fn family_power_sums(fam: &PoleFamily, n: usize) -> Option<(GaussRational, GaussRational)> {
    if fam.res_poly.exact {
        let p = &fam.res_poly.coeffs;
        let e1 = -p.coeff(n - 1);
        let e2 = if n >= 2 { p.coeff(n - 2) } else { GaussRational::from_int(0) };
        let sum_sq = &(&e1 * &e1) - &(&GaussRational::from_int(2) * &e2);
        Some((e1, sum_sq))
    } else if fam.resonances.all_integer() {
        let mut s1 = BigInt::ZERO;
        let mut s2 = BigInt::ZERO;
        for r in &fam.resonances.integers {
            s1 += r;
            s2 += r * r;
        }
        Some((
            GaussRational::from_rational(BigRational::from_integer(s1)),
            GaussRational::from_rational(BigRational::from_integer(s2)),
        ))
    } else {
        None
    }
}

/// Sum rules tying each family's resonances to the pattern coefficients:
/// for ℬ=1 the first sum is n + n(n−1)/2 + A·q per family (A doubled when
/// the two pattern slots coincide at n=1); for ℬ=2 the first sum is
/// q-independent and the second sum satisfies Σr² = Σ(2+k)² + 2Bq with Bq
/// required to be a positive real (B doubled at n=2). The doubled factor
/// on the second moment is calibrated against the series oracle.
pub fn check_sum_identities(families: &[PoleFamily], eq: &EvaluatedODE) -> CheckResult {
    let n = eq.order;
    let s = match integral_bureau(&eq.leading.bureau) {
        Some(s @ (1 | 2)) => s,
        _ => {
            return CheckResult::global(
                CHECK_SUM_IDENTITIES,
                Outcome::Indeterminate,
                "sum rules require Bureau number 1 or 2".to_string(),
            )
        }
    };
    let two = GaussRational::from_int(2);
    let pattern_doubled = |coincide: bool| if coincide { two.clone() } else { GaussRational::from_int(1) };
    let mut notes = Vec::with_capacity(families.len());
    let mut pending = Vec::new();
    for (k, fam) in families.iter().enumerate() {
        let Some((sum, sum_sq)) = family_power_sums(fam, n) else {
            pending.push(k);
            continue;
        };
        if s == 1 {
            let base = GaussRational::from_int((n + n * (n - 1) / 2) as i64);
            let a_eff = &eq.leading.coeff_a * &pattern_doubled(n == 1);
            if a_eff.is_zero() {
                if sum != base {
                    return CheckResult::global(
                        CHECK_SUM_IDENTITIES,
                        Outcome::Fail,
                        format!("family {k}: resonance sum {sum} differs from {base} with A = 0"),
                    );
                }
                notes.push(format!("family {k}: sum {sum} = {base}"));
            } else {
                let qhat = &(&sum - &base) * &a_eff.recip();
                match fam.q.exact_value() {
                    Some(q) => {
                        if &qhat != q {
                            return CheckResult::global(
                                CHECK_SUM_IDENTITIES,
                                Outcome::Fail,
                                format!(
                                    "family {k}: resonance sum {sum} needs A*q = {}, but A*q = {}",
                                    &sum - &base,
                                    &a_eff * q
                                ),
                            );
                        }
                        notes.push(format!("family {k}: sum {sum} = {base} + A*q"));
                    }
                    None => {
                        let crate::roots::RootValue::Certified(ball) = &fam.q.value else {
                            unreachable!()
                        };
                        if !ball.contains(&qhat) {
                            return CheckResult::global(
                                CHECK_SUM_IDENTITIES,
                                Outcome::Fail,
                                format!(
                                    "family {k}: resonance sum {sum} requires q = {qhat}, outside the certified disk {}",
                                    fmt_ball(ball)
                                ),
                            );
                        }
                        notes.push(format!("family {k}: sum {sum} consistent within the certified disk"));
                    }
                }
            }
        } else {
            let base = GaussRational::from_int((2 * n + n * (n - 1) / 2) as i64);
            if sum != base {
                return CheckResult::global(
                    CHECK_SUM_IDENTITIES,
                    Outcome::Fail,
                    format!("family {k}: resonance sum {sum} differs from the required {base}"),
                );
            }
            let base_sq = GaussRational::from_int((0..n as i64).map(|j| (2 + j) * (2 + j)).sum());
            let b_eff = &eq.leading.coeff_b * &pattern_doubled(n == 2);
            let bq = &(&sum_sq - &base_sq) * &two.recip();
            if b_eff.is_zero() {
                if !bq.is_zero() {
                    return CheckResult::global(
                        CHECK_SUM_IDENTITIES,
                        Outcome::Fail,
                        format!("family {k}: second moment {sum_sq} differs from {base_sq} with B = 0"),
                    );
                }
                notes.push(format!("family {k}: sum {sum}, second moment {sum_sq}"));
            } else {
                let qhat = &bq * &b_eff.recip();
                match fam.q.exact_value() {
                    Some(q) => {
                        if &qhat != q {
                            return CheckResult::global(
                                CHECK_SUM_IDENTITIES,
                                Outcome::Fail,
                                format!(
                                    "family {k}: second moment {sum_sq} needs B*q = {bq}, but B*q = {}",
                                    &b_eff * q
                                ),
                            );
                        }
                    }
                    None => {
                        let crate::roots::RootValue::Certified(ball) = &fam.q.value else {
                            unreachable!()
                        };
                        if !ball.contains(&qhat) {
                            return CheckResult::global(
                                CHECK_SUM_IDENTITIES,
                                Outcome::Fail,
                                format!(
                                    "family {k}: second moment {sum_sq} requires q = {qhat}, outside the certified disk {}",
                                    fmt_ball(ball)
                                ),
                            );
                        }
                    }
                }
                if !(bq.is_real() && bq.re.is_positive()) {
                    return CheckResult::global(
                        CHECK_SUM_IDENTITIES,
                        Outcome::Fail,
                        format!("family {k}: B*q = {bq} is not a positive real number"),
                    );
                }
                notes.push(format!(
                    "family {k}: sum {sum}, second moment {sum_sq} = {base_sq} + 2*{bq} with B*q > 0"
                ));
            }
        }
    }
    let suffix = if s == 2 {
        "; second moment uses the doubled pattern coefficient calibrated against the series oracle"
    } else {
        ""
    };
    if !pending.is_empty() {
        let ks: Vec<String> = pending.iter().map(|k| k.to_string()).collect();
        return CheckResult::global(
            CHECK_SUM_IDENTITIES,
            Outcome::Indeterminate,
            format!("families [{}] lack exact resonance data{suffix}", ks.join(", ")),
        );
    }
    CheckResult::global(CHECK_SUM_IDENTITIES, Outcome::Pass, format!("{}{suffix}", notes.join("; ")))
}

/// Runs the recurrence through each family's largest positive resonance
/// with zero chosen for every free coefficient; the obstruction must vanish
/// at every resonance index or logarithms enter the expansion.
pub fn check_compatibility(
    eq: &EvaluatedODE,
    families: &[PoleFamily],
    depth_cap: usize,
) -> Vec<CheckResult> {
    families
        .iter()
        .enumerate()
        .map(|(k, fam)| {
            if !fam.is_exact() {
                return CheckResult::for_family(
                    CHECK_COMPATIBILITY,
                    Outcome::Indeterminate,
                    "leading coefficient only numerically localized; the exact recursion is unavailable"
                        .to_string(),
                    k,
                );
            }
            if !fam.resonances.all_integer() {
                return CheckResult::for_family(
                    CHECK_COMPATIBILITY,
                    Outcome::Indeterminate,
                    "non-integer resonances leave no recurrence to verify".to_string(),
                    k,
                );
            }
            let positive = fam.resonances.positives();
            let Some(&jmax) = positive.iter().max() else {
                return CheckResult::for_family(
                    CHECK_COMPATIBILITY,
                    Outcome::Pass,
                    "no positive resonances, hence no compatibility conditions".to_string(),
                    k,
                );
            };
            if jmax as usize > depth_cap {
                return CheckResult::for_family(
                    CHECK_COMPATIBILITY,
                    Outcome::Indeterminate,
                    format!("largest resonance {jmax} exceeds the recursion depth cap {depth_cap}"),
                    k,
                );
            }
            let free: BTreeMap<i64, GaussRational> =
                positive.iter().map(|&j| (j, GaussRational::from_int(0))).collect();
            match expand_laurent(eq, fam, jmax as usize, &free, depth_cap) {
                Ok(_) => {
                    let js: Vec<String> = positive.iter().map(|j| j.to_string()).collect();
                    CheckResult::for_family(
                        CHECK_COMPATIBILITY,
                        Outcome::Pass,
                        format!("obstructions vanish at resonances [{}]", js.join(", ")),
                        k,
                    )
                }
                Err(ExpandError::CompatibilityFailure { index, obstruction }) => {
                    CheckResult::for_family(
                        CHECK_COMPATIBILITY,
                        Outcome::Fail,
                        format!("nonzero obstruction {obstruction} at resonance {index}"),
                        k,
                    )
                }
                Err(e) => CheckResult::for_family(
                    CHECK_COMPATIBILITY,
                    Outcome::Indeterminate,
                    e.to_string(),
                    k,
                ),
            }
        })
        .collect()
}

/// Consistency diagnostic for equations of order above 3 with leading
/// degree above 2 that cleared every other check: some family must carry a
/// negative resonance besides −1. A failure is reported as an
/// inconsistency rather than a verdict change, since it signals either a
/// defect in this implementation or a genuine counterexample — both worth
/// surfacing loudly.
pub fn check_negative_resonance_theorem(families: &[PoleFamily], d: u32, n: usize) -> CheckResult {
    debug_assert!(d > 2 && n > 3);
    let minus_one = BigInt::from(-1);
    let witness = families.iter().enumerate().find_map(|(k, fam)| {
        fam.resonances.integers.iter().find(|r| **r < minus_one).map(|r| (k, r.clone()))
    });
    match witness {
        Some((k, r)) => CheckResult::global(
            CHECK_NEGATIVE_RESONANCE_THEOREM,
            Outcome::Pass,
            format!("family {k} carries the nontrivial negative resonance {r}"),
        ),
        None => CheckResult::global(
            CHECK_NEGATIVE_RESONANCE_THEOREM,
            Outcome::Fail,
            format!(
                "InconsistencyWithTheorem: every check passed with d = {d} > 2 and n = {n} > 3, \
                 yet no family carries a negative resonance besides -1"
            ),
        ),
    }
}

/// Knobs for a full analysis: the base point (auto-chosen when absent),
/// the certification precision for numeric roots, and the recursion depth
/// cap for compatibility verification.
#[derive(Clone, Debug)]
pub struct AnalysisOptions {
    pub z0: Option<GaussRational>,
    pub precision_bits: u32,
    pub depth_cap: usize,
}

impl Default for AnalysisOptions {
    fn default() -> Self {
        AnalysisOptions {
            z0: None,
            precision_bits: DEFAULT_PRECISION_BITS,
            depth_cap: DEFAULT_DEPTH_CAP,
        }
    }
}

/// Everything a report needs: structural data, the pole families, every
/// executed check in order, and the aggregated verdict.
#[derive(Clone, Debug)]
pub struct Analysis {
    pub order: usize,
    pub bureau: BigRational,
    pub degree_d: u32,
    /// Number of pole families (None when the Bureau number already fails).
    pub m: Option<usize>,
    pub z0: GaussRational,
    pub families: Vec<PoleFamily>,
    pub checks: Vec<CheckResult>,
    pub verdict: Verdict,
}

fn verdict_from(checks: &[CheckResult]) -> Verdict {
    let hard_fail = checks
        .iter()
        .any(|c| c.outcome == Outcome::Fail && c.check_id != CHECK_NEGATIVE_RESONANCE_THEOREM);
    if hard_fail {
        Verdict::FailsPainleve
    } else if checks.iter().any(|c| c.outcome == Outcome::Indeterminate) {
        Verdict::Indeterminate
    } else {
        Verdict::PassesNecessary
    }
}

/// Runs the whole battery in order, short-circuiting on the first hard
/// failure. Only input errors propagate; numeric limitations surface as
/// indeterminate checks and an `Indeterminate` verdict.
pub fn full_verdict(ode: &PolynomialODE, options: &AnalysisOptions) -> Result<Analysis, OdeError> {
    let z0 = match &options.z0 {
        Some(z) => z.clone(),
        None => ode.choose_base_point()?,
    };
    let eq = ode.evaluate_at(&z0)?;
    let n = eq.order;
    let degree_d = eq.leading.top_degree;
    let bureau = eq.leading.bureau.clone();
    let mut checks = Vec::new();

    let assemble = |checks: Vec<CheckResult>, m: Option<usize>, families: Vec<PoleFamily>| {
        let verdict = verdict_from(&checks);
        Analysis { order: n, bureau: bureau.clone(), degree_d, m, z0: z0.clone(), families, checks, verdict }
    };

    checks.push(check_bureau(&eq));
    if checks.last().unwrap().outcome == Outcome::Fail {
        return Ok(assemble(checks, None, Vec::new()));
    }
    checks.push(check_leading_derivative(&eq));
    if checks.last().unwrap().outcome == Outcome::Fail {
        return Ok(assemble(checks, None, Vec::new()));
    }
    let h = determining_polynomial(&eq);
    let m = h.m();
    checks.push(check_vanish(&eq, &h));
    if checks.last().unwrap().outcome == Outcome::Fail {
        return Ok(assemble(checks, Some(m), Vec::new()));
    }
    let families = match pole_families(&eq, options.precision_bits) {
        Ok(f) => f,
        Err(e) => {
            checks.push(CheckResult::global(
                CHECK_FAMILIES,
                Outcome::Indeterminate,
                format!("root localization failed: {e}"),
            ));
            return Ok(assemble(checks, Some(m), Vec::new()));
        }
    };
    checks.extend(check_families(&families));
    if checks.iter().any(|c| c.outcome == Outcome::Fail) {
        return Ok(assemble(checks, Some(m), families));
    }
    let s = integral_bureau(&bureau).expect("admissible Bureau number");
    checks.push(check_residue_identity(&families, n, s));
    if checks.last().unwrap().outcome == Outcome::Fail {
        return Ok(assemble(checks, Some(m), families));
    }
    checks.push(check_sum_identities(&families, &eq));
    if checks.last().unwrap().outcome == Outcome::Fail {
        return Ok(assemble(checks, Some(m), families));
    }
    checks.extend(check_compatibility(&eq, &families, options.depth_cap));
    if checks.iter().any(|c| c.outcome == Outcome::Fail) {
        return Ok(assemble(checks, Some(m), families));
    }
    if checks.iter().all(|c| c.outcome == Outcome::Pass) && degree_d > 2 && n > 3 {
        checks.push(check_negative_resonance_theorem(&families, degree_d, n));
    }
    Ok(assemble(checks, Some(m), families))
}
