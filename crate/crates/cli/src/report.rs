//! Report assembly and rendering: one completed analysis becomes either a
//! deterministic text document or a JSON object with stable field names.
//!
//! Exact values serialize as rational strings (`-3/4`, `1/2+1/3i`); values
//! that are only numerically localized serialize as `{re, im, error_bound}`
//! with decimal scientific strings carrying as many digits as the requested
//! bit precision supports. Identical analyses always render to identical
//! bytes.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use painleve_core::roots::{Ball, RootQ, RootValue};
use painleve_core::{Analysis, GaussRational};
use serde::Serialize;

#[derive(Serialize)]
pub struct Report {
    pub version: String,
    pub input: String,
    pub order: usize,
    pub bureau: String,
    pub degree_d: u32,
    pub m: Option<usize>,
    pub z0: String,
    pub families: Vec<FamilyReport>,
    pub checks: Vec<CheckReport>,
    pub verdict: String,
}

#[derive(Serialize)]
pub struct FamilyReport {
    pub q: ValueRepr,
    pub q_exact: bool,
    pub resonance_poly: PolyReport,
    pub resonances: ResonancesReport,
    /// `None` when the determining root is multiple and the product vanishes.
    pub product: Option<ValueRepr>,
    pub negatives: Vec<String>,
}

/// Coefficients ascending from the constant term.
#[derive(Serialize)]
pub struct PolyReport {
    pub exact: bool,
    pub coefficients: Vec<String>,
}

#[derive(Serialize)]
pub struct ResonancesReport {
    pub integers: Vec<String>,
    pub others: Vec<ValueRepr>,
    pub unresolved: usize,
}

#[derive(Serialize)]
pub struct CheckReport {
    pub id: String,
    pub outcome: String,
    pub detail: String,
    pub family: Option<usize>,
}

/// A reported value: an exact rational string, or a decimal localization.
#[derive(Serialize)]
#[serde(untagged)]
pub enum ValueRepr {
    Exact(String),
    Numeric { re: String, im: String, error_bound: String },
}

/// Decimal digits that `bits` binary digits can support.
fn digits_for(bits: u32) -> usize {
    ((bits as f64) * std::f64::consts::LOG10_2).ceil().max(1.0) as usize
}

fn pow10(k: usize) -> BigUint {
    BigUint::from(10u32).pow(k as u32)
}

/// Scientific decimal rendering of an exact rational with `digits`
/// significant digits, rounding half away from zero: `-4.47e-1`, `1.20e2`.
pub fn sci(x: &BigRational, digits: usize) -> String {
    if x.is_zero() {
        return "0".to_string();
    }
    let digits = digits.max(1);
    let a = x.numer().magnitude().clone();
    let b = x.denom().magnitude().clone();
    // Locate e with 10^e <= a/b < 10^(e+1), starting from the digit counts.
    let mut e = a.to_string().len() as i64 - b.to_string().len() as i64;
    let below = |e: i64| {
        // is a/b < 10^e ?
        if e >= 0 {
            a < &b * pow10(e as usize)
        } else {
            &a * pow10((-e) as usize) < b
        }
    };
    while below(e) {
        e -= 1;
    }
    while !below(e + 1) {
        e += 1;
    }
    // mantissa = round(a/b * 10^(digits-1-e)) with digits digits
    let shift = digits as i64 - 1 - e;
    let (num, den) = if shift >= 0 { (a * pow10(shift as usize), b) } else { (a, b * pow10((-shift) as usize)) };
    let (q, r) = num.div_rem(&den);
    let mut mantissa = if &r * 2u32 >= den { q + 1u32 } else { q };
    if mantissa >= pow10(digits) {
        mantissa /= 10u32;
        e += 1;
    }
    let digits_str = mantissa.to_string();
    let sign = if x.is_negative() { "-" } else { "" };
    if digits == 1 {
        format!("{sign}{digits_str}e{e}")
    } else {
        format!("{sign}{}.{}e{e}", &digits_str[..1], &digits_str[1..])
    }
}

/// Decimal rendering of a possibly-complex value: `re`, `imi`, or `re+imi`.
fn sci_gauss(x: &GaussRational, digits: usize) -> String {
    if x.im.is_zero() {
        return sci(&x.re, digits);
    }
    let im = format!("{}i", sci(&x.im.abs(), digits));
    if x.re.is_zero() {
        if x.im.is_negative() {
            return format!("-{im}");
        }
        return im;
    }
    let sign = if x.im.is_negative() { "-" } else { "+" };
    format!("{}{sign}{im}", sci(&x.re, digits))
}

fn ball_repr(b: &Ball, digits: usize) -> ValueRepr {
    if b.is_exact() {
        ValueRepr::Exact(b.center.to_string())
    } else {
        ValueRepr::Numeric {
            re: sci(&b.center.re, digits),
            im: sci(&b.center.im, digits),
            error_bound: sci(&b.radius, 4),
        }
    }
}

fn root_repr(root: &RootQ, digits: usize) -> ValueRepr {
    match &root.value {
        RootValue::Exact(v) => ValueRepr::Exact(v.to_string()),
        RootValue::Certified(ball) => ball_repr(ball, digits),
    }
}

pub fn build_report(analysis: &Analysis, input: &str, version: &str, precision_bits: u32) -> Report {
    let digits = digits_for(precision_bits);
    let families = analysis
        .families
        .iter()
        .map(|fam| {
            let coefficients = fam
                .res_poly
                .coeffs
                .coeffs()
                .iter()
                .map(|c| {
                    if fam.res_poly.exact {
                        c.to_string()
                    } else {
                        sci_gauss(c, digits)
                    }
                })
                .collect();
            let mut others = Vec::new();
            for root in &fam.resonances.others {
                for _ in 0..root.multiplicity {
                    others.push(root_repr(root, digits));
                }
            }
            FamilyReport {
                q: root_repr(&fam.q, digits),
                q_exact: fam.q.is_exact(),
                resonance_poly: PolyReport { exact: fam.res_poly.exact, coefficients },
                resonances: ResonancesReport {
                    integers: fam.resonances.integers.iter().map(BigInt::to_string).collect(),
                    others,
                    unresolved: fam.resonances.unresolved,
                },
                product: fam.product.as_ref().map(|b| ball_repr(b, digits)),
                negatives: fam.resonances.negatives().iter().map(BigInt::to_string).collect(),
            }
        })
        .collect();
    let checks = analysis
        .checks
        .iter()
        .map(|c| CheckReport {
            id: c.check_id.to_string(),
            outcome: c.outcome.as_str().to_string(),
            detail: c.detail.clone(),
            family: c.family_index,
        })
        .collect();
    Report {
        version: version.to_string(),
        input: input.to_string(),
        order: analysis.order,
        bureau: analysis.bureau.to_string(),
        degree_d: analysis.degree_d,
        m: analysis.m,
        z0: analysis.z0.to_string(),
        families,
        checks,
        verdict: analysis.verdict.as_str().to_string(),
    }
}

fn value_text(v: &ValueRepr) -> String {
    match v {
        ValueRepr::Exact(s) => s.clone(),
        ValueRepr::Numeric { re, im, error_bound } => {
            format!("{re} + {im}*i (error <= {error_bound})")
        }
    }
}

pub fn render_text(report: &Report) -> String {
    let mut out = String::new();
    let push = |out: &mut String, line: String| {
        out.push_str(&line);
        out.push('\n');
    };
    push(&mut out, format!("painleve-probe {}", report.version));
    push(&mut out, format!("input: {}", report.input));
    push(&mut out, format!("order: {}", report.order));
    push(&mut out, format!("bureau: {}", report.bureau));
    push(&mut out, format!("degree d: {}", report.degree_d));
    match report.m {
        Some(m) => push(&mut out, format!("m: {m}")),
        None => push(&mut out, "m: -".to_string()),
    }
    push(&mut out, format!("z0: {}", report.z0));
    push(&mut out, format!("families ({}):", report.families.len()));
    for (idx, fam) in report.families.iter().enumerate() {
        let marker = if fam.q_exact { "exact" } else { "numeric" };
        push(&mut out, format!("  family {idx}: q = {} ({marker})", value_text(&fam.q)));
        let kind = if fam.resonance_poly.exact { "exact" } else { "numeric" };
        push(
            &mut out,
            format!(
                "    resonance polynomial coefficients (constant first, {kind}): {}",
                fam.resonance_poly.coefficients.join(", ")
            ),
        );
        push(
            &mut out,
            format!("    integer resonances: {}", join_or_none(&fam.resonances.integers)),
        );
        if !fam.resonances.others.is_empty() {
            let others: Vec<String> = fam.resonances.others.iter().map(value_text).collect();
            push(&mut out, format!("    other resonances: {}", others.join(", ")));
        }
        if fam.resonances.unresolved > 0 {
            push(&mut out, format!("    unresolved resonances: {}", fam.resonances.unresolved));
        }
        push(&mut out, format!("    negative resonances: {}", join_or_none(&fam.negatives)));
        match &fam.product {
            Some(p) => push(&mut out, format!("    product of resonances: {}", value_text(p))),
            None => push(&mut out, "    product of resonances: 0 (repeated root)".to_string()),
        }
    }
    push(&mut out, "checks:".to_string());
    for check in &report.checks {
        let scope = match check.family {
            Some(k) => format!(" (family {k})"),
            None => String::new(),
        };
        push(
            &mut out,
            format!("  [{}] {}{}: {}", check.outcome, check.id, scope, check.detail),
        );
    }
    push(&mut out, format!("verdict: {}", report.verdict));
    out
}

fn join_or_none(items: &[String]) -> String {
    if items.is_empty() {
        "none".to_string()
    } else {
        items.join(", ")
    }
}
