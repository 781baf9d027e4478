//! Seeded random-equation generation shared by the property and
//! acceptance suites.
//!
//! Every generated equation has a Bureau number of exactly 1 or 2, order
//! at most 5, at most four terms, and small rational coefficients
//! (occasionally linear in `z`), so the whole exact pipeline applies.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use rand::Rng;

use painleve_core::gauss::GaussRational;
use painleve_core::ode::{MultiIndex, PolynomialODE};
use painleve_core::poly::Poly;
use painleve_core::CoeffPoly;

fn small_rational(rng: &mut impl Rng) -> BigRational {
    let mut p = 0i64;
    while p == 0 {
        p = rng.gen_range(-5..=5);
    }
    let q = rng.gen_range(1..=3i64);
    BigRational::new(BigInt::from(p), BigInt::from(q))
}

fn random_coeff(rng: &mut impl Rng) -> CoeffPoly {
    let constant = GaussRational::from_rational(small_rational(rng));
    if rng.gen_bool(0.25) {
        Poly::from_coeffs(vec![constant, GaussRational::from_rational(small_rational(rng))])
    } else {
        Poly::from_coeffs(vec![constant])
    }
}

/// A multi-index over `n` slots with degree `deg` and total derivative
/// weight `nu`, assembled by distributing `nu` derivative orders over
/// `deg` factors.
fn random_index_with(rng: &mut impl Rng, n: usize, deg: u32, nu: u32) -> Option<MultiIndex> {
    let mut orders = vec![0u32; deg as usize];
    let cap = (n - 1) as u32;
    for _ in 0..nu {
        let open: Vec<usize> =
            (0..orders.len()).filter(|&i| orders[i] < cap).collect();
        if open.is_empty() {
            return None;
        }
        orders[open[rng.gen_range(0..open.len())]] += 1;
    }
    let mut exps = vec![0u32; n];
    for j in orders {
        exps[j as usize] += 1;
    }
    Some(MultiIndex::new(exps))
}

fn try_random(rng: &mut impl Rng) -> Option<PolynomialODE> {
    let s: u32 = if rng.gen_bool(0.5) { 1 } else { 2 };
    let n: usize = rng.gen_range(s.max(1) as usize..=5);
    let gmax = (1 + n as u32 / s).min(5);
    if gmax < 2 {
        return None;
    }
    let g = rng.gen_range(2..=gmax);
    let nu = n as u32 - s * (g - 1);
    let dominant = random_index_with(rng, n, g, nu)?;
    let mut terms: BTreeMap<MultiIndex, CoeffPoly> = BTreeMap::new();
    terms.insert(dominant, random_coeff(rng));
    for _ in 0..rng.gen_range(0..=3usize) {
        let deg = rng.gen_range(1..=gmax);
        if deg <= 1 {
            let mut exps = vec![0u32; n];
            if rng.gen_bool(0.7) {
                exps[rng.gen_range(0..n)] = 1;
            }
            terms.entry(MultiIndex::new(exps)).or_insert_with(|| random_coeff(rng));
        } else {
            let bound = n as u32 - s * (deg - 1);
            let nu2 = rng.gen_range(0..=bound);
            if let Some(chi) = random_index_with(rng, n, deg, nu2) {
                terms.entry(chi).or_insert_with(|| random_coeff(rng));
            }
        }
    }
    let ode = PolynomialODE::new(n, terms).ok()?;
    let bureau = ode.bureau_number().ok()?;
    if bureau != BigRational::from_integer(BigInt::from(s)) {
        return None;
    }
    ode.choose_base_point().ok()?;
    Some(ode)
}

/// Next random equation from the seeded stream; retries until the sampled
/// term set is admissible.
pub fn random_equation(rng: &mut impl Rng) -> PolynomialODE {
    loop {
        if let Some(ode) = try_random(rng) {
            return ode;
        }
    }
}
