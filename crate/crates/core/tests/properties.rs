//! Randomized and exhaustive properties of the exact pipeline: builder
//! formulas against the series oracle, universal identities of the
//! resonance polynomial, sum rules, scaling covariance, and parser
//! round-trips.

mod common;

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use painleve_core::battery::{full_verdict, AnalysisOptions};
use painleve_core::gauss::GaussRational;
use painleve_core::ode::{integral_bureau, EvaluatedODE, PolynomialODE};
use painleve_core::oracle::{oracle_h, oracle_r, substitute};
use painleve_core::painleve::{
    determining_polynomial, expand_laurent, pole_families, resonance_in_q,
    resonance_polynomial_at, tau, DEFAULT_PRECISION_BITS,
};
use painleve_core::parser::{parse_equation, render_canonical};
use painleve_core::series::Series;

fn evaluated(ode: &PolynomialODE) -> EvaluatedODE {
    ode.evaluate_at(&ode.choose_base_point().unwrap()).unwrap()
}

fn probe_q(rng: &mut impl Rng) -> GaussRational {
    let mut p = 0i64;
    while p == 0 {
        p = rng.gen_range(-7..=7);
    }
    GaussRational::from_rational(BigRational::new(BigInt::from(p), BigInt::from(rng.gen_range(1..=4i64))))
}

#[test]
fn builders_match_series_oracles() {
    let mut rng = ChaCha8Rng::seed_from_u64(0xA11CE);
    for _ in 0..200 {
        let ode = common::random_equation(&mut rng);
        let eq = evaluated(&ode);
        let h = determining_polynomial(&eq);
        assert_eq!(h.full(), oracle_h(&eq).unwrap(), "H mismatch for {}", render_canonical(&ode));
        let q = probe_q(&mut rng);
        assert_eq!(
            resonance_polynomial_at(&eq, &q),
            oracle_r(&eq, &q).unwrap(),
            "R mismatch for {} at q = {}",
            render_canonical(&ode),
            q
        );
    }
}

#[test]
fn universal_resonance_identities() {
    let mut rng = ChaCha8Rng::seed_from_u64(0xB0B);
    for _ in 0..200 {
        let ode = common::random_equation(&mut rng);
        let eq = evaluated(&ode);
        let h = determining_polynomial(&eq);
        let s = h.bureau;
        let n = eq.order;

        // R(0; q) equals H'(q) as polynomials in q
        let at_zero = resonance_in_q(&eq, &GaussRational::from_int(0));
        assert_eq!(at_zero, h.full().derivative(), "{}", render_canonical(&ode));

        // s * R(-1; q) equals (s + n) * H(q)/q
        let at_minus_one = resonance_in_q(&eq, &GaussRational::from_int(-1));
        assert_eq!(
            at_minus_one.scaled(&GaussRational::from_int(s as i64)),
            h.reduced.scaled(&GaussRational::from_int(s as i64 + n as i64)),
            "{}",
            render_canonical(&ode)
        );

        // R( . ; q) is monic of degree n at any leading coefficient
        let q = probe_q(&mut rng);
        let rp = resonance_polynomial_at(&eq, &q);
        assert_eq!(rp.degree(), Some(n));
        assert_eq!(rp.leading(), Some(&GaussRational::from_int(1)));

        // the constant term of H/q has the fixed magnitude (n+s-1)!/(s-1)!
        let mut expect = BigInt::one();
        for k in s as u64..(n as u64 + s as u64) {
            expect *= BigInt::from(k);
        }
        let tail = tau(s, n as u32);
        assert_eq!(tail.abs(), expect);
        assert_eq!(
            h.reduced.coeff(0),
            GaussRational::from_rational(BigRational::from_integer(tail))
        );
    }
}

#[test]
fn sum_rules_hold_identically_in_q() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5EED);
    for _ in 0..150 {
        let ode = common::random_equation(&mut rng);
        let eq = evaluated(&ode);
        let n = eq.order;
        let s = integral_bureau(&eq.leading.bureau).unwrap();
        let two = GaussRational::from_int(2);
        for q in [GaussRational::from_int(1), GaussRational::from_int(-2), probe_q(&mut rng)] {
            let rp = resonance_polynomial_at(&eq, &q);
            let e1 = -rp.coeff(n - 1);
            if s == 1 {
                let base = GaussRational::from_int((n + n * (n - 1) / 2) as i64);
                let factor = if n == 1 { &two * &eq.leading.coeff_a } else { eq.leading.coeff_a.clone() };
                assert_eq!(e1, &base + &(&factor * &q), "{}", render_canonical(&ode));
            } else {
                let base = GaussRational::from_int((2 * n + n * (n - 1) / 2) as i64);
                assert_eq!(e1, base, "{}", render_canonical(&ode));
                let e2 = if n >= 2 { rp.coeff(n - 2) } else { GaussRational::from_int(0) };
                let sum_sq = &(&e1 * &e1) - &(&two * &e2);
                let base_sq = GaussRational::from_int((0..n as i64).map(|j| (2 + j) * (2 + j)).sum());
                let factor = if n == 2 { &two * &eq.leading.coeff_b } else { eq.leading.coeff_b.clone() };
                assert_eq!(
                    sum_sq,
                    &base_sq + &(&two * &(&factor * &q)),
                    "{}",
                    render_canonical(&ode)
                );
            }
        }
    }
}

#[test]
fn resonance_product_routes_agree() {
    let mut rng = ChaCha8Rng::seed_from_u64(0xCAFE);
    let mut exercised = 0usize;
    for _ in 0..80 {
        let ode = common::random_equation(&mut rng);
        let eq = evaluated(&ode);
        // The assertions below only concern exact families; a modest
        // precision keeps the numerically localized ones cheap.
        let fams = match pole_families(&eq, 128) {
            Ok(f) => f,
            Err(_) => continue,
        };
        for fam in &fams {
            if !fam.is_exact() || !fam.resonances.all_integer() {
                continue;
            }
            let Some(product) = &fam.product else { continue };
            assert!(product.is_exact());
            // route 1: the product of the extracted integer resonances
            let mut direct = GaussRational::from_int(1);
            for r in &fam.resonances.integers {
                direct = &direct * &GaussRational::from_rational(BigRational::from_integer(r.clone()));
            }
            assert_eq!(direct, product.center, "{}", render_canonical(&ode));
            // route 2: (-1)^n times the constant term of the resonance polynomial
            let sign = GaussRational::from_int(if eq.order % 2 == 0 { 1 } else { -1 });
            assert_eq!(&sign * &fam.res_poly.coeffs.coeff(0), product.center);
            exercised += 1;
        }
    }
    assert!(exercised >= 15, "only {exercised} exact integer families sampled");
}

#[test]
fn scaling_leaves_the_analysis_invariant() {
    let lambdas = [
        GaussRational::from_int(2),
        GaussRational::from_int(-3),
        GaussRational::from_rational(BigRational::new(BigInt::from(1), BigInt::from(5))),
    ];
    let mut rng = ChaCha8Rng::seed_from_u64(0xD0D0);
    let options = AnalysisOptions { precision_bits: 128, depth_cap: 24, ..Default::default() };
    for _ in 0..30 {
        let ode = common::random_equation(&mut rng);
        let base = full_verdict(&ode, &options).unwrap();
        for lambda in &lambdas {
            let scaled = full_verdict(&ode.scale_dependent(lambda), &options).unwrap();
            assert_eq!(base.verdict, scaled.verdict, "{} under {}", render_canonical(&ode), lambda);
            let mut a: Vec<(&str, &str)> =
                base.checks.iter().map(|c| (c.check_id, c.outcome.as_str())).collect();
            let mut b: Vec<(&str, &str)> =
                scaled.checks.iter().map(|c| (c.check_id, c.outcome.as_str())).collect();
            a.sort();
            b.sort();
            assert_eq!(a, b, "{} under {}", render_canonical(&ode), lambda);
            assert_eq!(base.families.len(), scaled.families.len());
            // exact leading coefficients divide by lambda; resonance sets persist
            let mut qa: Vec<String> = base
                .families
                .iter()
                .filter_map(|f| f.q.exact_value())
                .map(|q| (q * &lambda.recip()).to_string())
                .collect();
            let mut qb: Vec<String> = scaled
                .families
                .iter()
                .filter_map(|f| f.q.exact_value())
                .map(|q| q.to_string())
                .collect();
            qa.sort();
            qb.sort();
            assert_eq!(qa, qb, "{} under {}", render_canonical(&ode), lambda);
            // Numerically localized families are excluded: which candidates
            // pass certification can depend on interval widths, which differ
            // between independent runs.
            let mut ra: Vec<Vec<BigInt>> = base
                .families
                .iter()
                .filter(|f| f.is_exact())
                .map(|f| f.resonances.integers.clone())
                .collect();
            let mut rb: Vec<Vec<BigInt>> = scaled
                .families
                .iter()
                .filter(|f| f.is_exact())
                .map(|f| f.resonances.integers.clone())
                .collect();
            ra.sort();
            rb.sort();
            assert_eq!(ra, rb, "{} under {}", render_canonical(&ode), lambda);
        }
    }
}

#[test]
fn laurent_residuals_vanish_through_the_window() {
    let fixtures = [
        ("w[2]=6*w^2+z", 24usize),
        ("w[2]=2*w^3+z*w+1/2", 24),
        ("w[2]=2*w^3", 24),
        ("w[4]+3*w*w[2]-4*w[1]^2=0", 28),
        ("w[4]=10*w^2*w[2]+10*w*w[1]^2-6*w^5+z*w", 24),
    ];
    for (text, depth) in fixtures {
        let ode = parse_equation(text).unwrap();
        let eq = evaluated(&ode);
        let fams = pole_families(&eq, DEFAULT_PRECISION_BITS).unwrap();
        let s = integral_bureau(&eq.leading.bureau).unwrap() as i64;
        let n = eq.order as i64;
        for fam in &fams {
            let free: BTreeMap<i64, GaussRational> = fam
                .resonances
                .positives()
                .into_iter()
                .map(|j| (j, GaussRational::from_int(0)))
                .collect();
            let expansion = expand_laurent(&eq, fam, depth, &free, 64).unwrap();
            let mut coeffs = vec![fam.q.exact_value().unwrap().clone()];
            coeffs.extend(expansion.coefficients.iter().cloned());
            let w = Series::from_window(-s, coeffs, depth as i64 - s + 1);
            let target = depth as i64 - s - n + 1;
            let residual = substitute(&eq, &w, Some(target));
            assert!(
                residual.is_zero_where_known(),
                "{text}: residual {:?} below exponent {target}",
                residual.first_nonzero()
            );
        }
    }
}

#[test]
fn rendering_round_trips() {
    let mut rng = ChaCha8Rng::seed_from_u64(0xF00D);
    for _ in 0..100 {
        let ode = common::random_equation(&mut rng);
        let text = render_canonical(&ode);
        let back = parse_equation(&text).unwrap();
        assert_eq!(ode, back, "round trip through {text}");
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn parser_total_on_expression_noise(text in "[-+*/^=zw\\[\\]()0-9 .]{0,48}") {
        let _ = parse_equation(&text);
    }

    #[test]
    fn parser_total_on_arbitrary_input(text in any::<String>()) {
        let _ = parse_equation(&text);
    }

    #[test]
    fn tau_magnitude_is_a_factorial_ratio(s in 1u32..=2, n in 1u32..=10) {
        let mut expect = BigInt::one();
        for k in s as u64..(n as u64 + s as u64) {
            expect *= BigInt::from(k);
        }
        prop_assert_eq!(tau(s, n).abs(), expect);
        // j factors, alternating sign
        let sign = if n % 2 == 0 { 1 } else { -1 };
        prop_assert_eq!(tau(s, n).signum(), BigInt::from(sign));
    }
}
