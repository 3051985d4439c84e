//! Numerical routines checked against independent reference computations.

use granger_lab::criteria::{chi2_sf, f_sf, Criterion, NestedRss};
use granger_lab::regress::{ols_fit, Design};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

mod common;
use common::{normal_equations, random_system};

#[test]
fn ols_matches_normal_equations() {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    for case in 0..100 {
        let k = 1 + case % 8;
        let n = rng.random_range(k + 5..=200);
        let (columns, y) = random_system(&mut rng, n, k);
        let fit = ols_fit(&Design::from_columns(&columns, y.clone()).unwrap()).unwrap();
        let oracle = normal_equations(&columns, &y);
        for (got, want) in fit.coefficients.iter().zip(&oracle) {
            let rel = (got - want).abs() / want.abs().max(1e-12);
            assert!(rel < 1e-8, "case {case} ({n}x{k}): {got} vs {want}");
        }
        let rss: f64 = (0..n)
            .map(|i| {
                let pred: f64 = columns.iter().zip(&oracle).map(|(c, b)| c[i] * b).sum();
                (y[i] - pred).powi(2)
            })
            .sum();
        assert!((fit.rss - rss).abs() <= 1e-8 * rss);
    }
}

fn ln_gamma_half_integer(two_a: u32) -> f64 {
    // Gamma(a) for a = two_a / 2 by recursion from Gamma(1/2) or Gamma(1).
    let (mut value, mut a) = if two_a % 2 == 1 {
        (std::f64::consts::PI.sqrt().ln(), 0.5)
    } else {
        (0.0, 1.0)
    };
    while a < f64::from(two_a) / 2.0 {
        value += a.ln();
        a += 1.0;
    }
    value
}

fn f_density(t: f64, d1: u32, d2: u32) -> f64 {
    let (a, b) = (f64::from(d1) / 2.0, f64::from(d2) / 2.0);
    let ln_beta = ln_gamma_half_integer(d1) + ln_gamma_half_integer(d2) - ln_gamma_half_integer(d1 + d2);
    (a * (2.0 * a).ln() + b * (2.0 * b).ln() + (a - 1.0) * t.ln() - (a + b) * (2.0 * a * t + 2.0 * b).ln() - ln_beta)
        .exp()
}

/// Tail integral of the F density by tanh-sinh quadrature after mapping
/// [x, inf) onto [0, 1).
fn f_tail_quadrature(x: f64, d1: u32, d2: u32) -> f64 {
    let h = 1.0 / 128.0;
    let half_pi = std::f64::consts::FRAC_PI_2;
    let mut sum = 0.0;
    for k in -600i32..=600 {
        let v = f64::from(k) * h;
        let arg = half_pi * v.sinh();
        let weight = h * half_pi * v.cosh() / arg.cosh().powi(2);
        // s in (0, 1) with 1 - s computed without cancellation.
        let one_minus_s = 1.0 / (1.0 + (2.0 * arg).exp());
        let s = 1.0 - one_minus_s;
        if one_minus_s <= 0.0 || s <= 0.0 {
            continue;
        }
        let t = x + s / one_minus_s;
        let jacobian = 1.0 / (one_minus_s * one_minus_s);
        let term = 0.5 * weight * f_density(t, d1, d2) * jacobian;
        if term.is_finite() {
            sum += term;
        }
    }
    sum
}

#[test]
fn f_survival_matches_quadrature() {
    for d1 in [1, 2, 3, 5, 10] {
        for d2 in [2, 5, 20, 44, 100] {
            for x in [0.1, 0.5, 1.0, 2.0, 4.4, 10.0] {
                let want = f_tail_quadrature(x, d1, d2);
                let got = f_sf(x, d1 as usize, d2 as usize);
                assert!(
                    ((got - want) / want).abs() < 1e-8,
                    "F({d1},{d2}) at {x}: {got} vs {want}"
                );
            }
        }
    }
}

#[test]
fn chi2_even_dof_is_poisson_sum() {
    for i in 0..=10_000 {
        let x = 100.0 * f64::from(i) / 10_000.0;
        assert!((chi2_sf(x, 2) - (-x / 2.0).exp()).abs() <= 1e-12);
        let y = x / 2.0;
        let four = (-y).exp() * (1.0 + y);
        assert!((chi2_sf(x, 4) - four).abs() <= 1e-12);
    }
}

#[test]
fn chi2_one_dof_matches_normal_tail() {
    // P(chi2_1 > z^2) = 2 P(N > z); reference values of the normal tail.
    for (z, two_tail) in [(1.0, 0.317_310_507_862_914_1), (1.959_963_984_540_054, 0.05), (3.0, 0.002_699_796_063_260_19)] {
        assert!((chi2_sf(z * z, 1) - two_tail).abs() < 1e-12);
    }
}

proptest! {
    #[test]
    fn wald_lr_lm_ordering(
        rss_u in 1e-6f64..1e6,
        gain in 1e-9f64..10.0,
        n in 10usize..2000,
        q in 1usize..6,
        extra in 0usize..5,
    ) {
        let pair = NestedRss {
            rss_restricted: rss_u * (1.0 + gain),
            rss_unrestricted: rss_u,
            n_obs: n,
            params_restricted: 1 + extra,
            params_unrestricted: 1 + extra + q,
        };
        let w = pair.test(Criterion::Wald).statistic;
        let lr = pair.test(Criterion::LikelihoodRatio).statistic;
        let lm = pair.test(Criterion::LagrangeMultiplier).statistic;
        prop_assert!(w > lr && lr > lm, "{w} {lr} {lm}");
        // Equal dof: the larger statistic has the smaller p-value.
        let pw = pair.test(Criterion::Wald).p_value;
        let plr = pair.test(Criterion::LikelihoodRatio).p_value;
        prop_assert!(pw <= plr);
    }
}
