//! Test criteria for nested Gaussian linear models and their reference
//! distributions.
//!
//! With `n` observations, `q` restrictions and `k` unrestricted parameters:
//!
//! | criterion | statistic                                   | reference   |
//! |-----------|---------------------------------------------|-------------|
//! | LR        | `n ln(rss_r / rss_u)`                       | χ²(q)       |
//! | Wald      | `n (rss_r - rss_u) / rss_u`                 | χ²(q)       |
//! | LM        | `n (rss_r - rss_u) / rss_r`                 | χ²(q)       |
//! | Rao       | `((rss_r - rss_u) / q) / (rss_u / (n - k))` | F(q, n - k) |
//!
//! Since `x/(1+x) <= ln(1+x) <= x`, Wald >= LR >= LM for every pair.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::experiments::RateEstimate;
use crate::regress::FitResult;
use crate::special::{beta_inc, gamma_q};

/// Significance level for deciding whether two criteria's rates differ.
pub const COMPARISON_LEVEL: f64 = 0.1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Criterion {
    #[serde(rename = "lr")]
    LikelihoodRatio,
    #[serde(rename = "wald")]
    Wald,
    #[serde(rename = "rao")]
    Rao,
    #[serde(rename = "lm")]
    LagrangeMultiplier,
}

impl Criterion {
    /// The criteria used by the experiment presets. LM is dominated by Rao
    /// and left out.
    pub const PRESETS: [Criterion; 3] = [Criterion::LikelihoodRatio, Criterion::Wald, Criterion::Rao];

    pub fn as_str(self) -> &'static str {
        match self {
            Criterion::LikelihoodRatio => "lr",
            Criterion::Wald => "wald",
            Criterion::Rao => "rao",
            Criterion::LagrangeMultiplier => "lm",
        }
    }
}

impl fmt::Display for Criterion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Criterion {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "lr" => Ok(Criterion::LikelihoodRatio),
            "wald" | "w" => Ok(Criterion::Wald),
            "rao" | "r" => Ok(Criterion::Rao),
            "lm" => Ok(Criterion::LagrangeMultiplier),
            other => Err(format!("unknown criterion '{other}'")),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TestOutcome {
    pub statistic: f64,
    pub p_value: f64,
    /// Number of restrictions `q`.
    pub dof_numerator: usize,
    /// Residual degrees of freedom for F-referenced criteria.
    pub dof_denominator: Option<usize>,
    pub criterion: Criterion,
}

/// Residual sums of squares of a nested pair fitted on the same rows.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NestedRss {
    pub rss_restricted: f64,
    pub rss_unrestricted: f64,
    pub n_obs: usize,
    pub params_restricted: usize,
    pub params_unrestricted: usize,
}

impl NestedRss {
    pub fn from_fits(restricted: &FitResult, unrestricted: &FitResult) -> Result<Self> {
        if restricted.n_obs != unrestricted.n_obs {
            return Err(Error::InvalidPair(format!(
                "observation counts differ ({} vs {})",
                restricted.n_obs, unrestricted.n_obs
            )));
        }
        if restricted.n_params >= unrestricted.n_params {
            return Err(Error::InvalidPair(format!(
                "restricted model has {} parameters, unrestricted {}",
                restricted.n_params, unrestricted.n_params
            )));
        }
        Ok(Self {
            rss_restricted: restricted.rss,
            rss_unrestricted: unrestricted.rss,
            n_obs: unrestricted.n_obs,
            params_restricted: restricted.n_params,
            params_unrestricted: unrestricted.n_params,
        })
    }

    pub fn restrictions(&self) -> usize {
        self.params_unrestricted - self.params_restricted
    }

    /// Evaluates `criterion` on this pair.
    pub fn test(&self, criterion: Criterion) -> TestOutcome {
        let n = self.n_obs as f64;
        let q = self.restrictions();
        let df2 = self.n_obs - self.params_unrestricted;
        let (rr, ru) = (self.rss_restricted, self.rss_unrestricted);
        // Round-off can leave rss_r a hair below rss_u.
        let gain = (rr - ru).max(0.0);
        let dof_denominator = (criterion == Criterion::Rao).then_some(df2);

        if ru <= 0.0 {
            let (statistic, p_value) = if gain > 0.0 { (f64::INFINITY, 0.0) } else { (0.0, 1.0) };
            return TestOutcome {
                statistic,
                p_value,
                dof_numerator: q,
                dof_denominator,
                criterion,
            };
        }

        let (statistic, p_value) = match criterion {
            Criterion::LikelihoodRatio => {
                let s = n * (1.0 + gain / ru).ln();
                (s, chi2_sf(s, q))
            }
            Criterion::Wald => {
                let s = n * gain / ru;
                (s, chi2_sf(s, q))
            }
            Criterion::LagrangeMultiplier => {
                let s = n * gain / rr;
                (s, chi2_sf(s, q))
            }
            Criterion::Rao => {
                let s = (gain / q as f64) / (ru / df2 as f64);
                (s, f_sf(s, q, df2))
            }
        };
        TestOutcome {
            statistic,
            p_value,
            dof_numerator: q,
            dof_denominator,
            criterion,
        }
    }
}

/// Test statistic and p-value for a restricted/unrestricted fit pair.
pub fn statistic(
    criterion: Criterion,
    restricted: &FitResult,
    unrestricted: &FitResult,
) -> Result<TestOutcome> {
    Ok(NestedRss::from_fits(restricted, unrestricted)?.test(criterion))
}

/// Survival function of χ²(dof).
pub fn chi2_sf(statistic: f64, dof: usize) -> f64 {
    assert!(dof > 0, "chi-squared needs at least one degree of freedom");
    if !(statistic > 0.0) {
        return 1.0;
    }
    if statistic == f64::INFINITY {
        return 0.0;
    }
    let half = statistic / 2.0;
    if dof.is_multiple_of(2) && dof <= 200 {
        // Q(k, y) = e^{-y} sum_{i<k} y^i / i! for integer k.
        let mut term = 1.0;
        let mut sum = 1.0;
        for i in 1..dof / 2 {
            term *= half / i as f64;
            sum += term;
        }
        return ((-half).exp() * sum).min(1.0);
    }
    gamma_q(dof as f64 / 2.0, half).clamp(0.0, 1.0)
}

/// Survival function of F(dof1, dof2).
pub fn f_sf(statistic: f64, dof1: usize, dof2: usize) -> f64 {
    assert!(dof1 > 0 && dof2 > 0, "F needs positive degrees of freedom");
    if !(statistic > 0.0) {
        return 1.0;
    }
    if statistic == f64::INFINITY {
        return 0.0;
    }
    let (d1, d2) = (dof1 as f64, dof2 as f64);
    beta_inc(d2 / 2.0, d1 / 2.0, d2 / (d2 + d1 * statistic)).clamp(0.0, 1.0)
}

/// Pooled two-proportion z-test.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ProportionTest {
    pub z: f64,
    /// Two-sided.
    pub p_value: f64,
    pub different: bool,
}

pub fn two_proportion_z_test(
    successes_a: usize,
    n_a: usize,
    successes_b: usize,
    n_b: usize,
    level: f64,
) -> Result<ProportionTest> {
    if n_a == 0 || n_b == 0 {
        return Err(Error::ZeroIterations);
    }
    let (na, nb) = (n_a as f64, n_b as f64);
    let (pa, pb) = (successes_a as f64 / na, successes_b as f64 / nb);
    let pooled = (successes_a + successes_b) as f64 / (na + nb);
    let var = pooled * (1.0 - pooled) * (1.0 / na + 1.0 / nb);
    let z = if var > 0.0 { (pa - pb) / var.sqrt() } else { 0.0 };
    // Two-sided normal tail: P(|Z| > z) = P(χ²(1) > z²).
    let p_value = chi2_sf(z * z, 1);
    Ok(ProportionTest {
        z,
        p_value,
        different: p_value < level,
    })
}

/// Whether two Monte Carlo rate estimates differ, rate by rate.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CriteriaComparison {
    pub spurious: ProportionTest,
    pub unidentified: ProportionTest,
}

/// Two-proportion z-tests on the spurious and unidentified rates at
/// [`COMPARISON_LEVEL`].
pub fn compare_criteria(a: &RateEstimate, b: &RateEstimate) -> Result<CriteriaComparison> {
    compare_criteria_at(a, b, COMPARISON_LEVEL)
}

pub fn compare_criteria_at(
    a: &RateEstimate,
    b: &RateEstimate,
    level: f64,
) -> Result<CriteriaComparison> {
    Ok(CriteriaComparison {
        spurious: two_proportion_z_test(
            a.spurious_count,
            a.iterations,
            b.spurious_count,
            b.iterations,
            level,
        )?,
        unidentified: two_proportion_z_test(
            a.unidentified_count,
            a.iterations,
            b.unidentified_count,
            b.iterations,
            level,
        )?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pair(rr: f64, ru: f64, n: usize, kr: usize, ku: usize) -> NestedRss {
        NestedRss {
            rss_restricted: rr,
            rss_unrestricted: ru,
            n_obs: n,
            params_restricted: kr,
            params_unrestricted: ku,
        }
    }

    #[test]
    fn no_restriction_cost_gives_zero_and_one() {
        let p = pair(1.0, 1.0, 50, 4, 6);
        for c in [
            Criterion::LikelihoodRatio,
            Criterion::Wald,
            Criterion::Rao,
            Criterion::LagrangeMultiplier,
        ] {
            let o = p.test(c);
            assert_eq!(o.statistic, 0.0);
            assert_eq!(o.p_value, 1.0);
        }
    }

    #[test]
    fn closed_form_values() {
        // Direct evaluation of the four forms.
        let p = pair(1.2, 1.0, 50, 4, 6);
        let lr = p.test(Criterion::LikelihoodRatio).statistic;
        let w = p.test(Criterion::Wald).statistic;
        let lm = p.test(Criterion::LagrangeMultiplier).statistic;
        let r = p.test(Criterion::Rao);
        assert!((lr - 50.0 * 1.2f64.ln()).abs() < 1e-12);
        assert!((lr - 9.116).abs() < 1e-3);
        assert!((w - 10.0).abs() < 1e-12);
        assert!((lm - 50.0 * 0.2 / 1.2).abs() < 1e-12);
        assert!((lm - 8.333).abs() < 1e-3);
        assert!((r.statistic - 4.4).abs() < 1e-12);
        assert_eq!(r.dof_numerator, 2);
        assert_eq!(r.dof_denominator, Some(44));
        assert!(w >= lr && lr >= lm);
    }

    #[test]
    fn perfect_fit_limits() {
        let o = pair(0.3, 0.0, 20, 2, 4).test(Criterion::Wald);
        assert_eq!(o.p_value, 0.0);
        let o = pair(0.0, 0.0, 20, 2, 4).test(Criterion::Rao);
        assert_eq!(o.p_value, 1.0);
    }

    #[test]
    fn invalid_pairs_are_rejected() {
        let fit = |n_obs, n_params| FitResult {
            coefficients: vec![0.0; n_params],
            rss: 1.0,
            n_obs,
            n_params,
        };
        assert!(matches!(
            statistic(Criterion::Wald, &fit(48, 2), &fit(47, 4)),
            Err(Error::InvalidPair(_))
        ));
        assert!(matches!(
            statistic(Criterion::Wald, &fit(48, 4), &fit(48, 4)),
            Err(Error::InvalidPair(_))
        ));
    }

    #[test]
    fn chi2_examples() {
        assert_eq!(chi2_sf(0.0, 1), 1.0);
        assert_eq!(chi2_sf(0.0, 7), 1.0);
        assert!((chi2_sf(5.991, 2) - 0.05).abs() < 1e-4);
        assert!((chi2_sf(9.21, 2) - 0.01).abs() < 1e-4);
        assert_eq!(chi2_sf(5.991, 2), (-5.991f64 / 2.0).exp());
        // Odd dof through the incomplete gamma: chi2(1) at 3.841459 is 0.05.
        assert!((chi2_sf(3.841_458_820_694_124, 1) - 0.05).abs() < 1e-12);
        assert!((chi2_sf(11.070_497_693_516_351, 5) - 0.05).abs() < 1e-12);
    }

    #[test]
    fn f_examples() {
        assert_eq!(f_sf(0.0, 3, 10), 1.0);
        assert!((f_sf(1.0, 2, 2) - 0.5).abs() < 1e-14);
        // F(2, m) survival is (1 + 2x/m)^(-m/2).
        let closed = (1.0f64 + 6.0 / 44.0).powf(-22.0);
        assert!((f_sf(3.0, 2, 44) - closed).abs() < 1e-13);
        assert!((f_sf(3.0, 2, 44) - 0.0601).abs() < 1e-4);
    }

    #[test]
    fn p_values_decrease_with_statistic() {
        let mut last = 1.0;
        for i in 1..200 {
            let x = i as f64 * 0.25;
            let p = chi2_sf(x, 3);
            assert!(p <= last);
            last = p;
        }
        let mut last = 1.0;
        for i in 1..200 {
            let p = f_sf(i as f64 * 0.1, 2, 44);
            assert!(p <= last);
            last = p;
        }
    }

    #[test]
    fn z_test_examples() {
        let t = two_proportion_z_test(300, 1000, 300, 1000, 0.1).unwrap();
        assert_eq!(t.p_value, 1.0);
        assert!(!t.different);

        let t = two_proportion_z_test(300, 1000, 200, 1000, 0.1).unwrap();
        let pooled: f64 = 0.25;
        let z = 0.1 / (pooled * (1.0 - pooled) * 0.002).sqrt();
        assert!((t.z - z).abs() < 1e-12);
        assert!((t.z - 5.16).abs() < 0.01);
        assert!(t.different);

        let t = two_proportion_z_test(5, 100, 6, 100, 0.1).unwrap();
        assert!(!t.different);

        assert_eq!(
            two_proportion_z_test(1, 0, 1, 10, 0.1),
            Err(Error::ZeroIterations)
        );
    }
}
