//! Synthetic trivariate series for the driver and indirect topologies.
//!
//! The backbone is
//!
//! ```text
//! x_t = U(-2, 2)
//! y_t = a * y_{t-1} + x_{t-1}
//! z_t = a * z_{t-1} + x_{t-2}     (driver)
//! z_t = a * z_{t-1} + y_{t-1}     (indirect)
//! ```
//!
//! with Gaussian noise either inside the recurrences (intrinsic, downstream
//! series see the noisy upstream values) or added by the observer after the
//! noise-free series are built (extrinsic).

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;
use std::sync::{Mutex, OnceLock};

use rand::Rng;
use rand_distr::{Distribution, StandardNormal, Uniform};

use crate::error::{Error, Result};
use crate::rng::{sample_rng, IterationRng};
use crate::series::TimeSeries;
use crate::topology::{SeriesId, Topology, TopologyLabel};

pub const DEFAULT_AR_COEFFICIENT: f64 = 0.3;
pub const DEFAULT_BURN_IN: usize = 100;
pub const DEFAULT_MAGNITUDE_BOUND: f64 = 1e12;
/// Post-burn-in length of the noise-free run used to measure signal variance.
pub const CALIBRATION_LENGTH: usize = 100_000;
const CALIBRATION_SEED: u64 = 0x5EED_CA11_B4A7_E000;

/// Lower and upper bound of the uniform driving input.
const INPUT_RANGE: (f64, f64) = (-2.0, 2.0);
/// Longest lag inside the backbone (x_{t-2} in the driver).
const BACKBONE_MAX_LAG: usize = 2;

/// Noise standard deviations on X, Y and Z.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct NoiseConfig {
    pub alpha: f64,
    pub beta: f64,
    pub gamma: f64,
}

impl NoiseConfig {
    pub const ZERO: NoiseConfig = NoiseConfig {
        alpha: 0.0,
        beta: 0.0,
        gamma: 0.0,
    };

    /// The fixed sigmas of the criterion-comparison experiments.
    pub const CRITERIA_STUDY: NoiseConfig = NoiseConfig {
        alpha: 0.0,
        beta: 0.1,
        gamma: 0.5,
    };

    pub fn new(alpha: f64, beta: f64, gamma: f64) -> Result<Self> {
        let n = Self { alpha, beta, gamma };
        n.validate()?;
        Ok(n)
    }

    fn validate(&self) -> Result<()> {
        for (name, s) in [("alpha", self.alpha), ("beta", self.beta), ("gamma", self.gamma)] {
            if !s.is_finite() || s < 0.0 {
                return Err(Error::InvalidConfig(format!(
                    "noise std {name}={s} must be finite and non-negative"
                )));
            }
        }
        Ok(())
    }

    pub fn get(&self, id: SeriesId) -> f64 {
        match id {
            SeriesId::X => self.alpha,
            SeriesId::Y => self.beta,
            SeriesId::Z => self.gamma,
        }
    }
}

/// Where noise enters the system.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum NoiseKind {
    /// Explicit sigmas inside the recurrences.
    FixedSigma,
    /// Per-series SNR (dB) converted to sigmas inside the recurrences.
    Intrinsic,
    /// Per-series SNR (dB) converted to observer noise.
    Extrinsic,
}

impl NoiseKind {
    pub fn as_str(self) -> &'static str {
        match self {
            NoiseKind::FixedSigma => "fixed",
            NoiseKind::Intrinsic => "intrinsic",
            NoiseKind::Extrinsic => "extrinsic",
        }
    }
}

impl fmt::Display for NoiseKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for NoiseKind {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "fixed" => Ok(NoiseKind::FixedSigma),
            "intrinsic" => Ok(NoiseKind::Intrinsic),
            "extrinsic" => Ok(NoiseKind::Extrinsic),
            other => Err(format!("unknown noise kind '{other}'")),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum NoiseSpec {
    FixedSigma(NoiseConfig),
    /// SNR in dB for (X, Y, Z).
    IntrinsicSnr([f64; 3]),
    /// SNR in dB for (X, Y, Z).
    ExtrinsicSnr([f64; 3]),
}

impl NoiseSpec {
    pub fn kind(&self) -> NoiseKind {
        match self {
            NoiseSpec::FixedSigma(_) => NoiseKind::FixedSigma,
            NoiseSpec::IntrinsicSnr(_) => NoiseKind::Intrinsic,
            NoiseSpec::ExtrinsicSnr(_) => NoiseKind::Extrinsic,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct GeneratorConfig {
    pub topology: Topology,
    pub length: usize,
    pub ar_coefficient: f64,
    pub noise: NoiseSpec,
    pub burn_in: usize,
    pub seed: u64,
    pub magnitude_bound: f64,
}

impl GeneratorConfig {
    pub fn new(topology: Topology, length: usize, noise: NoiseSpec) -> Self {
        Self {
            topology,
            length,
            ar_coefficient: DEFAULT_AR_COEFFICIENT,
            noise,
            burn_in: DEFAULT_BURN_IN,
            seed: 0,
            magnitude_bound: DEFAULT_MAGNITUDE_BOUND,
        }
    }

    /// The fixed-sigma setup of the criterion-comparison study.
    pub fn criteria_study(topology: Topology, length: usize) -> Self {
        Self::new(topology, length, NoiseSpec::FixedSigma(NoiseConfig::CRITERIA_STUDY))
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if self.length <= BACKBONE_MAX_LAG {
            return Err(Error::InvalidConfig(format!(
                "length {} must exceed the backbone lag {BACKBONE_MAX_LAG}",
                self.length
            )));
        }
        if !(self.ar_coefficient.abs() < 1.0) {
            return Err(Error::InvalidConfig(format!(
                "|ar_coefficient| = {} must be below 1",
                self.ar_coefficient.abs()
            )));
        }
        if !(self.magnitude_bound > 0.0) {
            return Err(Error::InvalidConfig("magnitude bound must be positive".into()));
        }
        match self.noise {
            NoiseSpec::FixedSigma(n) => n.validate(),
            NoiseSpec::IntrinsicSnr(s) | NoiseSpec::ExtrinsicSnr(s) => {
                if s.iter().all(|v| v.is_finite()) {
                    Ok(())
                } else {
                    Err(Error::InvalidConfig("SNR values must be finite".into()))
                }
            }
        }
    }

    /// Converts the noise specification into standard deviations.
    pub fn resolve_noise(&self) -> Result<NoiseConfig> {
        self.validate()?;
        match self.noise {
            NoiseSpec::FixedSigma(n) => Ok(n),
            NoiseSpec::IntrinsicSnr(snr) | NoiseSpec::ExtrinsicSnr(snr) => {
                let sigma = |i: usize, id| {
                    snr_to_sigma(snr[i], estimate_signal_variance(self, id))
                };
                Ok(NoiseConfig {
                    alpha: sigma(0, SeriesId::X)?,
                    beta: sigma(1, SeriesId::Y)?,
                    gamma: sigma(2, SeriesId::Z)?,
                })
            }
        }
    }
}

/// X, Y, Z and (for generated data) the topology that produced them.
#[derive(Debug, Clone, PartialEq)]
pub struct TrivariateSample {
    pub x: TimeSeries,
    pub y: TimeSeries,
    pub z: TimeSeries,
    pub truth: Option<Topology>,
}

impl TrivariateSample {
    /// Wraps observed series of equal length.
    pub fn observed(x: TimeSeries, y: TimeSeries, z: TimeSeries) -> Result<Self> {
        if x.len() != y.len() || y.len() != z.len() {
            return Err(Error::InvalidConfig(format!(
                "series lengths differ: {}, {}, {}",
                x.len(),
                y.len(),
                z.len()
            )));
        }
        Ok(Self {
            x,
            y,
            z,
            truth: None,
        })
    }

    pub fn len(&self) -> usize {
        self.x.len()
    }

    pub fn is_empty(&self) -> bool {
        self.x.is_empty()
    }

    pub fn series(&self, id: SeriesId) -> &TimeSeries {
        match id {
            SeriesId::X => &self.x,
            SeriesId::Y => &self.y,
            SeriesId::Z => &self.z,
        }
    }

    pub fn truth_label(&self) -> Option<TopologyLabel> {
        self.truth.map(Topology::label)
    }
}

/// SNR (dB) to noise standard deviation: `snr = 10 log10(var_signal / sigma^2)`.
pub fn snr_to_sigma(snr_db: f64, signal_variance: f64) -> Result<f64> {
    if !(signal_variance > 0.0) || !signal_variance.is_finite() {
        return Err(Error::NonPositiveVariance(signal_variance));
    }
    if !snr_db.is_finite() {
        return Err(Error::InvalidConfig(format!("SNR {snr_db} dB is not finite")));
    }
    Ok((signal_variance * 10f64.powf(-snr_db / 10.0)).sqrt())
}

/// Inverse of [`snr_to_sigma`].
pub fn sigma_to_snr(sigma: f64, signal_variance: f64) -> f64 {
    10.0 * (signal_variance / (sigma * sigma)).log10()
}

type VarianceKey = (Topology, u64, usize, SeriesId);

fn variance_cache() -> &'static Mutex<HashMap<VarianceKey, f64>> {
    static CACHE: OnceLock<Mutex<HashMap<VarianceKey, f64>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Variance of the noise-free version of one series.
///
/// Measured on a long noise-free calibration run with a fixed internal
/// seed, so the value depends only on topology, AR coefficient and burn-in.
pub fn estimate_signal_variance(config: &GeneratorConfig, series: SeriesId) -> f64 {
    let key = (
        config.topology,
        config.ar_coefficient.to_bits(),
        config.burn_in,
        series,
    );
    if let Some(&v) = variance_cache().lock().unwrap().get(&key) {
        return v;
    }
    let mut rng = sample_rng(CALIBRATION_SEED);
    let (x, y, z) = backbone(
        config.topology,
        CALIBRATION_LENGTH,
        config.ar_coefficient,
        config.burn_in,
        Placement::Intrinsic,
        NoiseConfig::ZERO,
        &mut rng,
    );
    let values = match series {
        SeriesId::X => x,
        SeriesId::Y => y,
        SeriesId::Z => z,
    };
    let v = variance(&values);
    variance_cache().lock().unwrap().insert(key, v);
    v
}

fn variance(values: &[f64]) -> f64 {
    let n = values.len() as f64;
    let mean = values.iter().sum::<f64>() / n;
    values.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / n
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Placement {
    Intrinsic,
    Extrinsic,
}

/// Draw order is fixed: all uniform inputs, then unit normals for X, Y, Z
/// in blocks. Extrinsic observer noise therefore never perturbs the
/// noise-free series, and zero sigmas reproduce the noise-free backbone.
fn backbone(
    topology: Topology,
    length: usize,
    ar: f64,
    burn_in: usize,
    placement: Placement,
    noise: NoiseConfig,
    rng: &mut IterationRng,
) -> (Vec<f64>, Vec<f64>, Vec<f64>) {
    let total = burn_in + length;
    let input = Uniform::new(INPUT_RANGE.0, INPUT_RANGE.1).expect("valid uniform range");
    let u: Vec<f64> = (0..total).map(|_| input.sample(rng)).collect();
    let mut normals = |n: usize| -> Vec<f64> {
        (0..n).map(|_| rng.sample::<f64, _>(StandardNormal)).collect()
    };
    let (nx, ny, nz) = (normals(total), normals(total), normals(total));

    let (inner, outer) = match placement {
        Placement::Intrinsic => (noise, NoiseConfig::ZERO),
        Placement::Extrinsic => (NoiseConfig::ZERO, noise),
    };

    let mut x = vec![0.0; total];
    let mut y = vec![0.0; total];
    let mut z = vec![0.0; total];
    let lag = |s: &[f64], t: usize, k: usize| if t >= k { s[t - k] } else { 0.0 };
    for t in 0..total {
        x[t] = u[t] + inner.alpha * nx[t];
        y[t] = ar * lag(&y, t, 1) + lag(&x, t, 1) + inner.beta * ny[t];
        let drive = match topology {
            Topology::Driver => lag(&x, t, 2),
            Topology::Indirect => lag(&y, t, 1),
        };
        z[t] = ar * lag(&z, t, 1) + drive + inner.gamma * nz[t];
    }
    if placement == Placement::Extrinsic {
        for t in 0..total {
            x[t] += outer.alpha * nx[t];
            y[t] += outer.beta * ny[t];
            z[t] += outer.gamma * nz[t];
        }
    }
    x.drain(..burn_in);
    y.drain(..burn_in);
    z.drain(..burn_in);
    (x, y, z)
}

/// Generates a sample with already-resolved noise sigmas.
///
/// `kind` selects the placement; `FixedSigma` and `Intrinsic` both place
/// noise inside the recurrences.
pub fn generate_with_noise(
    config: &GeneratorConfig,
    kind: NoiseKind,
    noise: NoiseConfig,
    rng: &mut IterationRng,
) -> Result<TrivariateSample> {
    noise.validate()?;
    let placement = match kind {
        NoiseKind::FixedSigma | NoiseKind::Intrinsic => Placement::Intrinsic,
        NoiseKind::Extrinsic => Placement::Extrinsic,
    };
    let (x, y, z) = backbone(
        config.topology,
        config.length,
        config.ar_coefficient,
        config.burn_in,
        placement,
        noise,
        rng,
    );
    for s in [&x, &y, &z] {
        if let Some(t) = s
            .iter()
            .position(|v| !v.is_finite() || v.abs() > config.magnitude_bound)
        {
            return Err(Error::Divergent {
                t,
                value: s[t],
                bound: config.magnitude_bound,
            });
        }
    }
    Ok(TrivariateSample {
        x: TimeSeries::new(x)?,
        y: TimeSeries::new(y)?,
        z: TimeSeries::new(z)?,
        truth: Some(config.topology),
    })
}

/// Generates one sample from `config`, seeded by `config.seed`.
pub fn generate(config: &GeneratorConfig) -> Result<TrivariateSample> {
    let noise = config.resolve_noise()?;
    let mut rng = sample_rng(config.seed);
    generate_with_noise(config, config.noise.kind(), noise, &mut rng)
}

fn expect_kind(config: &GeneratorConfig, kind: NoiseKind) -> Result<()> {
    if config.noise.kind() == kind {
        Ok(())
    } else {
        Err(Error::InvalidConfig(format!(
            "expected {kind} noise, got {}",
            config.noise.kind()
        )))
    }
}

pub fn generate_fixed(config: &GeneratorConfig) -> Result<TrivariateSample> {
    expect_kind(config, NoiseKind::FixedSigma)?;
    generate(config)
}

pub fn generate_intrinsic(config: &GeneratorConfig) -> Result<TrivariateSample> {
    expect_kind(config, NoiseKind::Intrinsic)?;
    generate(config)
}

pub fn generate_extrinsic(config: &GeneratorConfig) -> Result<TrivariateSample> {
    expect_kind(config, NoiseKind::Extrinsic)?;
    generate(config)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn fixed(topology: Topology, ar: f64, noise: NoiseConfig, seed: u64) -> GeneratorConfig {
        GeneratorConfig {
            ar_coefficient: ar,
            seed,
            ..GeneratorConfig::new(topology, 200, NoiseSpec::FixedSigma(noise))
        }
    }

    #[test]
    fn noise_free_driver_without_memory_is_a_pure_delay() {
        let s = generate_fixed(&fixed(Topology::Driver, 0.0, NoiseConfig::ZERO, 3)).unwrap();
        let (x, z) = (s.x.values(), s.z.values());
        for t in 2..s.len() {
            assert_eq!(z[t], x[t - 2]);
        }
    }

    #[test]
    fn noise_free_topologies_match_symbolic_unrolling() {
        // Unrolling with zero initial state:
        //   y_t = sum_k a^k x_{t-1-k}
        //   driver   z_t = sum_k a^k x_{t-2-k} = y_{t-1}
        //   indirect z_t = sum_k a^k y_{t-1-k}
        let a = 0.3;
        let burn = DEFAULT_BURN_IN;
        let d = generate_fixed(&fixed(Topology::Driver, a, NoiseConfig::ZERO, 9)).unwrap();
        let i = generate_fixed(&fixed(Topology::Indirect, a, NoiseConfig::ZERO, 9)).unwrap();
        assert_eq!(d.x, i.x);
        assert_eq!(d.y, i.y);

        // Rebuild the full (burn-in included) input from the same stream.
        let mut rng = sample_rng(9);
        let input = Uniform::new(-2.0, 2.0).unwrap();
        let u: Vec<f64> = (0..burn + 200).map(|_| input.sample(&mut rng)).collect();
        let unroll = |s: &[f64], t: usize, delay: usize| -> f64 {
            (0..=t.saturating_sub(delay))
                .take_while(|k| t >= delay + k)
                .map(|k| a.powi(k as i32) * s[t - delay - k])
                .sum()
        };
        let y_full: Vec<f64> = (0..u.len()).map(|t| unroll(&u, t, 1)).collect();
        for t in 0..200 {
            let tt = t + burn;
            assert!((d.y.values()[t] - y_full[tt]).abs() < 1e-12);
            assert!((d.z.values()[t] - unroll(&u, tt, 2)).abs() < 1e-12);
            assert!((i.z.values()[t] - unroll(&y_full, tt, 1)).abs() < 1e-12);
            assert!((d.z.values()[t] - y_full[tt - 1]).abs() < 1e-12);
        }
        // The indirect response carries one extra AR stage, so it differs.
        assert!(d.z.values().iter().zip(i.z.values()).any(|(a, b)| (a - b).abs() > 1e-3));
    }

    #[test]
    fn extrinsic_zero_noise_equals_fixed_zero_noise() {
        let base = fixed(Topology::Indirect, 0.3, NoiseConfig::ZERO, 21);
        let clean = generate_fixed(&base).unwrap();
        let mut rng = sample_rng(21);
        let ext = generate_with_noise(&base, NoiseKind::Extrinsic, NoiseConfig::ZERO, &mut rng)
            .unwrap();
        assert_eq!(clean, ext);
    }

    #[test]
    fn extrinsic_noise_leaves_underlying_series_intact() {
        let base = fixed(Topology::Driver, 0.3, NoiseConfig::ZERO, 5);
        let clean = generate_fixed(&base).unwrap();
        let noise = NoiseConfig::new(0.2, 0.7, 1.3).unwrap();
        let mut rng = sample_rng(5);
        let noisy = generate_with_noise(&base, NoiseKind::Extrinsic, noise, &mut rng).unwrap();
        // Removing the observer noise (same normal stream) recovers the clean series.
        let mut rng = sample_rng(5);
        let unit = NoiseConfig::new(1.0, 1.0, 1.0).unwrap();
        let pure = generate_with_noise(&base, NoiseKind::Extrinsic, unit, &mut rng).unwrap();
        for t in 0..clean.len() {
            let ex = pure.x.values()[t] - clean.x.values()[t];
            let ez = pure.z.values()[t] - clean.z.values()[t];
            assert!((noisy.x.values()[t] - clean.x.values()[t] - 0.2 * ex).abs() < 1e-12);
            assert!((noisy.z.values()[t] - clean.z.values()[t] - 1.3 * ez).abs() < 1e-12);
        }
    }

    #[test]
    fn identical_configs_are_bit_identical() {
        let cfg = GeneratorConfig::criteria_study(Topology::Driver, 300).with_seed(77);
        assert_eq!(generate(&cfg).unwrap(), generate(&cfg).unwrap());
        let other = cfg.clone().with_seed(78);
        assert_ne!(generate(&cfg).unwrap(), generate(&other).unwrap());
    }

    #[test]
    fn rejects_short_length_and_explosive_ar() {
        let mut cfg = GeneratorConfig::criteria_study(Topology::Driver, 2);
        assert!(matches!(generate(&cfg), Err(Error::InvalidConfig(_))));
        cfg.length = 10;
        cfg.ar_coefficient = 1.0;
        assert!(matches!(generate(&cfg), Err(Error::InvalidConfig(_))));
    }

    #[test]
    fn magnitude_guard_trips() {
        let mut cfg = GeneratorConfig::criteria_study(Topology::Driver, 50);
        cfg.magnitude_bound = 0.5;
        assert!(matches!(generate(&cfg), Err(Error::Divergent { .. })));
    }

    #[test]
    fn kind_specific_entry_points_check_the_kind() {
        let cfg = GeneratorConfig::criteria_study(Topology::Driver, 50);
        assert!(generate_intrinsic(&cfg).is_err());
        assert!(generate_extrinsic(&cfg).is_err());
        assert!(generate_fixed(&cfg).is_ok());
    }

    #[test]
    fn snr_to_sigma_examples() {
        assert_eq!(snr_to_sigma(0.0, 1.0).unwrap(), 1.0);
        // Var(U(-2,2)) = (b - a)^2 / 12 = 16/12.
        let var_u = 16.0 / 12.0;
        let s = snr_to_sigma(40.0, var_u).unwrap();
        assert!((s - (var_u * 1e-4f64).sqrt()).abs() < 1e-15);
        assert!((s - 0.011547).abs() < 1e-6);
        let s = snr_to_sigma(-40.0, var_u).unwrap();
        assert!((s - 115.47).abs() < 1e-2);
        assert!(snr_to_sigma(0.0, 0.0).is_err());
        assert!(snr_to_sigma(0.0, -1.0).is_err());
    }

    #[test]
    fn signal_variance_matches_analytic_values() {
        let var_u = 16.0 / 12.0;
        let phi2 = 0.09;
        let d = GeneratorConfig::criteria_study(Topology::Driver, 50);
        let i = GeneratorConfig::criteria_study(Topology::Indirect, 50);
        let rel = |a: f64, b: f64| ((a - b) / b).abs();
        assert!(rel(estimate_signal_variance(&d, SeriesId::X), var_u) < 0.01);
        // AR(1) driven by x: var_u / (1 - phi^2) ~= 1.465.
        let ar1 = var_u / (1.0 - phi2);
        assert!((ar1 - 1.465).abs() < 1e-3);
        assert!(rel(estimate_signal_variance(&d, SeriesId::Y), ar1) < 0.02);
        assert!(rel(estimate_signal_variance(&d, SeriesId::Z), ar1) < 0.02);
        // Two AR stages: var_u (1 + phi^2) / (1 - phi^2)^3.
        let ar2 = var_u * (1.0 + phi2) / (1.0 - phi2).powi(3);
        assert!(rel(estimate_signal_variance(&i, SeriesId::Z), ar2) < 0.02);
    }

    #[test]
    fn zero_db_on_x_gives_signal_std() {
        let cfg = GeneratorConfig::new(
            Topology::Driver,
            50,
            NoiseSpec::IntrinsicSnr([0.0, 10.0, 10.0]),
        );
        let noise = cfg.resolve_noise().unwrap();
        let var_x = estimate_signal_variance(&cfg, SeriesId::X);
        assert!((noise.alpha - var_x.sqrt()).abs() < 1e-12);
    }

    proptest! {
        #[test]
        fn snr_round_trip(snr in -60.0f64..60.0, log_var in -6.0f64..6.0) {
            let var = 10f64.powf(log_var);
            let sigma = snr_to_sigma(snr, var).unwrap();
            let back = sigma_to_snr(sigma, var);
            prop_assert!((back - snr).abs() <= 1e-10 * snr.abs().max(1.0));
        }
    }
}
