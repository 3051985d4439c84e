//! Time series and lag orders.

use crate::error::{Error, Result};

/// An ordered, non-empty sequence of finite samples.
#[derive(Debug, Clone, PartialEq)]
pub struct TimeSeries {
    values: Vec<f64>,
}

impl TimeSeries {
    pub fn new(values: Vec<f64>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::InvalidConfig("time series must not be empty".into()));
        }
        if let Some(t) = values.iter().position(|v| !v.is_finite()) {
            return Err(Error::InvalidConfig(format!("non-finite value at t={t}")));
        }
        Ok(Self { values })
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.values.len()
    }

    /// Always false; kept for clippy's `len_without_is_empty`.
    #[inline]
    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    #[inline]
    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn into_values(self) -> Vec<f64> {
        self.values
    }
}

impl AsRef<[f64]> for TimeSeries {
    fn as_ref(&self) -> &[f64] {
        &self.values
    }
}

/// Look-back of a regression: lags of the target and of each predictor.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LagSpec {
    pub target_lags: usize,
    pub predictor_lags: Vec<usize>,
}

impl LagSpec {
    pub fn new(target_lags: usize, predictor_lags: Vec<usize>) -> Result<Self> {
        if target_lags == 0 || predictor_lags.contains(&0) {
            return Err(Error::InvalidConfig("lag counts must be at least 1".into()));
        }
        Ok(Self {
            target_lags,
            predictor_lags,
        })
    }

    pub fn max_lag(&self) -> usize {
        self.predictor_lags
            .iter()
            .copied()
            .fold(self.target_lags, usize::max)
    }

    /// Number of slope coefficients, excluding any intercept.
    pub fn n_params(&self) -> usize {
        self.target_lags + self.predictor_lags.iter().sum::<usize>()
    }
}
