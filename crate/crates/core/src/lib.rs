//! Granger causality between three series plus a Monte Carlo harness for
//! measuring how often the inference goes wrong.
//!
//! The pieces compose bottom-up:
//!
//! - [`datagen`] simulates the driver and indirect topologies with fixed,
//!   intrinsic or extrinsic noise.
//! - [`regress`] fits the lagged least-squares models.
//! - [`criteria`] turns a restricted/unrestricted pair into a test outcome.
//! - [`granger`] runs the pairwise scan and the conditional follow-up.
//! - [`experiments`] estimates spurious and unidentified rates over sweeps
//!   and SNR phase spaces.
//! - [`io`] reads and writes the CSV, manifest and image formats.

// `!(x > 0.0)` is used on purpose: it also rejects NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod cli;
pub mod criteria;
pub mod datagen;
pub mod error;
pub mod experiments;
pub mod granger;
pub mod io;
pub mod regress;
pub mod rng;
pub mod series;
mod special;
pub mod topology;

pub use criteria::{chi2_sf, f_sf, two_proportion_z_test, Criterion, NestedRss, TestOutcome};
pub use datagen::{
    generate, GeneratorConfig, NoiseConfig, NoiseKind, NoiseSpec, TrivariateSample,
};
pub use error::{Error, Result};
pub use experiments::{
    estimate_rates, phase_space, sweep_sample_size, sweep_significance, PhaseGrid,
    PhaseSpaceConfig, RateEstimate,
};
pub use granger::{bivariate_test, infer_topology, GrangerConfig, Inference};
pub use regress::{fit_model, ols_fit, FitResult, ModelSpec};
pub use series::{LagSpec, TimeSeries};
pub use topology::{EdgeSet, Link, SeriesId, Topology, TopologyLabel};
