//! Monte Carlo estimation of spurious and unidentified causality rates:
//! significance-level sweeps, sample-size sweeps and SNR phase spaces.
//!
//! Rates follow the key links of each truth:
//!
//! | truth    | spurious when accepted | unidentified when rejected |
//! |----------|------------------------|----------------------------|
//! | driver   | Y->Z                   | X->Z                       |
//! | indirect | X->Z                   | Y->Z                       |
//!
//! Whole-topology classification counts are kept alongside for diagnostics.
//!
//! Iteration `i` of cell `c` always draws from `iteration_rng(seed, c, i)`,
//! and per-iteration results are reduced in index order, so estimates do
//! not depend on the number of worker threads.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::Serialize;

use crate::criteria::{compare_criteria, CriteriaComparison, Criterion};
use crate::datagen::{generate_with_noise, GeneratorConfig, NoiseConfig, NoiseKind, NoiseSpec};
use crate::error::{Error, Result};
use crate::granger::{GrangerConfig, LinkEvidence, DEFAULT_LAGS};
use crate::rng::iteration_rng;
use crate::topology::{classify, Link, SeriesId, Topology};

/// Degenerate iterations tolerated before an estimate is abandoned.
pub const MAX_DEGENERATE_FRACTION: f64 = 0.01;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RateEstimate {
    pub spurious_rate: f64,
    pub unidentified_rate: f64,
    /// Iterations that produced a decision (rank-deficient ones excluded).
    pub iterations: usize,
    pub spurious_count: usize,
    pub unidentified_count: usize,
    /// Acceptance rate of each forward link in the final topology.
    pub per_link_rates: BTreeMap<Link, f64>,
    /// Whole-topology classification: any extra link.
    pub topology_spurious_count: usize,
    /// Whole-topology classification: any missing link, X->Y included.
    pub topology_unidentified_count: usize,
    pub degenerate: usize,
}

impl RateEstimate {
    fn standard_error(rate: f64, n: usize) -> f64 {
        (rate * (1.0 - rate) / n as f64).sqrt()
    }

    pub fn se_spurious(&self) -> f64 {
        Self::standard_error(self.spurious_rate, self.iterations)
    }

    pub fn se_unidentified(&self) -> f64 {
        Self::standard_error(self.unidentified_rate, self.iterations)
    }

    pub fn link_rate(&self, link: Link) -> f64 {
        self.per_link_rates.get(&link).copied().unwrap_or(0.0)
    }

    /// Distance of (unidentified, spurious) from the ideal point (0, 0).
    pub fn distance_to_ideal(&self) -> f64 {
        self.spurious_rate.hypot(self.unidentified_rate)
    }

    pub fn topology_spurious_rate(&self) -> f64 {
        self.topology_spurious_count as f64 / self.iterations as f64
    }

    pub fn topology_unidentified_rate(&self) -> f64 {
        self.topology_unidentified_count as f64 / self.iterations as f64
    }
}

/// Per-iteration fits; `None` marks a rank-deficient sample.
pub type Trials = Vec<Option<LinkEvidence>>;

/// Generates `iterations` samples in cell `cell` and fits every model the
/// two-step procedure may need.
pub fn collect_trials(
    generator: &GeneratorConfig,
    noise: NoiseConfig,
    lags: &GrangerConfig,
    iterations: usize,
    master_seed: u64,
    cell: u64,
) -> Result<Trials> {
    if iterations == 0 {
        return Err(Error::ZeroIterations);
    }
    generator.validate()?;
    lags.validate()?;
    let kind = generator.noise.kind();
    (0..iterations)
        .into_par_iter()
        .map(|i| {
            let mut rng = iteration_rng(master_seed, cell, i as u64);
            let sample = generate_with_noise(generator, kind, noise, &mut rng)?;
            match LinkEvidence::collect(&sample, lags, false) {
                Ok(ev) => Ok(Some(ev)),
                Err(Error::RankDeficient { .. }) => Ok(None),
                Err(e) => Err(e),
            }
        })
        .collect()
}

/// Reduces trials to rates for one criterion and significance level.
pub fn tally(
    trials: &[Option<LinkEvidence>],
    truth: Topology,
    criterion: Criterion,
    significance: f64,
    always_conditional: bool,
) -> Result<RateEstimate> {
    let attempted = trials.len();
    if attempted == 0 {
        return Err(Error::ZeroIterations);
    }
    let degenerate = trials.iter().filter(|t| t.is_none()).count();
    if degenerate as f64 > MAX_DEGENERATE_FRACTION * attempted as f64 {
        return Err(Error::TooManyDegenerate {
            failed: degenerate,
            attempted,
        });
    }
    let spurious_link = truth.spurious_key_link();
    let unidentified_link = truth.unidentified_key_link();

    let mut spurious = 0;
    let mut unidentified = 0;
    let mut topo_spurious = 0;
    let mut topo_unidentified = 0;
    let mut link_counts = [0usize; 3];
    for ev in trials.iter().flatten() {
        let inference = ev.infer(criterion, significance, always_conditional);
        let edges = inference.edges;
        spurious += usize::from(edges.contains(spurious_link));
        unidentified += usize::from(!edges.contains(unidentified_link));
        let c = classify(inference.label, truth.label());
        topo_spurious += usize::from(c.spurious);
        topo_unidentified += usize::from(c.unidentified);
        for (count, link) in link_counts.iter_mut().zip(Link::FORWARD) {
            *count += usize::from(edges.contains(link));
        }
    }
    let valid = attempted - degenerate;
    let rate = |c: usize| c as f64 / valid as f64;
    Ok(RateEstimate {
        spurious_rate: rate(spurious),
        unidentified_rate: rate(unidentified),
        iterations: valid,
        spurious_count: spurious,
        unidentified_count: unidentified,
        per_link_rates: Link::FORWARD
            .into_iter()
            .zip(link_counts)
            .map(|(l, c)| (l, rate(c)))
            .collect(),
        topology_spurious_count: topo_spurious,
        topology_unidentified_count: topo_unidentified,
        degenerate,
    })
}

/// Monte Carlo rates for one generator and test configuration.
pub fn estimate_rates(
    generator: &GeneratorConfig,
    granger: &GrangerConfig,
    iterations: usize,
    master_seed: u64,
) -> Result<RateEstimate> {
    estimate_rates_in_cell(generator, granger, iterations, master_seed, 0)
}

pub fn estimate_rates_in_cell(
    generator: &GeneratorConfig,
    granger: &GrangerConfig,
    iterations: usize,
    master_seed: u64,
    cell: u64,
) -> Result<RateEstimate> {
    let noise = generator.resolve_noise()?;
    let trials = collect_trials(generator, noise, granger, iterations, master_seed, cell)?;
    tally(
        &trials,
        generator.topology,
        granger.criterion,
        granger.significance,
        granger.always_conditional,
    )
}

/// Rates along one swept parameter, one sequence per criterion.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepResult {
    pub axis: Vec<f64>,
    pub series: BTreeMap<Criterion, Vec<RateEstimate>>,
}

impl SweepResult {
    pub fn estimates(&self, criterion: Criterion) -> &[RateEstimate] {
        self.series.get(&criterion).map(Vec::as_slice).unwrap_or(&[])
    }

    /// Axis value whose (unidentified, spurious) point lies closest to
    /// (0, 0); the smallest such value on ties.
    pub fn optimal_axis_value(&self, criterion: Criterion) -> Option<f64> {
        self.estimates(criterion)
            .iter()
            .zip(&self.axis)
            .fold(None, |best: Option<(f64, f64)>, (est, &a)| {
                let d = est.distance_to_ideal();
                match best {
                    Some((bd, _)) if bd <= d => best,
                    _ => Some((d, a)),
                }
            })
            .map(|(_, a)| a)
    }
}

fn check_criteria(criteria: &[Criterion]) -> Result<()> {
    if criteria.is_empty() {
        return Err(Error::InvalidConfig("no criteria selected".into()));
    }
    Ok(())
}

/// Significance-level sweep at a fixed sample size.
#[derive(Debug, Clone, PartialEq)]
pub struct AlphaSweep {
    pub generator: GeneratorConfig,
    pub alphas: Vec<f64>,
    pub criteria: Vec<Criterion>,
    pub iterations: usize,
    pub seed: u64,
    pub lags: usize,
    pub always_conditional: bool,
}

impl AlphaSweep {
    /// 50 points, fixed sigmas, alpha from 0.05 to 0.95, 1000 iterations.
    pub fn preset(topology: Topology) -> Self {
        Self {
            generator: GeneratorConfig::criteria_study(topology, 50),
            alphas: (1..20).map(|i| i as f64 / 20.0).collect(),
            criteria: Criterion::PRESETS.to_vec(),
            iterations: 1000,
            seed: 0,
            lags: DEFAULT_LAGS,
            always_conditional: false,
        }
    }

    /// Every (alpha, criterion) estimate is computed from the same samples,
    /// exactly as independent `estimate_rates` calls with this seed would.
    pub fn run(&self) -> Result<SweepResult> {
        check_criteria(&self.criteria)?;
        if self.alphas.is_empty() {
            return Err(Error::InvalidConfig("empty significance grid".into()));
        }
        let granger = GrangerConfig::new(Criterion::Wald, 0.5).with_lags(self.lags, self.lags);
        for &a in &self.alphas {
            GrangerConfig { significance: a, ..granger }.validate()?;
        }
        let noise = self.generator.resolve_noise()?;
        let trials =
            collect_trials(&self.generator, noise, &granger, self.iterations, self.seed, 0)?;
        let mut series = BTreeMap::new();
        for &c in &self.criteria {
            let row = self
                .alphas
                .iter()
                .map(|&a| tally(&trials, self.generator.topology, c, a, self.always_conditional))
                .collect::<Result<Vec<_>>>()?;
            series.insert(c, row);
        }
        Ok(SweepResult {
            axis: self.alphas.clone(),
            series,
        })
    }
}

pub fn sweep_significance(
    topology: Topology,
    n_points: usize,
    alphas: &[f64],
    criteria: &[Criterion],
    iterations: usize,
    seed: u64,
) -> Result<SweepResult> {
    AlphaSweep {
        generator: GeneratorConfig::criteria_study(topology, n_points),
        alphas: alphas.to_vec(),
        criteria: criteria.to_vec(),
        iterations,
        seed,
        ..AlphaSweep::preset(topology)
    }
    .run()
}

/// Sample-size sweep at a fixed significance level.
#[derive(Debug, Clone, PartialEq)]
pub struct SizeSweep {
    pub generator: GeneratorConfig,
    pub alpha: f64,
    pub sizes: Vec<usize>,
    pub criteria: Vec<Criterion>,
    pub cases: usize,
    pub seed: u64,
    pub lags: usize,
    pub always_conditional: bool,
}

/// Pairwise criterion comparison at one sample size.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SizeComparison {
    pub n: usize,
    pub a: Criterion,
    pub b: Criterion,
    pub comparison: CriteriaComparison,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SizeSweepResult {
    pub sweep: SweepResult,
    pub comparisons: Vec<SizeComparison>,
}

impl SizeSweepResult {
    pub fn comparison(&self, n: usize, a: Criterion, b: Criterion) -> Option<&CriteriaComparison> {
        self.comparisons
            .iter()
            .find(|c| c.n == n && ((c.a, c.b) == (a, b) || (c.a, c.b) == (b, a)))
            .map(|c| &c.comparison)
    }
}

impl SizeSweep {
    /// The significance level that suits each topology at small samples.
    pub fn preset_alpha(topology: Topology) -> f64 {
        match topology {
            Topology::Driver => 0.3,
            Topology::Indirect => 0.2,
        }
    }

    pub fn preset(topology: Topology) -> Self {
        let max = match topology {
            Topology::Driver => 300,
            Topology::Indirect => 175,
        };
        Self {
            generator: GeneratorConfig::criteria_study(topology, 50),
            alpha: Self::preset_alpha(topology),
            sizes: (1..=max / 25).map(|k| 25 * k).collect(),
            criteria: Criterion::PRESETS.to_vec(),
            cases: 1000,
            seed: 0,
            lags: DEFAULT_LAGS,
            always_conditional: false,
        }
    }

    pub fn run(&self) -> Result<SizeSweepResult> {
        check_criteria(&self.criteria)?;
        if self.sizes.is_empty() {
            return Err(Error::InvalidConfig("empty sample-size grid".into()));
        }
        if self.sizes.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::InvalidConfig("sample sizes must increase".into()));
        }
        let granger =
            GrangerConfig::new(Criterion::Wald, self.alpha).with_lags(self.lags, self.lags);
        granger.validate()?;

        let mut series: BTreeMap<Criterion, Vec<RateEstimate>> =
            self.criteria.iter().map(|&c| (c, Vec::new())).collect();
        let mut comparisons = Vec::new();
        for &n in &self.sizes {
            let generator = GeneratorConfig {
                length: n,
                ..self.generator.clone()
            };
            let noise = generator.resolve_noise()?;
            let trials = collect_trials(&generator, noise, &granger, self.cases, self.seed, n as u64)?;
            let mut at_n = Vec::with_capacity(self.criteria.len());
            for &c in &self.criteria {
                let est = tally(&trials, generator.topology, c, self.alpha, self.always_conditional)?;
                at_n.push((c, est.clone()));
                series.get_mut(&c).expect("criterion present").push(est);
            }
            for i in 0..at_n.len() {
                for j in i + 1..at_n.len() {
                    comparisons.push(SizeComparison {
                        n,
                        a: at_n[i].0,
                        b: at_n[j].0,
                        comparison: compare_criteria(&at_n[i].1, &at_n[j].1)?,
                    });
                }
            }
        }
        Ok(SizeSweepResult {
            sweep: SweepResult {
                axis: self.sizes.iter().map(|&n| n as f64).collect(),
                series,
            },
            comparisons,
        })
    }
}

pub fn sweep_sample_size(
    topology: Topology,
    alpha: f64,
    sizes: &[usize],
    criteria: &[Criterion],
    cases: usize,
    seed: u64,
) -> Result<SizeSweepResult> {
    SizeSweep {
        alpha,
        sizes: sizes.to_vec(),
        criteria: criteria.to_vec(),
        cases,
        seed,
        ..SizeSweep::preset(topology)
    }
    .run()
}

/// Rates stored per phase-space cell; mirrors the results file columns.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CellRates {
    pub spurious_rate: f64,
    pub unidentified_rate: f64,
    pub rate_xz: f64,
    pub rate_yz: f64,
    pub iterations: usize,
}

impl From<&RateEstimate> for CellRates {
    fn from(e: &RateEstimate) -> Self {
        Self {
            spurious_rate: e.spurious_rate,
            unidentified_rate: e.unidentified_rate,
            rate_xz: e.link_rate(Link::XZ),
            rate_yz: e.link_rate(Link::YZ),
            iterations: e.iterations,
        }
    }
}

/// Which rate of a cell to read.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RateMetric {
    Spurious,
    Unidentified,
    LinkXz,
    LinkYz,
}

impl RateMetric {
    pub fn of(self, cell: &CellRates) -> f64 {
        match self {
            RateMetric::Spurious => cell.spurious_rate,
            RateMetric::Unidentified => cell.unidentified_rate,
            RateMetric::LinkXz => cell.rate_xz,
            RateMetric::LinkYz => cell.rate_yz,
        }
    }
}

impl std::str::FromStr for RateMetric {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s {
            "spurious" | "spurious_rate" => Ok(RateMetric::Spurious),
            "unidentified" | "unidentified_rate" => Ok(RateMetric::Unidentified),
            "xz" | "rate_xz" => Ok(RateMetric::LinkXz),
            "yz" | "rate_yz" => Ok(RateMetric::LinkYz),
            other => Err(format!("unknown metric '{other}'")),
        }
    }
}

/// Inclusive uniform grid `lo, lo + step, ..., hi`, rounded to 12 decimals.
pub fn uniform_grid(lo: f64, hi: f64, step: f64) -> Result<Vec<f64>> {
    if !(lo.is_finite() && hi.is_finite() && step.is_finite()) || step <= 0.0 || hi < lo {
        return Err(Error::InvalidConfig(format!("bad grid {lo}:{hi}:{step}")));
    }
    let count = ((hi - lo) / step + 1e-9).floor() as usize + 1;
    Ok((0..count)
        .map(|i| ((lo + i as f64 * step) * 1e12).round() / 1e12)
        .collect())
}

/// Default SNR axis: -40 to 40 dB in 5 dB steps.
pub fn default_snr_axis() -> Vec<f64> {
    uniform_grid(-40.0, 40.0, 5.0).expect("valid default grid")
}

#[derive(Debug, Clone, PartialEq)]
pub struct PhaseSpaceConfig {
    /// Intrinsic or extrinsic.
    pub noise_kind: NoiseKind,
    pub topology: Topology,
    pub n: usize,
    pub alpha: f64,
    pub criterion: Criterion,
    pub iterations: usize,
    /// SNR axes in dB for X, Y and Z.
    pub grids: [Vec<f64>; 3],
    pub seed: u64,
    pub lags: usize,
    pub always_conditional: bool,
}

impl PhaseSpaceConfig {
    /// Large sample, strict level: n = 300, alpha = 0.05, Wald, 500
    /// iterations. Both conditional tests run for every sample so the whole
    /// phase space is covered, including cells where the pairwise scan
    /// would stop early.
    pub fn preset_large_sample(noise_kind: NoiseKind, topology: Topology) -> Self {
        Self {
            noise_kind,
            topology,
            n: 300,
            alpha: 0.05,
            criterion: Criterion::Wald,
            iterations: 500,
            grids: [default_snr_axis(), default_snr_axis(), default_snr_axis()],
            seed: 0,
            lags: DEFAULT_LAGS,
            always_conditional: true,
        }
    }

    /// Small sample, lenient level: n = 50 with the topology's preset alpha.
    pub fn preset_small_sample(noise_kind: NoiseKind, topology: Topology) -> Self {
        Self {
            n: 50,
            alpha: SizeSweep::preset_alpha(topology),
            ..Self::preset_large_sample(noise_kind, topology)
        }
    }

    pub fn cell_count(&self) -> usize {
        self.grids.iter().map(Vec::len).product()
    }

    /// Row-major over (X, Y, Z): Z varies fastest.
    pub fn coordinates(&self, cell: usize) -> [f64; 3] {
        let [gx, gy, gz] = &self.grids;
        let iz = cell % gz.len();
        let iy = (cell / gz.len()) % gy.len();
        let ix = cell / (gz.len() * gy.len());
        [gx[ix], gy[iy], gz[iz]]
    }

    pub fn validate(&self) -> Result<()> {
        if !matches!(self.noise_kind, NoiseKind::Intrinsic | NoiseKind::Extrinsic) {
            return Err(Error::InvalidConfig(
                "phase spaces need intrinsic or extrinsic noise".into(),
            ));
        }
        if self.iterations == 0 {
            return Err(Error::ZeroIterations);
        }
        if self.grids.iter().any(Vec::is_empty) {
            return Err(Error::InvalidConfig("empty SNR axis".into()));
        }
        if self.grids.iter().flatten().any(|v| !v.is_finite()) {
            return Err(Error::InvalidConfig("SNR values must be finite".into()));
        }
        if self.cell_count() > u32::MAX as usize {
            return Err(Error::InvalidConfig("too many cells".into()));
        }
        self.granger().validate()
    }

    fn granger(&self) -> GrangerConfig {
        GrangerConfig::new(self.criterion, self.alpha)
            .with_lags(self.lags, self.lags)
            .with_always_conditional(self.always_conditional)
    }

    fn generator(&self, snr: [f64; 3]) -> GeneratorConfig {
        let noise = match self.noise_kind {
            NoiseKind::Extrinsic => NoiseSpec::ExtrinsicSnr(snr),
            _ => NoiseSpec::IntrinsicSnr(snr),
        };
        GeneratorConfig::new(self.topology, self.n, noise)
    }

    /// Rates for one cell.
    pub fn run_cell(&self, cell: usize) -> Result<CellRates> {
        let generator = self.generator(self.coordinates(cell));
        let est =
            estimate_rates_in_cell(&generator, &self.granger(), self.iterations, self.seed, cell as u64)?;
        Ok(CellRates::from(&est))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct PhaseGrid {
    pub axes: [Vec<f64>; 3],
    /// Row-major over (X, Y, Z), see [`PhaseSpaceConfig::coordinates`].
    pub cells: Vec<CellRates>,
    pub topology: Topology,
    pub noise_kind: NoiseKind,
    pub n: usize,
    pub alpha: f64,
    pub criterion: Criterion,
    pub iterations: usize,
}

impl PhaseGrid {
    pub fn index(&self, ix: usize, iy: usize, iz: usize) -> usize {
        (ix * self.axes[1].len() + iy) * self.axes[2].len() + iz
    }

    pub fn cell(&self, ix: usize, iy: usize, iz: usize) -> &CellRates {
        &self.cells[self.index(ix, iy, iz)]
    }

    /// Position of `value` on an axis, tolerating round-off of 1e-9 dB.
    pub fn axis_position(&self, axis: SeriesId, value: f64) -> Result<usize> {
        self.axes[axis as usize]
            .iter()
            .position(|&v| (v - value).abs() <= 1e-9)
            .ok_or(Error::OffGrid {
                axis: axis.as_char(),
                value,
            })
    }
}

/// Runs every cell, skipping those already in `completed` (indexed like
/// `PhaseGrid::cells`). `on_cell` sees each newly finished cell in order.
pub fn run_phase_space(
    config: &PhaseSpaceConfig,
    completed: &BTreeMap<usize, CellRates>,
    mut on_cell: impl FnMut(usize, &CellRates) -> Result<()>,
) -> Result<PhaseGrid> {
    config.validate()?;
    let mut cells = Vec::with_capacity(config.cell_count());
    for cell in 0..config.cell_count() {
        let rates = match completed.get(&cell) {
            Some(r) => *r,
            None => {
                let r = config.run_cell(cell)?;
                on_cell(cell, &r)?;
                r
            }
        };
        cells.push(rates);
    }
    Ok(PhaseGrid {
        axes: config.grids.clone(),
        cells,
        topology: config.topology,
        noise_kind: config.noise_kind,
        n: config.n,
        alpha: config.alpha,
        criterion: config.criterion,
        iterations: config.iterations,
    })
}

pub fn phase_space(config: &PhaseSpaceConfig) -> Result<PhaseGrid> {
    run_phase_space(config, &BTreeMap::new(), |_, _| Ok(()))
}

/// A 2-D slice of a phase grid. `values[r][c]` sits at
/// (`row_values[r]`, `col_values[c]`).
#[derive(Debug, Clone, PartialEq)]
pub struct Plane {
    pub fixed_axis: SeriesId,
    pub fixed_value: f64,
    /// First free axis, along columns.
    pub col_axis: SeriesId,
    pub col_values: Vec<f64>,
    /// Second free axis, along rows.
    pub row_axis: SeriesId,
    pub row_values: Vec<f64>,
    pub values: Vec<Vec<f64>>,
}

/// The plane at `axis = value_db`. Columns follow the first remaining axis
/// and rows the second, both ascending as stored in the grid.
pub fn extract_plane(
    grid: &PhaseGrid,
    axis: SeriesId,
    value_db: f64,
    metric: RateMetric,
) -> Result<Plane> {
    let fixed = grid.axis_position(axis, value_db)?;
    let free: Vec<SeriesId> = SeriesId::ALL.into_iter().filter(|&a| a != axis).collect();
    let (col_axis, row_axis) = (free[0], free[1]);
    let cols = &grid.axes[col_axis as usize];
    let rows = &grid.axes[row_axis as usize];
    let values = (0..rows.len())
        .map(|r| {
            (0..cols.len())
                .map(|c| {
                    let mut idx = [0usize; 3];
                    idx[axis as usize] = fixed;
                    idx[col_axis as usize] = c;
                    idx[row_axis as usize] = r;
                    metric.of(grid.cell(idx[0], idx[1], idx[2]))
                })
                .collect()
        })
        .collect();
    Ok(Plane {
        fixed_axis: axis,
        fixed_value: grid.axes[axis as usize][fixed],
        col_axis,
        col_values: cols.clone(),
        row_axis,
        row_values: rows.clone(),
        values,
    })
}
