//! The `granger-lab` command line.
//!
//! Exit codes: 0 success, 2 invalid flags or input, 3 runtime failure,
//! 4 resume conflict. Every file-producing run writes a manifest that
//! `--from-manifest` turns back into the same invocation.

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::fs::{self, OpenOptions};
use std::io::{Read, Write};
use std::path::{Path, PathBuf};
use std::time::{SystemTime, UNIX_EPOCH};

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use crate::criteria::Criterion;
use crate::datagen::{generate, GeneratorConfig, NoiseConfig, NoiseKind, NoiseSpec};
use crate::error::Error;
use crate::experiments::{
    extract_plane, run_phase_space, uniform_grid, AlphaSweep, PhaseSpaceConfig, RateMetric,
    SizeSweep,
};
use crate::granger::{infer, GrangerConfig, DEFAULT_LAGS};
use crate::io::manifest::{Manifest, TOOL_VERSION};
use crate::io::{ppm, results, samples, write_atomic};
use crate::topology::{LinkDecision, SeriesId, Topology};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_RUNTIME: i32 = 3;
pub const EXIT_RESUME_CONFLICT: i32 = 4;

pub const THREADS_ENV: &str = "GRANGER_LAB_THREADS";
pub const MANIFEST_FILE: &str = "manifest.txt";
pub const ALPHA_SWEEP_FILE: &str = "sweep_alpha.csv";
pub const SIZE_SWEEP_FILE: &str = "sweep_n.csv";
pub const SIZE_PAIRS_FILE: &str = "sweep_n_pairs.csv";
pub const PHASE_FILE: &str = "phase_space.csv";

#[derive(Debug, Parser)]
#[command(name = "granger-lab", version, about = "Granger causality experiments")]
pub struct Cli {
    /// Re-run the invocation recorded in a manifest.
    #[arg(long, value_name = "PATH")]
    pub from_manifest: Option<PathBuf>,
    /// With --from-manifest: write outputs here instead.
    #[arg(long, value_name = "PATH", requires = "from_manifest")]
    pub out: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Option<Command>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Rates against the significance level at a fixed sample size.
    SweepAlpha(SweepAlphaArgs),
    /// Rates against the sample size at a fixed significance level.
    SweepN(SweepNArgs),
    /// Rates over a grid of per-series SNRs.
    PhaseSpace(PhaseSpaceArgs),
    /// Draw one plane of a phase-space CSV as a PPM heatmap.
    Render(RenderArgs),
    /// Infer the topology of an observed `t,x,y,z` CSV.
    Analyze(AnalyzeArgs),
    /// Write a synthetic sample as `t,x,y,z` CSV.
    Generate(GenerateArgs),
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::SweepAlpha(_) => "sweep-alpha",
            Command::SweepN(_) => "sweep-n",
            Command::PhaseSpace(_) => "phase-space",
            Command::Render(_) => "render",
            Command::Analyze(_) => "analyze",
            Command::Generate(_) => "generate",
        }
    }
}

#[derive(Debug, Args)]
pub struct SweepAlphaArgs {
    #[arg(long)]
    pub topology: Topology,
    #[arg(long, default_value_t = 50)]
    pub n: usize,
    /// lo:hi:step, inclusive.
    #[arg(long, default_value = "0.05:0.95:0.05")]
    pub alpha_grid: String,
    /// Comma-separated subset of lr,wald,rao,lm.
    #[arg(long, default_value = "lr,wald,rao")]
    pub criteria: String,
    #[arg(long, default_value_t = 1000)]
    pub iterations: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value_t = DEFAULT_LAGS)]
    pub lags: usize,
    #[arg(long, default_value = ".")]
    pub out: PathBuf,
}

#[derive(Debug, Args)]
pub struct SweepNArgs {
    #[arg(long)]
    pub topology: Topology,
    /// Defaults to 0.3 for driver and 0.2 for indirect.
    #[arg(long)]
    pub alpha: Option<f64>,
    /// lo:hi:step of sample sizes; defaults to 25 up to 300 (driver) or
    /// 175 (indirect) in steps of 25.
    #[arg(long)]
    pub n_grid: Option<String>,
    #[arg(long, default_value = "lr,wald,rao")]
    pub criteria: String,
    /// Cases per sample size.
    #[arg(long, default_value_t = 1000)]
    pub iterations: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value_t = DEFAULT_LAGS)]
    pub lags: usize,
    #[arg(long, default_value = ".")]
    pub out: PathBuf,
}

#[derive(Debug, Args)]
pub struct PhaseSpaceArgs {
    #[arg(long)]
    pub noise: NoiseKind,
    #[arg(long)]
    pub topology: Topology,
    /// `large` (n = 300, alpha = 0.05) or `small` (n = 50, alpha 0.3 for
    /// driver, 0.2 for indirect).
    #[arg(long, default_value = "large")]
    pub preset: String,
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long)]
    pub alpha: Option<f64>,
    #[arg(long, default_value = "wald")]
    pub criterion: Criterion,
    #[arg(long, default_value_t = 500)]
    pub iterations: usize,
    /// SNR axis in dB (lo:hi:step) shared by all three series.
    #[arg(long, default_value = "-40:40:5", allow_hyphen_values = true)]
    pub grid: String,
    #[arg(long, allow_hyphen_values = true)]
    pub grid_x: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub grid_y: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub grid_z: Option<String>,
    /// `always` runs both conditional tests for every sample; `gated` only
    /// after a complete pairwise scan.
    #[arg(long, default_value = "always")]
    pub conditional: String,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value_t = DEFAULT_LAGS)]
    pub lags: usize,
    /// Continue from the cells already in the output CSV.
    #[arg(long)]
    pub resume: bool,
    #[arg(long, default_value = ".")]
    pub out: PathBuf,
}

#[derive(Debug, Args)]
pub struct RenderArgs {
    /// Phase-space CSV written by `phase-space`.
    #[arg(long)]
    pub input: PathBuf,
    /// Axis held fixed: x, y or z.
    #[arg(long)]
    pub axis: SeriesId,
    /// SNR (dB) of the fixed axis; must lie on the grid.
    #[arg(long, allow_hyphen_values = true)]
    pub value: f64,
    /// spurious, unidentified, xz or yz.
    #[arg(long, default_value = "spurious")]
    pub metric: RateMetric,
    /// Pixels per cell along each side.
    #[arg(long, default_value_t = 16)]
    pub scale: usize,
    /// Output PPM path.
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Debug, Args)]
pub struct AnalyzeArgs {
    #[arg(long)]
    pub input: PathBuf,
    #[arg(long, default_value_t = DEFAULT_LAGS)]
    pub lags: usize,
    #[arg(long, default_value = "wald")]
    pub criterion: Criterion,
    #[arg(long, default_value_t = 0.05)]
    pub alpha: f64,
    /// Also run the conditional step when the scan is incomplete.
    #[arg(long)]
    pub always_conditional: bool,
    /// Print a JSON report instead of text.
    #[arg(long)]
    pub json: bool,
}

#[derive(Debug, Args)]
pub struct GenerateArgs {
    #[arg(long)]
    pub topology: Topology,
    #[arg(long, default_value_t = 300)]
    pub n: usize,
    /// fixed, intrinsic or extrinsic.
    #[arg(long, default_value = "fixed")]
    pub noise: NoiseKind,
    /// Noise sigmas for X,Y,Z with `--noise fixed`.
    #[arg(long, default_value = "0,0.1,0.5")]
    pub sigma: String,
    /// SNRs in dB for X,Y,Z with intrinsic or extrinsic noise.
    #[arg(long, default_value = "20,20,20", allow_hyphen_values = true)]
    pub snr: String,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Output CSV; standard output when absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

/// A failure carrying its process exit code.
#[derive(Debug)]
pub struct CliError {
    pub code: i32,
    pub message: String,
}

impl CliError {
    fn usage(message: impl Into<String>) -> Self {
        Self {
            code: EXIT_USAGE,
            message: message.into(),
        }
    }

    fn runtime(message: impl Into<String>) -> Self {
        Self {
            code: EXIT_RUNTIME,
            message: message.into(),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::InvalidConfig(_)
            | Error::InsufficientData { .. }
            | Error::OffGrid { .. }
            | Error::Parse { .. }
            | Error::ZeroIterations
            | Error::NonPositiveVariance(_) => EXIT_USAGE,
            _ => EXIT_RUNTIME,
        };
        let mut message = e.to_string();
        if matches!(e, Error::RankDeficient { .. }) {
            message += "\nhint: a series is constant or collinear with the others' lags; \
                        remove it, add variation, or lower --lags";
        }
        Self { code, message }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        Self::runtime(e.to_string())
    }
}

type CliResult<T> = Result<T, CliError>;

/// Runs the CLI on explicit arguments and returns the exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return e.exit_code();
        }
    };
    match dispatch(cli) {
        Ok(()) => EXIT_OK,
        Err(e) => {
            eprintln!("error: {}", e.message);
            e.code
        }
    }
}

/// Entry point for the binary.
pub fn main() -> i32 {
    if let Err(e) = configure_threads() {
        eprintln!("error: {}", e.message);
        return e.code;
    }
    run(std::env::args_os())
}

fn configure_threads() -> CliResult<()> {
    let Ok(raw) = std::env::var(THREADS_ENV) else {
        return Ok(());
    };
    let threads: usize = raw
        .trim()
        .parse()
        .ok()
        .filter(|&t| t > 0)
        .ok_or_else(|| CliError::usage(format!("{THREADS_ENV} must be a positive integer, got '{raw}'")))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build_global()
        .map_err(|e| CliError::runtime(e.to_string()))
}

fn dispatch(cli: Cli) -> CliResult<()> {
    match (cli.from_manifest, cli.command) {
        (Some(path), None) => rerun_manifest(&path, cli.out.as_deref()),
        (None, Some(cmd)) => execute(cmd),
        _ => Err(CliError::usage("expected a subcommand or --from-manifest")),
    }
}

fn execute(cmd: Command) -> CliResult<()> {
    let name = cmd.name();
    let started = unix_time();
    let mut manifest = Manifest::new();
    manifest.set("experiment", name)?;
    manifest.set("tool_version", TOOL_VERSION)?;
    let written = match cmd {
        Command::SweepAlpha(a) => sweep_alpha(a, &mut manifest)?,
        Command::SweepN(a) => sweep_n(a, &mut manifest)?,
        Command::PhaseSpace(a) => phase_space_cmd(a, &mut manifest)?,
        Command::Render(a) => render(a, &mut manifest)?,
        Command::Analyze(a) => return analyze(a),
        Command::Generate(a) => generate_cmd(a, &mut manifest)?,
    };
    let Some(manifest_path) = written else {
        return Ok(());
    };
    manifest.set("started_at", started)?;
    manifest.set("finished_at", unix_time())?;
    write_atomic(&manifest_path, manifest.to_string().as_bytes())?;
    Ok(())
}

fn unix_time() -> u64 {
    SystemTime::now()
        .duration_since(UNIX_EPOCH)
        .map(|d| d.as_secs())
        .unwrap_or(0)
}

/// Rebuilds the recorded argument vector, optionally redirecting `--out`.
pub fn manifest_args(manifest: &Manifest, out: Option<&Path>) -> CliResult<Vec<String>> {
    let command = manifest
        .get("experiment")
        .ok_or_else(|| CliError::usage("manifest has no 'experiment' entry"))?;
    let mut args = vec!["granger-lab".to_string(), command.to_string()];
    for (key, value) in manifest.section("arg") {
        let value = match (key, out) {
            ("out", Some(o)) => o.to_string_lossy().into_owned(),
            _ => value.to_string(),
        };
        match value.as_str() {
            "true" => args.push(format!("--{key}")),
            "false" => {}
            _ => args.push(format!("--{key}={value}")),
        }
    }
    Ok(args)
}

fn rerun_manifest(path: &Path, out: Option<&Path>) -> CliResult<()> {
    let text = fs::read_to_string(path)
        .map_err(|e| CliError::usage(format!("cannot read manifest {}: {e}", path.display())))?;
    let manifest: Manifest = text.parse()?;
    let args = manifest_args(&manifest, out)?;
    let cli = Cli::try_parse_from(&args)
        .map_err(|e| CliError::usage(format!("manifest arguments are invalid: {e}")))?;
    match cli.command {
        Some(cmd) => execute(cmd),
        None => Err(CliError::usage("manifest does not name a subcommand")),
    }
}

fn record(manifest: &mut Manifest, pairs: &[(&str, String)]) -> CliResult<()> {
    for (k, v) in pairs {
        manifest.set(&format!("arg.{k}"), v)?;
    }
    Ok(())
}

fn parse_grid(spec: &str, what: &str) -> CliResult<Vec<f64>> {
    let parts: Vec<&str> = spec.split(':').collect();
    let nums = parts
        .iter()
        .map(|p| p.trim().parse::<f64>())
        .collect::<Result<Vec<_>, _>>()
        .map_err(|_| CliError::usage(format!("{what}: cannot parse '{spec}' as lo:hi:step")))?;
    match nums[..] {
        [lo, hi, step] => uniform_grid(lo, hi, step).map_err(|e| CliError::usage(format!("{what}: {e}"))),
        [v] if v.is_finite() => Ok(vec![v]),
        _ => Err(CliError::usage(format!("{what}: expected lo:hi:step, got '{spec}'"))),
    }
}

fn parse_criteria(spec: &str) -> CliResult<Vec<Criterion>> {
    let mut out = Vec::new();
    for part in spec.split(',').map(str::trim).filter(|p| !p.is_empty()) {
        let c: Criterion = part.parse().map_err(|e: String| CliError::usage(e))?;
        if !out.contains(&c) {
            out.push(c);
        }
    }
    if out.is_empty() {
        return Err(CliError::usage("--criteria selects no criterion"));
    }
    Ok(out)
}

fn parse_triple(spec: &str, what: &str) -> CliResult<[f64; 3]> {
    let v = spec
        .split(',')
        .map(|p| p.trim().parse::<f64>())
        .collect::<Result<Vec<_>, _>>()
        .map_err(|_| CliError::usage(format!("{what}: cannot parse '{spec}'")))?;
    <[f64; 3]>::try_from(v).map_err(|_| CliError::usage(format!("{what}: expected three values")))
}

fn prepare_dir(dir: &Path) -> CliResult<()> {
    fs::create_dir_all(dir)
        .map_err(|e| CliError::runtime(format!("cannot create {}: {e}", dir.display())))
}

fn write_output(path: &Path, bytes: &[u8], manifest: &mut Manifest, key: &str) -> CliResult<()> {
    write_atomic(path, bytes)?;
    manifest.set(&format!("output.{key}"), path.display())?;
    Ok(())
}

fn sweep_alpha(a: SweepAlphaArgs, manifest: &mut Manifest) -> CliResult<Option<PathBuf>> {
    let alphas = parse_grid(&a.alpha_grid, "--alpha-grid")?;
    let criteria = parse_criteria(&a.criteria)?;
    record(
        manifest,
        &[
            ("topology", a.topology.to_string()),
            ("n", a.n.to_string()),
            ("alpha-grid", a.alpha_grid.clone()),
            ("criteria", a.criteria.clone()),
            ("iterations", a.iterations.to_string()),
            ("seed", a.seed.to_string()),
            ("lags", a.lags.to_string()),
            ("out", a.out.display().to_string()),
        ],
    )?;
    let sweep = AlphaSweep {
        generator: GeneratorConfig::criteria_study(a.topology, a.n),
        alphas,
        criteria: criteria.clone(),
        iterations: a.iterations,
        seed: a.seed,
        lags: a.lags,
        always_conditional: false,
    };
    let result = sweep.run()?;
    prepare_dir(&a.out)?;
    let mut buf = Vec::new();
    results::write_alpha_sweep(&result, &mut buf)?;
    write_output(&a.out.join(ALPHA_SWEEP_FILE), &buf, manifest, "sweep")?;
    for c in criteria {
        if let Some(best) = result.optimal_axis_value(c) {
            println!("optimal alpha ({c}): {best}");
        }
    }
    Ok(Some(a.out.join(MANIFEST_FILE)))
}

fn sweep_n(a: SweepNArgs, manifest: &mut Manifest) -> CliResult<Option<PathBuf>> {
    let preset = SizeSweep::preset(a.topology);
    let alpha = a.alpha.unwrap_or(preset.alpha);
    let grid_spec = a.n_grid.clone().unwrap_or_else(|| {
        format!("25:{}:25", preset.sizes.last().copied().unwrap_or(25))
    });
    let sizes = parse_grid(&grid_spec, "--n-grid")?
        .into_iter()
        .map(|v| {
            if v >= 1.0 && v.fract() == 0.0 {
                Ok(v as usize)
            } else {
                Err(CliError::usage(format!("--n-grid: {v} is not a positive integer")))
            }
        })
        .collect::<CliResult<Vec<_>>>()?;
    let criteria = parse_criteria(&a.criteria)?;
    record(
        manifest,
        &[
            ("topology", a.topology.to_string()),
            ("alpha", alpha.to_string()),
            ("n-grid", grid_spec.clone()),
            ("criteria", a.criteria.clone()),
            ("iterations", a.iterations.to_string()),
            ("seed", a.seed.to_string()),
            ("lags", a.lags.to_string()),
            ("out", a.out.display().to_string()),
        ],
    )?;
    let sweep = SizeSweep {
        alpha,
        sizes,
        criteria: criteria.clone(),
        cases: a.iterations,
        seed: a.seed,
        lags: a.lags,
        ..preset
    };
    let result = sweep.run()?;
    prepare_dir(&a.out)?;
    let mut buf = Vec::new();
    results::write_size_sweep(&result, &mut buf)?;
    write_output(&a.out.join(SIZE_SWEEP_FILE), &buf, manifest, "sweep")?;
    let mut buf = Vec::new();
    results::write_size_pairs(&result, &mut buf)?;
    write_output(&a.out.join(SIZE_PAIRS_FILE), &buf, manifest, "pairs")?;
    let last = result.sweep.axis.last().copied().unwrap_or(0.0);
    for c in criteria {
        if let Some(e) = result.sweep.estimates(c).last() {
            println!(
                "n={last} ({c}): spurious {} unidentified {}",
                e.spurious_rate, e.unidentified_rate
            );
        }
    }
    Ok(Some(a.out.join(MANIFEST_FILE)))
}

fn phase_config(a: &PhaseSpaceArgs) -> CliResult<(PhaseSpaceConfig, Vec<(&'static str, String)>)> {
    if !matches!(a.noise, NoiseKind::Intrinsic | NoiseKind::Extrinsic) {
        return Err(CliError::usage("--noise must be intrinsic or extrinsic"));
    }
    let mut cfg = match a.preset.as_str() {
        "large" => PhaseSpaceConfig::preset_large_sample(a.noise, a.topology),
        "small" => PhaseSpaceConfig::preset_small_sample(a.noise, a.topology),
        other => return Err(CliError::usage(format!("unknown preset '{other}'"))),
    };
    cfg.always_conditional = match a.conditional.as_str() {
        "always" => true,
        "gated" => false,
        other => return Err(CliError::usage(format!("unknown --conditional '{other}'"))),
    };
    if let Some(n) = a.n {
        cfg.n = n;
    }
    if let Some(alpha) = a.alpha {
        cfg.alpha = alpha;
    }
    cfg.criterion = a.criterion;
    cfg.iterations = a.iterations;
    cfg.seed = a.seed;
    cfg.lags = a.lags;
    let axis_specs = [&a.grid_x, &a.grid_y, &a.grid_z].map(|g| g.clone().unwrap_or_else(|| a.grid.clone()));
    for (i, spec) in axis_specs.iter().enumerate() {
        cfg.grids[i] = parse_grid(spec, ["--grid-x", "--grid-y", "--grid-z"][i])?;
    }
    cfg.validate()?;
    let [gx, gy, gz] = axis_specs;
    let pairs = vec![
        ("noise", a.noise.to_string()),
        ("topology", a.topology.to_string()),
        ("preset", a.preset.clone()),
        ("n", cfg.n.to_string()),
        ("alpha", cfg.alpha.to_string()),
        ("criterion", cfg.criterion.to_string()),
        ("iterations", cfg.iterations.to_string()),
        ("grid", a.grid.clone()),
        ("grid-x", gx),
        ("grid-y", gy),
        ("grid-z", gz),
        ("conditional", a.conditional.clone()),
        ("seed", cfg.seed.to_string()),
        ("lags", cfg.lags.to_string()),
        ("out", a.out.display().to_string()),
    ];
    Ok((cfg, pairs))
}

/// Drops a trailing partial line left by an interrupted run.
fn complete_lines(path: &Path) -> CliResult<String> {
    let mut text = String::new();
    fs::File::open(path)?.read_to_string(&mut text)?;
    if let Some(cut) = text.rfind('\n') {
        text.truncate(cut + 1);
    } else {
        text.clear();
    }
    fs::write(path, &text)?;
    Ok(text)
}

fn conflict(message: impl Into<String>) -> CliError {
    CliError {
        code: EXIT_RESUME_CONFLICT,
        message: format!("cannot resume: {}", message.into()),
    }
}

fn phase_space_cmd(a: PhaseSpaceArgs, manifest: &mut Manifest) -> CliResult<Option<PathBuf>> {
    let (cfg, pairs) = phase_config(&a)?;
    record(manifest, &pairs)?;
    prepare_dir(&a.out)?;
    let csv_path = a.out.join(PHASE_FILE);
    let manifest_path = a.out.join(MANIFEST_FILE);

    let mut completed = BTreeMap::new();
    let mut have_header = false;
    if a.resume && csv_path.exists() {
        // The seed is not part of the results table, so a previous
        // manifest must agree on it.
        if let Ok(text) = fs::read_to_string(&manifest_path) {
            let previous: Manifest = text.parse().map_err(|e: Error| conflict(e.to_string()))?;
            let seed = previous.get("arg.seed");
            if seed.is_some_and(|s| s != cfg.seed.to_string()) {
                return Err(conflict("the checkpoint was written with a different seed"));
            }
        }
        let text = complete_lines(&csv_path)?;
        if !text.is_empty() {
            let rows = results::read_phase_rows(text.as_bytes()).map_err(|e| conflict(e.to_string()))?;
            completed = results::completed_cells(&cfg, &rows).map_err(|c| conflict(c.0))?;
            have_header = true;
        }
    }
    let file = OpenOptions::new()
        .create(true)
        .write(true)
        .append(have_header)
        .truncate(!have_header)
        .open(&csv_path)?;
    let mut writer = results::PhaseRowWriter::new(std::io::BufWriter::new(file), !have_header)?;
    let total = cfg.cell_count();
    let grid = run_phase_space(&cfg, &completed, |cell, rates| {
        writer.write(&results::PhaseRow::for_cell(&cfg, cell, *rates))?;
        eprintln!("cell {}/{total}", cell + 1);
        Ok(())
    })?;
    drop(writer);
    // Rewrite in canonical order so resumed runs end byte-identical.
    let canonical = results::phase_grid_to_string(&grid)?;
    write_output(&csv_path, canonical.as_bytes(), manifest, "results")?;
    println!("{} cells written to {}", grid.cells.len(), csv_path.display());
    Ok(Some(manifest_path))
}

fn render(a: RenderArgs, manifest: &mut Manifest) -> CliResult<Option<PathBuf>> {
    record(
        manifest,
        &[
            ("input", a.input.display().to_string()),
            ("axis", a.axis.as_char().to_ascii_lowercase().to_string()),
            ("value", a.value.to_string()),
            ("metric", metric_name(a.metric).to_string()),
            ("scale", a.scale.to_string()),
            ("out", a.out.display().to_string()),
        ],
    )?;
    let file = fs::File::open(&a.input)
        .map_err(|e| CliError::usage(format!("cannot open {}: {e}", a.input.display())))?;
    let grid = results::read_phase_grid(std::io::BufReader::new(file))?;
    let plane = extract_plane(&grid, a.axis, a.value, a.metric)?;
    let image = ppm::render_plane(&plane, a.scale)?;
    let mut buf = Vec::new();
    ppm::write_ppm(&image, &mut buf)?;
    if let Some(parent) = a.out.parent().filter(|p| !p.as_os_str().is_empty()) {
        prepare_dir(parent)?;
    }
    write_output(&a.out, &buf, manifest, "image")?;
    Ok(Some(sibling_manifest(&a.out)))
}

fn metric_name(m: RateMetric) -> &'static str {
    match m {
        RateMetric::Spurious => "spurious",
        RateMetric::Unidentified => "unidentified",
        RateMetric::LinkXz => "xz",
        RateMetric::LinkYz => "yz",
    }
}

fn sibling_manifest(path: &Path) -> PathBuf {
    let mut name = path.file_name().unwrap_or_default().to_os_string();
    name.push(".manifest.txt");
    path.with_file_name(name)
}

#[derive(Serialize)]
struct LinkReport {
    link: String,
    statistic: f64,
    p_value: f64,
    causal: bool,
}

impl From<&LinkDecision> for LinkReport {
    fn from(d: &LinkDecision) -> Self {
        Self {
            link: d.link.to_string(),
            statistic: d.outcome.statistic,
            p_value: d.outcome.p_value,
            causal: d.decided_causal,
        }
    }
}

#[derive(Serialize)]
struct AnalyzeReport {
    topology: String,
    edges: Vec<String>,
    criterion: Criterion,
    alpha: f64,
    lags: usize,
    n_obs: usize,
    pairwise: Vec<LinkReport>,
    conditional: Vec<LinkReport>,
}

fn analyze(a: AnalyzeArgs) -> CliResult<()> {
    let file = fs::File::open(&a.input)
        .map_err(|e| CliError::usage(format!("cannot open {}: {e}", a.input.display())))?;
    let sample = samples::read_sample(std::io::BufReader::new(file))?;
    let config = GrangerConfig::new(a.criterion, a.alpha)
        .with_lags(a.lags, a.lags)
        .with_always_conditional(a.always_conditional);
    config.validate()?;
    let inference = infer(&sample, &config)?;
    let report = AnalyzeReport {
        topology: inference.label.to_string(),
        edges: inference.edges.links().map(|l| l.to_string()).collect(),
        criterion: a.criterion,
        alpha: a.alpha,
        lags: a.lags,
        n_obs: sample.len(),
        pairwise: inference.scan.iter().map(LinkReport::from).collect(),
        conditional: inference.conditional.iter().flatten().map(LinkReport::from).collect(),
    };
    let stdout = std::io::stdout();
    let mut out = stdout.lock();
    if a.json {
        serde_json::to_writer_pretty(&mut out, &report).map_err(|e| CliError::runtime(e.to_string()))?;
        writeln!(out)?;
        return Ok(());
    }
    writeln!(out, "topology: {}", report.topology)?;
    writeln!(out, "edges: {}", inference.edges)?;
    writeln!(
        out,
        "criterion {} at alpha {} with {} lags on {} observations",
        report.criterion, report.alpha, report.lags, report.n_obs
    )?;
    writeln!(out, "pairwise:")?;
    for l in &report.pairwise {
        writeln!(out, "  {:<6} stat {:>12.4} p {:<10.4e} {}", l.link, l.statistic, l.p_value, verdict(l.causal))?;
    }
    if !report.conditional.is_empty() {
        writeln!(out, "conditional:")?;
        for l in &report.conditional {
            writeln!(out, "  {:<6} stat {:>12.4} p {:<10.4e} {}", l.link, l.statistic, l.p_value, verdict(l.causal))?;
        }
    }
    Ok(())
}

fn verdict(causal: bool) -> &'static str {
    if causal {
        "causal"
    } else {
        "-"
    }
}

fn generate_cmd(a: GenerateArgs, manifest: &mut Manifest) -> CliResult<Option<PathBuf>> {
    let noise = match a.noise {
        NoiseKind::FixedSigma => {
            let [s0, s1, s2] = parse_triple(&a.sigma, "--sigma")?;
            NoiseSpec::FixedSigma(NoiseConfig::new(s0, s1, s2)?)
        }
        NoiseKind::Intrinsic => NoiseSpec::IntrinsicSnr(parse_triple(&a.snr, "--snr")?),
        NoiseKind::Extrinsic => NoiseSpec::ExtrinsicSnr(parse_triple(&a.snr, "--snr")?),
    };
    let config = GeneratorConfig::new(a.topology, a.n, noise).with_seed(a.seed);
    let sample = generate(&config)?;
    let text = samples::sample_to_string(&sample)?;
    let Some(path) = a.out else {
        print!("{text}");
        return Ok(None);
    };
    record(
        manifest,
        &[
            ("topology", a.topology.to_string()),
            ("n", a.n.to_string()),
            ("noise", a.noise.to_string()),
            ("sigma", a.sigma.clone()),
            ("snr", a.snr.clone()),
            ("seed", a.seed.to_string()),
            ("out", path.display().to_string()),
        ],
    )?;
    if let Some(parent) = path.parent().filter(|p| !p.as_os_str().is_empty()) {
        prepare_dir(parent)?;
    }
    write_output(&path, text.as_bytes(), manifest, "sample")?;
    Ok(Some(sibling_manifest(&path)))
}
