//! Result tables: phase-space cells and sweep rows.

use std::collections::BTreeMap;
use std::io::{Read, Write};

use super::{check_header, csv_error, csv_reader, csv_writer, fmt_f64, parse_field};
use crate::criteria::Criterion;
use crate::datagen::NoiseKind;
use crate::error::{Error, Result};
use crate::experiments::{CellRates, PhaseGrid, PhaseSpaceConfig, SizeSweepResult, SweepResult};
use crate::topology::Topology;

pub const PHASE_HEADER: [&str; 13] = [
    "snr_x_db",
    "snr_y_db",
    "snr_z_db",
    "topology",
    "noise_kind",
    "n",
    "alpha",
    "criterion",
    "iterations",
    "spurious_rate",
    "unidentified_rate",
    "rate_xz",
    "rate_yz",
];

pub const ALPHA_SWEEP_HEADER: [&str; 6] = [
    "alpha",
    "criterion",
    "spurious_rate",
    "unidentified_rate",
    "se_spurious",
    "se_unidentified",
];

pub const SIZE_SWEEP_HEADER: [&str; 6] = [
    "n",
    "criterion",
    "spurious_rate",
    "unidentified_rate",
    "se_spurious",
    "se_unidentified",
];

pub const PAIRS_HEADER: [&str; 9] = [
    "n",
    "criterion_a",
    "criterion_b",
    "spurious_z",
    "spurious_p_value",
    "spurious_different",
    "unidentified_z",
    "unidentified_p_value",
    "unidentified_different",
];

/// One results-file row.
#[derive(Debug, Clone, PartialEq)]
pub struct PhaseRow {
    pub snr_db: [f64; 3],
    pub topology: Topology,
    pub noise_kind: NoiseKind,
    pub n: usize,
    pub alpha: f64,
    pub criterion: Criterion,
    pub rates: CellRates,
}

impl PhaseRow {
    fn fields(&self) -> [String; 13] {
        let r = &self.rates;
        [
            fmt_f64(self.snr_db[0]),
            fmt_f64(self.snr_db[1]),
            fmt_f64(self.snr_db[2]),
            self.topology.to_string(),
            self.noise_kind.to_string(),
            self.n.to_string(),
            fmt_f64(self.alpha),
            self.criterion.to_string(),
            r.iterations.to_string(),
            fmt_f64(r.spurious_rate),
            fmt_f64(r.unidentified_rate),
            fmt_f64(r.rate_xz),
            fmt_f64(r.rate_yz),
        ]
    }

    /// Row for cell `cell` of a run with `config`.
    pub fn for_cell(config: &PhaseSpaceConfig, cell: usize, rates: CellRates) -> Self {
        Self {
            snr_db: config.coordinates(cell),
            topology: config.topology,
            noise_kind: config.noise_kind,
            n: config.n,
            alpha: config.alpha,
            criterion: config.criterion,
            rates,
        }
    }
}

/// Incremental writer used for checkpointing; flushes after every row.
pub struct PhaseRowWriter<W: Write> {
    inner: csv::Writer<W>,
}

impl<W: Write> PhaseRowWriter<W> {
    pub fn new(w: W, write_header: bool) -> Result<Self> {
        let mut inner = csv_writer(w);
        if write_header {
            inner.write_record(PHASE_HEADER).map_err(csv_error)?;
            inner.flush()?;
        }
        Ok(Self { inner })
    }

    pub fn write(&mut self, row: &PhaseRow) -> Result<()> {
        self.inner.write_record(row.fields()).map_err(csv_error)?;
        self.inner.flush()?;
        Ok(())
    }
}

pub fn write_phase_grid<W: Write>(grid: &PhaseGrid, w: W) -> Result<()> {
    let mut out = PhaseRowWriter::new(w, true)?;
    for (i, rates) in grid.cells.iter().enumerate() {
        let [nx, ny, nz] = [grid.axes[0].len(), grid.axes[1].len(), grid.axes[2].len()];
        let (ix, iy, iz) = (i / (ny * nz), (i / nz) % ny, i % nz);
        debug_assert!(ix < nx);
        out.write(&PhaseRow {
            snr_db: [grid.axes[0][ix], grid.axes[1][iy], grid.axes[2][iz]],
            topology: grid.topology,
            noise_kind: grid.noise_kind,
            n: grid.n,
            alpha: grid.alpha,
            criterion: grid.criterion,
            rates: *rates,
        })?;
    }
    Ok(())
}

pub fn phase_grid_to_string(grid: &PhaseGrid) -> Result<String> {
    let mut buf = Vec::new();
    write_phase_grid(grid, &mut buf)?;
    Ok(String::from_utf8(buf).expect("csv output is ASCII"))
}

pub fn read_phase_rows<R: Read>(r: R) -> Result<Vec<PhaseRow>> {
    let mut reader = csv_reader(r);
    check_header(&mut reader, &PHASE_HEADER)?;
    let mut rows = Vec::new();
    for (i, record) in reader.records().enumerate() {
        let row = i + 1;
        let rec = record.map_err(csv_error)?;
        let f = |j: usize| parse_field::<f64>(&rec, row, j, PHASE_HEADER[j]);
        let rate = |j: usize| -> Result<f64> {
            let v = f(j)?;
            if (0.0..=1.0).contains(&v) {
                Ok(v)
            } else {
                Err(Error::Parse {
                    row,
                    message: format!("{} = {v} is not a rate", PHASE_HEADER[j]),
                })
            }
        };
        let snr_db = [f(0)?, f(1)?, f(2)?];
        if snr_db.iter().any(|v| !v.is_finite()) {
            return Err(Error::Parse {
                row,
                message: "SNR coordinates must be finite".into(),
            });
        }
        rows.push(PhaseRow {
            snr_db,
            topology: parse_field(&rec, row, 3, PHASE_HEADER[3])?,
            noise_kind: parse_field(&rec, row, 4, PHASE_HEADER[4])?,
            n: parse_field(&rec, row, 5, PHASE_HEADER[5])?,
            alpha: f(6)?,
            criterion: parse_field(&rec, row, 7, PHASE_HEADER[7])?,
            rates: CellRates {
                iterations: parse_field(&rec, row, 8, PHASE_HEADER[8])?,
                spurious_rate: rate(9)?,
                unidentified_rate: rate(10)?,
                rate_xz: rate(11)?,
                rate_yz: rate(12)?,
            },
        });
    }
    Ok(rows)
}

fn sorted_axis(values: impl Iterator<Item = f64>) -> Vec<f64> {
    let mut v: Vec<f64> = values.collect();
    v.sort_by(f64::total_cmp);
    v.dedup();
    v
}

/// Rebuilds a complete grid from results rows. Rows may come in any order
/// but must cover the full product of the observed axes exactly once and
/// share one run configuration.
pub fn phase_grid_from_rows(rows: &[PhaseRow]) -> Result<PhaseGrid> {
    let first = rows.first().ok_or_else(|| Error::Parse {
        row: 1,
        message: "no data rows".into(),
    })?;
    let axes = [0, 1, 2].map(|a| sorted_axis(rows.iter().map(|r| r.snr_db[a])));
    let total: usize = axes.iter().map(Vec::len).product();
    let mut cells: Vec<Option<CellRates>> = vec![None; total];
    for (i, r) in rows.iter().enumerate() {
        let row = i + 1;
        let same_run = r.topology == first.topology
            && r.noise_kind == first.noise_kind
            && r.n == first.n
            && r.alpha == first.alpha
            && r.criterion == first.criterion;
        if !same_run {
            return Err(Error::Parse {
                row,
                message: "row belongs to a different run configuration".into(),
            });
        }
        let pos = |a: usize| axes[a].iter().position(|&v| v == r.snr_db[a]).expect("axis built from rows");
        let idx = (pos(0) * axes[1].len() + pos(1)) * axes[2].len() + pos(2);
        if cells[idx].replace(r.rates).is_some() {
            return Err(Error::Parse {
                row,
                message: format!("duplicate cell {:?}", r.snr_db),
            });
        }
    }
    let missing = cells.iter().filter(|c| c.is_none()).count();
    if missing > 0 {
        return Err(Error::Parse {
            row: rows.len(),
            message: format!("{missing} grid cells are missing"),
        });
    }
    Ok(PhaseGrid {
        axes,
        cells: cells.into_iter().flatten().collect(),
        topology: first.topology,
        noise_kind: first.noise_kind,
        n: first.n,
        alpha: first.alpha,
        criterion: first.criterion,
        iterations: rows.iter().map(|r| r.rates.iterations).max().unwrap_or(0),
    })
}

pub fn read_phase_grid<R: Read>(r: R) -> Result<PhaseGrid> {
    phase_grid_from_rows(&read_phase_rows(r)?)
}

/// Why an existing results file cannot seed a resumed run.
#[derive(Debug, Clone, PartialEq)]
pub struct ResumeConflict(pub String);

/// Maps checkpoint rows onto cell indices of `config`.
pub fn completed_cells(
    config: &PhaseSpaceConfig,
    rows: &[PhaseRow],
) -> std::result::Result<BTreeMap<usize, CellRates>, ResumeConflict> {
    let mut done = BTreeMap::new();
    for (i, r) in rows.iter().enumerate() {
        let row = i + 1;
        let mismatch = [
            (r.topology != config.topology, "topology"),
            (r.noise_kind != config.noise_kind, "noise_kind"),
            (r.n != config.n, "n"),
            (r.alpha != config.alpha, "alpha"),
            (r.criterion != config.criterion, "criterion"),
        ];
        if let Some((_, field)) = mismatch.iter().find(|(bad, _)| *bad) {
            return Err(ResumeConflict(format!("row {row}: {field} differs from the requested run")));
        }
        let mut idx = [0usize; 3];
        for (a, slot) in idx.iter_mut().enumerate() {
            *slot = config.grids[a]
                .iter()
                .position(|&v| v == r.snr_db[a])
                .ok_or_else(|| ResumeConflict(format!("row {row}: {:?} is not on the requested grid", r.snr_db)))?;
        }
        let cell = (idx[0] * config.grids[1].len() + idx[1]) * config.grids[2].len() + idx[2];
        if done.insert(cell, r.rates).is_some() {
            return Err(ResumeConflict(format!("row {row}: duplicate cell {:?}", r.snr_db)));
        }
    }
    Ok(done)
}

pub fn write_alpha_sweep<W: Write>(sweep: &SweepResult, w: W) -> Result<()> {
    let mut out = csv_writer(w);
    out.write_record(ALPHA_SWEEP_HEADER).map_err(csv_error)?;
    for (i, &alpha) in sweep.axis.iter().enumerate() {
        for (criterion, estimates) in &sweep.series {
            let e = &estimates[i];
            out.write_record([
                fmt_f64(alpha),
                criterion.to_string(),
                fmt_f64(e.spurious_rate),
                fmt_f64(e.unidentified_rate),
                fmt_f64(e.se_spurious()),
                fmt_f64(e.se_unidentified()),
            ])
            .map_err(csv_error)?;
        }
    }
    out.flush()?;
    Ok(())
}

pub fn write_size_sweep<W: Write>(result: &SizeSweepResult, w: W) -> Result<()> {
    let mut out = csv_writer(w);
    out.write_record(SIZE_SWEEP_HEADER).map_err(csv_error)?;
    let sweep = &result.sweep;
    for (i, &n) in sweep.axis.iter().enumerate() {
        for (criterion, estimates) in &sweep.series {
            let e = &estimates[i];
            out.write_record([
                (n as usize).to_string(),
                criterion.to_string(),
                fmt_f64(e.spurious_rate),
                fmt_f64(e.unidentified_rate),
                fmt_f64(e.se_spurious()),
                fmt_f64(e.se_unidentified()),
            ])
            .map_err(csv_error)?;
        }
    }
    out.flush()?;
    Ok(())
}

pub fn write_size_pairs<W: Write>(result: &SizeSweepResult, w: W) -> Result<()> {
    let mut out = csv_writer(w);
    out.write_record(PAIRS_HEADER).map_err(csv_error)?;
    for c in &result.comparisons {
        let (s, u) = (&c.comparison.spurious, &c.comparison.unidentified);
        out.write_record([
            c.n.to_string(),
            c.a.to_string(),
            c.b.to_string(),
            fmt_f64(s.z),
            fmt_f64(s.p_value),
            s.different.to_string(),
            fmt_f64(u.z),
            fmt_f64(u.p_value),
            u.different.to_string(),
        ])
        .map_err(csv_error)?;
    }
    out.flush()?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn grid() -> PhaseGrid {
        let axes = [vec![-40.0, 0.5], vec![0.0], vec![-20.0, 0.1 + 0.2, 20.0]];
        let cells = (0..6)
            .map(|i| CellRates {
                spurious_rate: i as f64 / 7.0,
                unidentified_rate: 1.0 / 3.0,
                rate_xz: 0.0,
                rate_yz: 1.0,
                iterations: 500,
            })
            .collect();
        PhaseGrid {
            axes,
            cells,
            topology: Topology::Indirect,
            noise_kind: NoiseKind::Extrinsic,
            n: 300,
            alpha: 0.05,
            criterion: Criterion::Wald,
            iterations: 500,
        }
    }

    #[test]
    fn phase_grid_round_trips_bit_exactly() {
        let g = grid();
        let text = phase_grid_to_string(&g).unwrap();
        assert!(text.starts_with(&(PHASE_HEADER.join(",") + "\n")));
        assert!(text.contains("\n-40,0,-20,indirect,extrinsic,300,0.05,wald,500,0,"));
        let back = read_phase_grid(text.as_bytes()).unwrap();
        assert_eq!(back, g);
        assert_eq!(phase_grid_to_string(&back).unwrap(), text);
    }

    #[test]
    fn shuffled_rows_rebuild_the_same_grid() {
        let g = grid();
        let mut rows = read_phase_rows(phase_grid_to_string(&g).unwrap().as_bytes()).unwrap();
        rows.reverse();
        assert_eq!(phase_grid_from_rows(&rows).unwrap(), g);
        rows.pop();
        assert!(phase_grid_from_rows(&rows).is_err());
    }

    #[test]
    fn resume_rows_must_match_config() {
        let mut cfg = PhaseSpaceConfig::preset_large_sample(NoiseKind::Extrinsic, Topology::Indirect);
        cfg.grids = grid().axes;
        let rows = read_phase_rows(phase_grid_to_string(&grid()).unwrap().as_bytes()).unwrap();
        assert_eq!(completed_cells(&cfg, &rows[..2]).unwrap().len(), 2);
        cfg.alpha = 0.1;
        assert!(completed_cells(&cfg, &rows).is_err());
        cfg.alpha = 0.05;
        cfg.grids[1] = vec![5.0];
        assert!(completed_cells(&cfg, &rows).is_err());
    }
}
