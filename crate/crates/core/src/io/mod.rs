//! File formats: sample and result CSVs, run manifests and PPM heatmaps.
//!
//! Every float is written with Rust's shortest round-trip formatting, so a
//! value read back parses to the identical `f64` and equal inputs always
//! produce identical bytes.

pub mod manifest;
pub mod ppm;
pub mod results;
pub mod samples;

use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::Path;

use crate::error::{Error, Result};

/// Shortest decimal that parses back to `v`.
pub fn fmt_f64(v: f64) -> String {
    format!("{v}")
}

fn csv_writer<W: Write>(w: W) -> csv::Writer<W> {
    csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(w)
}

fn csv_reader<R: std::io::Read>(r: R) -> csv::Reader<R> {
    csv::ReaderBuilder::new().trim(csv::Trim::All).from_reader(r)
}

fn csv_error(e: csv::Error) -> Error {
    match e.position() {
        Some(pos) => Error::Parse {
            row: (pos.line() as usize).saturating_sub(1),
            message: e.to_string(),
        },
        None => Error::Io(e.to_string()),
    }
}

fn parse_field<T: std::str::FromStr>(record: &csv::StringRecord, row: usize, i: usize, name: &str) -> Result<T> {
    let raw = record.get(i).ok_or_else(|| Error::Parse {
        row,
        message: format!("missing column '{name}'"),
    })?;
    raw.parse().map_err(|_| Error::Parse {
        row,
        message: format!("column '{name}': cannot parse '{raw}'"),
    })
}

fn check_header(reader: &mut csv::Reader<impl std::io::Read>, expected: &[&str]) -> Result<()> {
    let header = reader.headers().map_err(csv_error)?;
    if header.iter().ne(expected.iter().copied()) {
        return Err(Error::Parse {
            row: 0,
            message: format!(
                "expected header '{}', found '{}'",
                expected.join(","),
                header.iter().collect::<Vec<_>>().join(",")
            ),
        });
    }
    Ok(())
}

/// Writes `bytes` to `path` through a sibling temporary file and a rename,
/// so readers never observe a half-written output.
pub fn write_atomic(path: &Path, bytes: &[u8]) -> Result<()> {
    let tmp = path.with_extension("tmp");
    {
        let mut w = BufWriter::new(File::create(&tmp)?);
        w.write_all(bytes)?;
        w.flush()?;
    }
    std::fs::rename(&tmp, path)?;
    Ok(())
}
