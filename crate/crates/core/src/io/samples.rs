//! `t,x,y,z` sample files.

use std::io::{Read, Write};

use super::{check_header, csv_error, csv_reader, csv_writer, fmt_f64, parse_field};
use crate::datagen::TrivariateSample;
use crate::error::{Error, Result};
use crate::series::TimeSeries;

pub const SAMPLE_HEADER: [&str; 4] = ["t", "x", "y", "z"];

pub fn write_sample<W: Write>(sample: &TrivariateSample, w: W) -> Result<()> {
    let mut out = csv_writer(w);
    out.write_record(SAMPLE_HEADER).map_err(csv_error)?;
    let (x, y, z) = (sample.x.values(), sample.y.values(), sample.z.values());
    for t in 0..sample.len() {
        out.write_record([t.to_string(), fmt_f64(x[t]), fmt_f64(y[t]), fmt_f64(z[t])])
            .map_err(csv_error)?;
    }
    out.flush()?;
    Ok(())
}

pub fn sample_to_string(sample: &TrivariateSample) -> Result<String> {
    let mut buf = Vec::new();
    write_sample(sample, &mut buf)?;
    Ok(String::from_utf8(buf).expect("csv output is ASCII"))
}

/// Reads an observed sample. Rows must hold four finite numbers; the
/// first offending row is reported.
pub fn read_sample<R: Read>(r: R) -> Result<TrivariateSample> {
    let mut reader = csv_reader(r);
    check_header(&mut reader, &SAMPLE_HEADER)?;
    let mut cols: [Vec<f64>; 3] = Default::default();
    for (i, record) in reader.records().enumerate() {
        let row = i + 1;
        let record = record.map_err(csv_error)?;
        if record.len() != 4 {
            return Err(Error::Parse {
                row,
                message: format!("expected 4 fields, found {}", record.len()),
            });
        }
        parse_field::<f64>(&record, row, 0, "t")?;
        for (j, name) in ["x", "y", "z"].into_iter().enumerate() {
            let v: f64 = parse_field(&record, row, j + 1, name)?;
            if !v.is_finite() {
                return Err(Error::Parse {
                    row,
                    message: format!("column '{name}' is not finite ({v})"),
                });
            }
            cols[j].push(v);
        }
    }
    if cols[0].is_empty() {
        return Err(Error::Parse {
            row: 1,
            message: "no data rows".into(),
        });
    }
    let [x, y, z] = cols;
    TrivariateSample::observed(TimeSeries::new(x)?, TimeSeries::new(y)?, TimeSeries::new(z)?)
}
