//! CSV and JSON files: series in and out, result documents, bound dumps.
//!
//! Series files hold one time step per row and one dimension per column.
//! Numbers are written in the shortest form that parses back to the same
//! `f64`.

use std::fs;
use std::path::Path;

use serde::de::DeserializeOwned;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::types::{Grid, TimeSeries};

pub fn ingest_csv(path: impl AsRef<Path>) -> Result<TimeSeries> {
    let path = path.as_ref();
    let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    parse_csv(&text).map_err(|e| match e {
        Error::EmptySeries => Error::EmptyFile(path.to_path_buf()),
        other => other,
    })
}

/// Parses series text. A first row with any non-numeric field is taken as a
/// header and skipped. Line numbers in errors are 1-based file lines.
pub fn parse_csv(text: &str) -> Result<TimeSeries> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(false)
        .flexible(true)
        .trim(csv::Trim::All)
        .comment(Some(b'#'))
        .from_reader(text.as_bytes());
    let mut values = Vec::new();
    let mut dims = 0;
    let mut first = true;
    for record in reader.records() {
        let record = record?;
        let line = record.position().map_or(0, |p| p.line() as usize);
        if record.iter().all(str::is_empty) {
            continue;
        }
        if first {
            first = false;
            if record.iter().any(|f| f.parse::<f64>().is_err()) {
                dims = record.len();
                continue;
            }
        }
        if dims == 0 {
            dims = record.len();
        } else if record.len() != dims {
            return Err(Error::RaggedRows {
                line,
                expected: dims,
                found: record.len(),
            });
        }
        let step = values.len() / dims;
        for (col, field) in record.iter().enumerate() {
            let v: f64 = field.parse().map_err(|_| Error::Parse {
                line,
                column: col + 1,
                message: format!("not a number: {field:?}"),
            })?;
            if !v.is_finite() {
                return Err(Error::NonFiniteValue { step: step + 1, dim: col + 1 });
            }
            values.push(v);
        }
    }
    if values.is_empty() {
        return Err(Error::EmptySeries);
    }
    TimeSeries::new(values, dims)
}

pub fn emit_csv(series: &TimeSeries) -> String {
    let mut out = String::with_capacity(series.values().len() * 20);
    for p in series.points() {
        push_row(&mut out, p);
    }
    out
}

fn push_row(out: &mut String, row: &[f64]) {
    for (i, v) in row.iter().enumerate() {
        if i > 0 {
            out.push(',');
        }
        out.push_str(&v.to_string());
    }
    out.push('\n');
}

pub fn write_series(path: impl AsRef<Path>, series: &TimeSeries) -> Result<()> {
    write_text(path, &emit_csv(series))
}

pub fn write_text(path: impl AsRef<Path>, text: &str) -> Result<()> {
    let path = path.as_ref();
    if let Some(parent) = path.parent().filter(|p| !p.as_os_str().is_empty()) {
        fs::create_dir_all(parent).map_err(|e| Error::io(parent, e))?;
    }
    fs::write(path, text).map_err(|e| Error::io(path, e))
}

pub fn write_json<T: Serialize + ?Sized>(path: impl AsRef<Path>, value: &T) -> Result<()> {
    let mut text = serde_json::to_string_pretty(value)?;
    text.push('\n');
    write_text(path, &text)
}

pub fn read_json<T: DeserializeOwned>(path: impl AsRef<Path>) -> Result<T> {
    let path = path.as_ref();
    let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    Ok(serde_json::from_str(&text)?)
}

/// Lower- and upper-bound matrices as one CSV: each block is introduced by
/// comment lines naming it, rows are start indices in the first series and
/// columns start indices in the second, both from 1.
pub fn bounds_csv(min_path: &Grid, max_path: &Grid, min_of_max_path: f64) -> String {
    let mut out = format!("# min_of_max_path={min_of_max_path}\n");
    for (name, g) in [("min_path", min_path), ("max_path", max_path)] {
        out.push_str(&format!(
            "# {name} rows=a 1..{} cols=b 1..{}\n",
            g.rows(),
            g.cols()
        ));
        for r in 0..g.rows() {
            push_row(&mut out, g.row(r));
        }
    }
    out
}
