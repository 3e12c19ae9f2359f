// SPDX-License-Identifier: MIT OR Apache-2.0

//! Reading a series from delimited text.
//!
//! The delimiter is a tab when the first non-blank line holds one and a comma
//! otherwise. A first row whose value cell is not a number is treated as a
//! header. Columns are one-based.

use std::fs;
use std::path::Path;

use hmmseg_core::TimeSeries;

#[derive(Debug, thiserror::Error)]
pub enum IngestError {
    #[error("{0}: {1}")]
    Read(String, std::io::Error),
    #[error("input holds no data rows")]
    Empty,
    #[error("line {line}: {message}")]
    Parse { line: u64, message: String },
    #[error("column numbers start at 1")]
    ZeroColumn,
    #[error(transparent)]
    Series(#[from] hmmseg_core::Error),
}

fn parse_err(line: u64, message: impl Into<String>) -> IngestError {
    IngestError::Parse {
        line,
        message: message.into(),
    }
}

pub fn detect_delimiter(text: &str) -> u8 {
    let first = text.lines().find(|l| !l.trim().is_empty()).unwrap_or("");
    if first.contains('\t') {
        b'\t'
    } else {
        b','
    }
}

fn parse_value(cell: &str) -> Option<f64> {
    cell.parse::<f64>().ok().filter(|v| v.is_finite())
}

fn parse_label(cell: &str) -> Option<i64> {
    if let Ok(v) = cell.parse::<i64>() {
        return Some(v);
    }
    let v = cell.parse::<f64>().ok()?;
    (v.is_finite() && v.fract() == 0.0 && v.abs() < 9.0e15).then_some(v as i64)
}

/// Parses `text` into a series, taking values from `value_column` and, when
/// given, integer labels (such as years) from `label_column`.
pub fn parse_series(text: &str, value_column: usize, label_column: Option<usize>) -> Result<TimeSeries, IngestError> {
    if value_column == 0 || label_column == Some(0) {
        return Err(IngestError::ZeroColumn);
    }
    let mut reader = csv::ReaderBuilder::new()
        .delimiter(detect_delimiter(text))
        .has_headers(false)
        .flexible(true)
        .trim(csv::Trim::All)
        .comment(Some(b'#'))
        .from_reader(text.as_bytes());

    let mut values = Vec::new();
    let mut labels = Vec::new();
    let mut first = true;
    for record in reader.records() {
        let record = record.map_err(|e| {
            let line = e.position().map_or(0, |p| p.line());
            parse_err(line, e.to_string())
        })?;
        let line = record.position().map_or(0, |p| p.line());
        if record.iter().all(str::is_empty) {
            continue;
        }
        let cell = |col: usize| {
            record
                .get(col - 1)
                .ok_or_else(|| parse_err(line, format!("missing column {col}")))
        };
        let raw = cell(value_column)?;
        let value = parse_value(raw);
        if first {
            first = false;
            if value.is_none() && raw.parse::<f64>().is_err() {
                continue;
            }
        }
        let value = value.ok_or_else(|| parse_err(line, format!("`{raw}` is not a finite number")))?;
        values.push(value);
        if let Some(col) = label_column {
            let raw = cell(col)?;
            labels.push(parse_label(raw).ok_or_else(|| parse_err(line, format!("`{raw}` is not an integer label")))?);
        }
    }
    if values.is_empty() {
        return Err(IngestError::Empty);
    }
    Ok(match label_column {
        Some(_) => TimeSeries::with_labels(values, labels)?,
        None => TimeSeries::new(values)?,
    })
}

pub fn read_series(path: &Path, value_column: usize, label_column: Option<usize>) -> Result<TimeSeries, IngestError> {
    let text = fs::read_to_string(path).map_err(|e| IngestError::Read(path.display().to_string(), e))?;
    parse_series(&text, value_column, label_column)
}
