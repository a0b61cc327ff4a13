//! Matrix files.
//!
//! Two formats are read:
//!
//! * JSON: `{"n": 4, "rows": [[1, "3/4", 0.5, 0], ...]}`. `n` is the number
//!   of rows. Entries are JSON numbers or strings holding a decimal or a
//!   rational `p/q`.
//! * CSV: one row per line, comma separated, with the same entry syntax.
//!
//! Rational entries are reduced exactly and then rounded once to the
//! nearest double.

use std::fs;
use std::path::Path;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::ToPrimitive;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::semiring::{NonnegMatrix, NonnegVector};

/// Parses one entry: a decimal (`0.75`, `1e-3`) or a rational (`21/80`).
pub fn parse_entry(text: &str) -> Result<f64> {
    let text = text.trim();
    let value = match text.split_once('/') {
        Some((num, den)) => {
            let num: BigInt = num
                .trim()
                .parse()
                .map_err(|_| Error::Parse(format!("bad numerator in {text:?}")))?;
            let den: BigInt = den
                .trim()
                .parse()
                .map_err(|_| Error::Parse(format!("bad denominator in {text:?}")))?;
            if den == BigInt::from(0) {
                return Err(Error::Parse(format!("zero denominator in {text:?}")));
            }
            BigRational::new(num, den)
                .to_f64()
                .ok_or_else(|| Error::Parse(format!("{text:?} is not representable")))?
        }
        None => text
            .parse::<f64>()
            .map_err(|_| Error::Parse(format!("{text:?} is not a number")))?,
    };
    if value.is_finite() && value >= 0.0 {
        Ok(value)
    } else {
        Err(Error::Parse(format!(
            "{text:?} is not a finite nonnegative real"
        )))
    }
}

fn json_entry(v: &Value) -> Result<f64> {
    match v {
        Value::Number(n) => match n.as_f64() {
            Some(x) if x.is_finite() && x >= 0.0 => Ok(x),
            _ => Err(Error::Parse(format!(
                "{n} is not a finite nonnegative real"
            ))),
        },
        Value::String(s) => parse_entry(s),
        other => Err(Error::Parse(format!("unexpected matrix entry {other}"))),
    }
}

pub fn parse_json_matrix(text: &str) -> Result<NonnegMatrix> {
    let doc: Value = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    let rows = doc
        .get("rows")
        .and_then(Value::as_array)
        .ok_or_else(|| Error::Parse("missing \"rows\" array".into()))?;
    let n = doc
        .get("n")
        .and_then(Value::as_u64)
        .ok_or_else(|| Error::Parse("missing integer \"n\"".into()))?;
    if n as usize != rows.len() {
        return Err(Error::Parse(format!(
            "\"n\" is {n} but there are {} rows",
            rows.len()
        )));
    }
    let rows = rows
        .iter()
        .map(|row| {
            row.as_array()
                .ok_or_else(|| Error::Parse("each row must be an array".into()))?
                .iter()
                .map(json_entry)
                .collect::<Result<Vec<f64>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    NonnegMatrix::from_rows(rows)
}

pub fn parse_csv_matrix(text: &str) -> Result<NonnegMatrix> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(false)
        .trim(csv::Trim::All)
        .comment(Some(b'#'))
        .from_reader(text.as_bytes());
    let rows = reader
        .records()
        .map(|record| {
            let record = record.map_err(|e| Error::Parse(e.to_string()))?;
            record.iter().map(parse_entry).collect::<Result<Vec<f64>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    NonnegMatrix::from_rows(rows)
}

/// JSON when the text starts with `{`, CSV otherwise.
pub fn parse_matrix(text: &str) -> Result<NonnegMatrix> {
    if text.trim_start().starts_with('{') {
        parse_json_matrix(text)
    } else {
        parse_csv_matrix(text)
    }
}

pub fn read_matrix(path: impl AsRef<Path>) -> Result<NonnegMatrix> {
    let path = path.as_ref();
    let text = fs::read_to_string(path)
        .map_err(|e| Error::Parse(format!("cannot read {}: {e}", path.display())))?;
    parse_matrix(&text)
}

/// `{"n": rows, "rows": [[...], ...]}` with shortest round-trip numbers.
pub fn matrix_to_json(m: &NonnegMatrix) -> Value {
    json!({ "n": m.nrows(), "rows": m.to_rows() })
}

pub fn matrix_to_csv(m: &NonnegMatrix) -> String {
    m.rows().map(csv_line).collect()
}

pub fn vector_to_json(v: &NonnegVector) -> Value {
    json!(v.as_slice())
}

/// Comma-separated line with shortest round-trip formatting.
pub fn csv_line(values: &[f64]) -> String {
    let mut line = values
        .iter()
        .map(|x| format!("{x:?}"))
        .collect::<Vec<_>>()
        .join(",");
    line.push('\n');
    line
}
