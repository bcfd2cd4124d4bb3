//! File formats: frieze JSON, `i,value` CSV, verdict JSON and polygon JSON.
//!
//! Exact values are written as `{"num": "...", "den": "..."}`. On input a
//! rational may also be given as a `"p/q"` string or a JSON integer; floats
//! accept plain numbers as well.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};
use thiserror::Error;

use crate::frieze::{build_from_first_row, Frieze, FriezeError};
use crate::geometry::{EquilateralPolygon, ProjectivePolygon};
use crate::scalar::{format_rational, parse_rational, Rational, RationalRepr, Scalar};
use crate::sign::RowCheck;

#[derive(Debug, Error)]
pub enum IoError {
    #[error("malformed JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("bad value at {path}: {detail}")]
    BadValue { path: String, detail: String },
    #[error("frieze data inconsistent: {0}")]
    Inconsistent(String),
    #[error(transparent)]
    Frieze(#[from] FriezeError),
}

fn bad(path: impl Into<String>, detail: impl Into<String>) -> IoError {
    IoError::BadValue {
        path: path.into(),
        detail: detail.into(),
    }
}

/// Scalars that can cross the JSON and CSV boundary.
pub trait WireScalar: Scalar {
    fn to_wire(&self) -> Value;
    fn from_wire(v: &Value, path: &str) -> Result<Self, IoError>;
    fn to_csv(&self) -> String;
}

fn rational_from_wire(v: &Value, path: &str) -> Result<Rational, IoError> {
    match v {
        Value::Object(_) => {
            let repr: RationalRepr = serde_json::from_value(v.clone()).map_err(|e| bad(path, e.to_string()))?;
            Rational::try_from(&repr).map_err(|e| bad(path, e.to_string()))
        }
        Value::String(s) => parse_rational(s).map_err(|e| bad(path, e.to_string())),
        Value::Number(num) if num.is_i64() || num.is_u64() => {
            parse_rational(&num.to_string()).map_err(|e| bad(path, e.to_string()))
        }
        _ => Err(bad(path, "expected {num, den}, \"p/q\" or an integer")),
    }
}

impl WireScalar for Rational {
    fn to_wire(&self) -> Value {
        serde_json::to_value(RationalRepr::from(self)).expect("strings serialize")
    }

    fn from_wire(v: &Value, path: &str) -> Result<Self, IoError> {
        rational_from_wire(v, path)
    }

    fn to_csv(&self) -> String {
        format_rational(self)
    }
}

impl WireScalar for f64 {
    fn to_wire(&self) -> Value {
        json!(self)
    }

    fn from_wire(v: &Value, path: &str) -> Result<Self, IoError> {
        match v.as_f64() {
            Some(x) => Ok(x),
            None => rational_from_wire(v, path).map(|r| Scalar::to_f64(&r)),
        }
    }

    fn to_csv(&self) -> String {
        format!("{self:e}")
    }
}

fn wire_vec<T: WireScalar>(v: &[T]) -> Value {
    Value::Array(v.iter().map(WireScalar::to_wire).collect())
}

fn parse_vec<T: WireScalar>(v: &Value, path: &str) -> Result<Vec<T>, IoError> {
    let items = v.as_array().ok_or_else(|| bad(path, "expected an array"))?;
    items
        .iter()
        .enumerate()
        .map(|(i, x)| T::from_wire(x, &format!("{path}[{i}]")))
        .collect()
}

/// `{"n", "width", "exact", "first_row", "entries"?}`; `entries[d][i]` is
/// `entry(i, d)` for `d = 0..=n`.
pub fn frieze_to_json<T: WireScalar>(f: &Frieze<T>, with_entries: bool) -> Value {
    let mut obj = json!({
        "n": f.n(),
        "width": f.width(),
        "exact": T::EXACT,
        "first_row": wire_vec(&f.first_row()),
    });
    if with_entries {
        obj["entries"] = Value::Array(f.rows_by_span().iter().map(|r| wire_vec(r)).collect());
    }
    obj
}

/// Reads a frieze. With `entries` the array is taken as given (so a corrupted
/// file can be diagnosed by `validate`), but its first row must agree with
/// `first_row` when both are present. Without `entries` the frieze is built
/// from the first row.
pub fn frieze_from_json<T: WireScalar>(v: &Value) -> Result<Frieze<T>, IoError> {
    let first_row: Option<Vec<T>> = v.get("first_row").map(|r| parse_vec(r, "first_row")).transpose()?;
    let frieze = match v.get("entries") {
        Some(e) => {
            let rows = e.as_array().ok_or_else(|| bad("entries", "expected an array of rows"))?;
            let rows = rows
                .iter()
                .enumerate()
                .map(|(d, r)| parse_vec(r, &format!("entries[{d}]")))
                .collect::<Result<Vec<Vec<T>>, _>>()?;
            let f = Frieze::from_rows_unchecked(rows)?;
            if let Some(a) = &first_row {
                if a.as_slice() != f.first_row().as_slice() {
                    return Err(IoError::Inconsistent("first_row disagrees with entries".into()));
                }
            }
            f
        }
        None => {
            let a = first_row.ok_or_else(|| bad("first_row", "missing"))?;
            build_from_first_row(&a)?
        }
    };
    for (key, expected) in [("n", frieze.n()), ("width", frieze.width())] {
        if let Some(x) = v.get(key) {
            if x.as_u64() != Some(expected as u64) {
                return Err(IoError::Inconsistent(format!("{key} = {x}, data has {expected}")));
            }
        }
    }
    Ok(frieze)
}

/// `i,value` lines with a header.
pub fn sequence_to_csv<T: WireScalar>(values: &[T]) -> String {
    let mut out = String::from("i,value\n");
    for (i, v) in values.iter().enumerate() {
        let _ = writeln!(out, "{i},{}", v.to_csv());
    }
    out
}

/// Whole frieze as `d,i,value` lines.
pub fn frieze_to_csv<T: WireScalar>(f: &Frieze<T>) -> String {
    let mut out = String::from("d,i,value\n");
    for (d, row) in f.rows_by_span().iter().enumerate() {
        for (i, v) in row.iter().enumerate() {
            let _ = writeln!(out, "{d},{i},{}", v.to_csv());
        }
    }
    out
}

pub fn verdict_to_json<T: WireScalar>(check: &RowCheck<T>) -> Value {
    json!({
        "k": check.k,
        "count": check.count,
        "verdict": check.verdict.as_str(),
        "sequence": wire_vec(check.sequence.values()),
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum PolygonJson {
    Projective {
        #[serde(default, skip_serializing_if = "Option::is_none")]
        n: Option<usize>,
        angles: Vec<f64>,
        radii: Vec<f64>,
    },
    Planar {
        n: usize,
        vertices: Vec<[f64; 2]>,
    },
}

impl From<&ProjectivePolygon> for PolygonJson {
    fn from(p: &ProjectivePolygon) -> Self {
        PolygonJson::Projective {
            n: Some(p.n()),
            angles: p.angles().to_vec(),
            radii: p.radii().to_vec(),
        }
    }
}

impl From<&EquilateralPolygon> for PolygonJson {
    fn from(p: &EquilateralPolygon) -> Self {
        PolygonJson::Planar {
            n: p.n(),
            vertices: p.vertices.clone(),
        }
    }
}
