//! Canonical JSON rendering. Object keys come out sorted (the underlying
//! map is ordered) and floats print with 17 significant digits, so equal
//! values always render to identical bytes.

use num_bigint::BigInt;
use num_rational::BigRational;
use serde_json::Value;

use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::scalar::{Ring, Scalar};

/// Renders a value canonically: sorted keys, no insignificant whitespace,
/// floats at full 17-digit precision.
pub fn to_canonical_string(value: &Value) -> String {
    let mut out = String::new();
    write_value(value, &mut out);
    out
}

fn write_value(value: &Value, out: &mut String) {
    match value {
        Value::Null => out.push_str("null"),
        Value::Bool(b) => out.push_str(if *b { "true" } else { "false" }),
        Value::Number(n) => {
            if let Some(i) = n.as_i64() {
                out.push_str(&i.to_string());
            } else if let Some(u) = n.as_u64() {
                out.push_str(&u.to_string());
            } else {
                out.push_str(&format_f64(n.as_f64().expect("finite float")));
            }
        }
        Value::String(s) => {
            out.push_str(&serde_json::to_string(s).expect("string encodes"));
        }
        Value::Array(items) => {
            out.push('[');
            for (i, item) in items.iter().enumerate() {
                if i > 0 {
                    out.push(',');
                }
                write_value(item, out);
            }
            out.push(']');
        }
        Value::Object(map) => {
            out.push('{');
            // serde_json's default map is a BTreeMap, so iteration is sorted.
            for (i, (key, item)) in map.iter().enumerate() {
                if i > 0 {
                    out.push(',');
                }
                out.push_str(&serde_json::to_string(key).expect("key encodes"));
                out.push(':');
                write_value(item, out);
            }
            out.push('}');
        }
    }
}

/// 17 significant digits in scientific notation; enough to round-trip any
/// finite f64 exactly.
pub fn format_f64(x: f64) -> String {
    format!("{:.16e}", x)
}

/// Parses a JSON document.
pub fn parse(text: &str) -> Result<Value> {
    serde_json::from_str(text).map_err(|e| Error::Json(e.to_string()))
}

pub fn scalar_to_value(s: &Scalar) -> Value {
    match s {
        Scalar::Fp { value, .. } => Value::from(*value),
        Scalar::Rational(r) => Value::from(format!("{}/{}", r.numer(), r.denom())),
        Scalar::Float(x) => serde_json::Number::from_f64(*x)
            .map(Value::Number)
            .unwrap_or(Value::Null),
    }
}

pub fn scalar_from_value(ring: Ring, v: &Value) -> Result<Scalar> {
    match ring {
        Ring::Fp(p) => {
            let n = v
                .as_u64()
                .ok_or_else(|| Error::Json(format!("expected a residue mod {p}, got {v}")))?;
            if n >= p {
                return Err(Error::Json(format!("residue {n} out of range for F{p}")));
            }
            Ok(Scalar::fp(p, n))
        }
        Ring::Rational => {
            let s = v
                .as_str()
                .ok_or_else(|| Error::Json(format!("expected a num/den string, got {v}")))?;
            let (num, den) = match s.split_once('/') {
                Some((n, d)) => (n, d),
                None => (s, "1"),
            };
            let num: BigInt = num
                .parse()
                .map_err(|_| Error::Json(format!("bad numerator in {s:?}")))?;
            let den: BigInt = den
                .parse()
                .map_err(|_| Error::Json(format!("bad denominator in {s:?}")))?;
            if den == BigInt::from(0) {
                return Err(Error::Json(format!("zero denominator in {s:?}")));
            }
            Ok(Scalar::Rational(BigRational::new(num, den)))
        }
        Ring::Float => {
            let x = v
                .as_f64()
                .ok_or_else(|| Error::Json(format!("expected a float, got {v}")))?;
            Ok(Scalar::Float(x))
        }
    }
}

/// Matrices render as arrays of rows.
pub fn matrix_to_value(m: &Matrix) -> Value {
    let rows: Vec<Value> = (0..m.rows())
        .map(|i| {
            Value::Array(
                (0..m.cols())
                    .map(|j| scalar_to_value(m.get(i, j)))
                    .collect(),
            )
        })
        .collect();
    Value::Array(rows)
}

pub fn matrix_from_value(ring: Ring, rows: usize, cols: usize, v: &Value) -> Result<Matrix> {
    let row_values = v
        .as_array()
        .ok_or_else(|| Error::Json(format!("expected an array of rows, got {v}")))?;
    if row_values.len() != rows {
        return Err(Error::Json(format!(
            "expected {rows} rows, got {}",
            row_values.len()
        )));
    }
    let mut m = Matrix::zeros(ring, rows, cols);
    for (i, row) in row_values.iter().enumerate() {
        let cells = row
            .as_array()
            .ok_or_else(|| Error::Json(format!("row {i} is not an array")))?;
        if cells.len() != cols {
            return Err(Error::Json(format!(
                "row {i} has {} entries, expected {cols}",
                cells.len()
            )));
        }
        for (j, cell) in cells.iter().enumerate() {
            m.set(i, j, scalar_from_value(ring, cell)?);
        }
    }
    Ok(m)
}
