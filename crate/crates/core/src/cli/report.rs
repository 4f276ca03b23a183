//! Report tree and its text form.
//!
//! Reports are JSON objects with keys in insertion order. Floats are written
//! with 17 significant digits so that parsing the output recovers the exact
//! `f64`; non-finite values are written as the strings `"inf"`, `"-inf"`,
//! `"nan"`.

use std::fmt::Write as _;

use serde_json::{Map, Value};

use crate::linalg::{CVector, Matrix};

/// Version string stamped into every report.
pub const VERSION: &str = concat!("twinscope ", env!("CARGO_PKG_VERSION"));

#[derive(Debug, Clone, PartialEq)]
pub struct Report {
    pub command: String,
    pub input: Value,
    pub result: Value,
    pub diagnostics: Value,
}

impl Report {
    pub fn to_value(&self) -> Value {
        let mut m = Map::new();
        m.insert("command".into(), Value::String(self.command.clone()));
        m.insert("version".into(), Value::String(VERSION.into()));
        m.insert("input".into(), self.input.clone());
        m.insert("result".into(), self.result.clone());
        m.insert("diagnostics".into(), self.diagnostics.clone());
        Value::Object(m)
    }

    pub fn render(&self) -> String {
        render(&self.to_value())
    }
}

/// Float as a JSON value; non-finite values become strings.
pub fn num(x: f64) -> Value {
    match serde_json::Number::from_f64(x) {
        Some(n) => Value::Number(n),
        None if x.is_nan() => Value::String("nan".into()),
        None if x > 0.0 => Value::String("inf".into()),
        None => Value::String("-inf".into()),
    }
}

pub fn nums(xs: &[f64]) -> Value {
    Value::Array(xs.iter().map(|&x| num(x)).collect())
}

/// Complex matrix as rows of `[re, im]` pairs.
pub fn matrix(m: &Matrix) -> Value {
    Value::Array(
        (0..m.nrows())
            .map(|i| {
                Value::Array(
                    (0..m.ncols())
                        .map(|j| nums(&[m[(i, j)].re, m[(i, j)].im]))
                        .collect(),
                )
            })
            .collect(),
    )
}

pub fn vector(v: &CVector) -> Value {
    Value::Array(v.iter().map(|z| nums(&[z.re, z.im])).collect())
}

/// Builds an object from `(key, value)` pairs, keeping their order.
pub fn obj<I, K>(pairs: I) -> Value
where
    I: IntoIterator<Item = (K, Value)>,
    K: Into<String>,
{
    Value::Object(pairs.into_iter().map(|(k, v)| (k.into(), v)).collect())
}

fn write_float(out: &mut String, x: f64) {
    if x == 0.0 {
        out.push_str(if x.is_sign_negative() { "-0.0" } else { "0.0" });
    } else {
        let _ = write!(out, "{x:.16e}");
    }
}

fn write_value(out: &mut String, v: &Value, indent: usize) {
    let pad = |out: &mut String, n: usize| out.extend(std::iter::repeat_n("  ", n));
    match v {
        Value::Null => out.push_str("null"),
        Value::Bool(b) => out.push_str(if *b { "true" } else { "false" }),
        Value::Number(n) => match (n.as_i64(), n.as_u64()) {
            (Some(i), _) if !n.is_f64() => {
                let _ = write!(out, "{i}");
            }
            (_, Some(u)) if !n.is_f64() => {
                let _ = write!(out, "{u}");
            }
            _ => write_float(out, n.as_f64().unwrap_or(f64::NAN)),
        },
        Value::String(s) => out.push_str(&Value::String(s.clone()).to_string()),
        Value::Array(items) => {
            // Short arrays of scalars stay on one line.
            let flat = items.iter().all(|x| !x.is_array() && !x.is_object())
                || items.iter().all(|x| matches!(x, Value::Array(a) if a.iter().all(Value::is_number)));
            if items.is_empty() {
                out.push_str("[]");
            } else if flat {
                out.push('[');
                for (k, x) in items.iter().enumerate() {
                    if k > 0 {
                        out.push_str(", ");
                    }
                    write_value(out, x, indent);
                }
                out.push(']');
            } else {
                out.push_str("[\n");
                for (k, x) in items.iter().enumerate() {
                    pad(out, indent + 1);
                    write_value(out, x, indent + 1);
                    out.push_str(if k + 1 < items.len() { ",\n" } else { "\n" });
                }
                pad(out, indent);
                out.push(']');
            }
        }
        Value::Object(map) => {
            if map.is_empty() {
                out.push_str("{}");
                return;
            }
            out.push_str("{\n");
            for (k, (key, x)) in map.iter().enumerate() {
                pad(out, indent + 1);
                out.push_str(&Value::String(key.clone()).to_string());
                out.push_str(": ");
                write_value(out, x, indent + 1);
                out.push_str(if k + 1 < map.len() { ",\n" } else { "\n" });
            }
            pad(out, indent);
            out.push('}');
        }
    }
}

/// Pretty JSON text with full-precision floats and a trailing newline.
pub fn render(v: &Value) -> String {
    let mut out = String::new();
    write_value(&mut out, v, 0);
    out.push('\n');
    out
}
