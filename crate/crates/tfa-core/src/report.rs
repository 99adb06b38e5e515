//! Report rendering: every report type serializes to JSON (field names
//! from the type definitions) or to a flat, stable-ordered key=value text
//! listing suitable for CSV-style post-processing.

use crate::error::{Result, TfaError};
use serde::Serialize;
use serde_json::Value;

fn to_value<T: Serialize>(t: &T) -> Result<Value> {
    serde_json::to_value(t).map_err(|e| TfaError::Precondition(format!("unserializable report: {e}")))
}

/// Pretty JSON with fields in declaration order.
pub fn to_json<T: Serialize>(t: &T) -> Result<String> {
    let v = to_value(t)?;
    serde_json::to_string_pretty(&v)
        .map(|mut s| {
            s.push('\n');
            s
        })
        .map_err(|e| TfaError::Precondition(format!("unserializable report: {e}")))
}

fn flatten(prefix: &str, v: &Value, out: &mut Vec<String>) {
    match v {
        Value::Object(map) => {
            for (k, val) in map {
                let key = if prefix.is_empty() { k.clone() } else { format!("{prefix}.{k}") };
                flatten(&key, val, out);
            }
        }
        Value::Array(items) => {
            for (i, val) in items.iter().enumerate() {
                flatten(&format!("{prefix}.{i}"), val, out);
            }
        }
        Value::Null => out.push(format!("{prefix}=")),
        Value::Bool(b) => out.push(format!("{prefix}={b}")),
        Value::Number(n) => out.push(format!("{prefix}={n}")),
        Value::String(s) => out.push(format!("{prefix}={s}")),
    }
}

/// Flat `key=value` lines; nesting uses dotted paths and array indices,
/// in the order the fields are declared (deterministic across runs).
pub fn to_text<T: Serialize>(t: &T) -> Result<String> {
    let v = to_value(t)?;
    let mut lines = Vec::new();
    flatten("", &v, &mut lines);
    let mut s = lines.join("\n");
    s.push('\n');
    Ok(s)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[derive(Serialize)]
    struct Demo {
        zeta: f64,
        alpha: Vec<f64>,
        flag: bool,
        inner: Inner,
    }

    #[derive(Serialize)]
    struct Inner {
        b: u32,
        a: u32,
    }

    #[test]
    fn text_is_declaration_ordered() {
        let d = Demo {
            zeta: 0.5,
            alpha: vec![1.0, 2.5],
            flag: true,
            inner: Inner { b: 2, a: 1 },
        };
        let text = to_text(&d).unwrap();
        assert_eq!(text, "zeta=0.5\nalpha.0=1.0\nalpha.1=2.5\nflag=true\ninner.b=2\ninner.a=1\n");
    }

    #[test]
    fn json_round_trips_numbers_exactly() {
        let d = Demo {
            zeta: 0.1 + 0.2,
            alpha: vec![f64::MIN_POSITIVE],
            flag: false,
            inner: Inner { b: 0, a: 0 },
        };
        let json = to_json(&d).unwrap();
        let v: Value = serde_json::from_str(&json).unwrap();
        assert_eq!(v["zeta"].as_f64().unwrap(), 0.1 + 0.2);
        assert_eq!(v["alpha"][0].as_f64().unwrap(), f64::MIN_POSITIVE);
    }

    #[test]
    fn deterministic_across_calls() {
        let d = Demo {
            zeta: -3.25,
            alpha: vec![0.0, -0.0],
            flag: true,
            inner: Inner { b: 9, a: 8 },
        };
        assert_eq!(to_text(&d).unwrap(), to_text(&d).unwrap());
        assert_eq!(to_json(&d).unwrap(), to_json(&d).unwrap());
    }
}
