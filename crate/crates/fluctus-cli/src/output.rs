//! Report emission: every float is rounded to 9 significant digits
//! before serialization so that identical configurations rewrite
//! byte-identical files.

use std::fs;
use std::path::Path;

use serde_json::Value;

use crate::CliError;

fn sig9(x: f64) -> f64 {
    if x == 0.0 || !x.is_finite() {
        x
    } else {
        format!("{x:.8e}").parse().expect("rounded float reparses")
    }
}

/// Shortest decimal form of the 9-significant-digit rounding.
pub fn format_sig9(x: f64) -> String {
    sig9(x).to_string()
}

fn round_sig9(value: Value) -> Value {
    match value {
        Value::Number(n) => {
            if n.is_f64() {
                let rounded = sig9(n.as_f64().expect("f64 number"));
                serde_json::Number::from_f64(rounded)
                    .map(Value::Number)
                    .unwrap_or(Value::Null)
            } else {
                Value::Number(n)
            }
        }
        Value::Array(items) => Value::Array(items.into_iter().map(round_sig9).collect()),
        Value::Object(map) => {
            Value::Object(map.into_iter().map(|(k, v)| (k, round_sig9(v))).collect())
        }
        other => other,
    }
}

pub fn emit_json(value: Value, out: Option<&Path>) -> Result<(), CliError> {
    let mut text =
        serde_json::to_string_pretty(&round_sig9(value)).expect("report serializes");
    text.push('\n');
    write_out(&text, out)
}

pub fn write_out(text: &str, out: Option<&Path>) -> Result<(), CliError> {
    match out {
        Some(path) => fs::write(path, text)
            .map_err(|e| CliError::Io(format!("{}: {e}", path.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}
