//! Report envelope, float rounding, and the text renderer.

use std::fmt::Write as _;
use std::path::PathBuf;

use genus2_core::modular::{certified_decimals, round_to};
use serde_json::{Map, Value};

/// Environment variable naming a directory that receives a copy of each report.
pub const OUTPUT_DIR_VAR: &str = "GENUS2_OUTPUT_DIR";

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Json,
    Text,
}

/// Wraps a result with the command name and the provenance of its numbers.
pub fn envelope(command: &str, provenance: &str, parameters: Value, mut result: Value) -> Value {
    round_floats(&mut result);
    let mut map = Map::new();
    map.insert("command".into(), Value::from(command));
    map.insert("provenance".into(), Value::from(provenance));
    map.insert("parameters".into(), parameters);
    map.insert("result".into(), result);
    Value::Object(map)
}

/// Values paired with an `error_bound` keep only the decimals the bound
/// certifies; the bound itself is rounded up to two significant digits.
/// Stray floats are cut to 12 decimals.
pub fn round_floats(v: &mut Value) {
    match v {
        Value::Object(map) => {
            if let Some(bound) = map.get("error_bound").and_then(Value::as_f64) {
                let decimals = certified_decimals(bound);
                if let Some(value) = map.get_mut("value") {
                    round_all(value, decimals);
                }
                map.insert("error_bound".into(), float(round_up(bound)));
                map.insert("certified_decimals".into(), Value::from(decimals));
            }
            for (key, child) in map.iter_mut() {
                if key != "error_bound" && key != "value" {
                    round_floats(child);
                }
            }
        }
        Value::Array(items) => items.iter_mut().for_each(round_floats),
        Value::Number(n) if n.is_f64() => {
            *v = float(round_to(n.as_f64().unwrap_or_default(), 12));
        }
        _ => {}
    }
}

fn round_all(v: &mut Value, decimals: usize) {
    match v {
        Value::Number(n) if n.is_f64() => *v = float(round_to(n.as_f64().unwrap_or_default(), decimals)),
        Value::Array(items) => items.iter_mut().for_each(|x| round_all(x, decimals)),
        Value::Object(map) => map.values_mut().for_each(|x| round_all(x, decimals)),
        _ => {}
    }
}

fn round_up(x: f64) -> f64 {
    if x <= 0.0 || !x.is_finite() {
        return x;
    }
    let scale = 10f64.powi(1 - x.log10().floor() as i32);
    (x * scale).ceil() / scale
}

fn float(x: f64) -> Value {
    serde_json::Number::from_f64(x).map(Value::Number).unwrap_or(Value::Null)
}

pub fn render(v: &Value, format: Format) -> String {
    match format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(v).expect("JSON values always serialize");
            s.push('\n');
            s
        }
        Format::Text => {
            let mut out = String::new();
            text(v, 0, &mut out);
            out
        }
    }
}

fn scalar(v: &Value) -> Option<String> {
    match v {
        Value::Null => Some("-".into()),
        Value::Bool(b) => Some(b.to_string()),
        Value::Number(n) => Some(n.to_string()),
        Value::String(s) => Some(s.clone()),
        Value::Array(items) if items.iter().all(|x| matches!(x, Value::Number(_) | Value::String(_))) => {
            Some(format!("[{}]", items.iter().filter_map(scalar).collect::<Vec<_>>().join(", ")))
        }
        _ => None,
    }
}

fn text(v: &Value, indent: usize, out: &mut String) {
    let pad = "  ".repeat(indent);
    match v {
        Value::Object(map) => {
            for (k, child) in map {
                match scalar(child) {
                    Some(s) => {
                        let _ = writeln!(out, "{pad}{k}: {s}");
                    }
                    None => {
                        let _ = writeln!(out, "{pad}{k}:");
                        text(child, indent + 1, out);
                    }
                }
            }
        }
        Value::Array(items) => {
            if items.is_empty() {
                let _ = writeln!(out, "{pad}(none)");
            }
            for item in items {
                match scalar(item) {
                    Some(s) => {
                        let _ = writeln!(out, "{pad}- {s}");
                    }
                    None => {
                        let _ = writeln!(out, "{pad}-");
                        text(item, indent + 1, out);
                    }
                }
            }
        }
        other => {
            let _ = writeln!(out, "{pad}{}", scalar(other).unwrap_or_default());
        }
    }
}

/// Copies the rendered report to `$GENUS2_OUTPUT_DIR/<command>.<ext>` when set.
pub fn save_copy(command: &str, rendered: &str, format: Format) -> std::io::Result<Option<PathBuf>> {
    let Some(dir) = std::env::var_os(OUTPUT_DIR_VAR) else {
        return Ok(None);
    };
    let dir = PathBuf::from(dir);
    std::fs::create_dir_all(&dir)?;
    let ext = match format {
        Format::Json => "json",
        Format::Text => "txt",
    };
    let path = dir.join(format!("{command}.{ext}"));
    std::fs::write(&path, rendered)?;
    Ok(Some(path))
}
