//! Record construction and deterministic CSV/JSON emission.
//!
//! CSV values print at 17 significant digits (`{:.16e}`), which round-trips
//! any finite f64 bit-for-bit through parsing. JSON uses the standard
//! shortest round-trip encoding for numbers. Both formats are byte
//! deterministic for identical inputs; pass/fail travels only in the exit
//! code, never in prose.

use std::fs;
use std::io::Write;
use std::path::PathBuf;

use serde_json::{Map, Value};

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

/// One output row: ordered key/value pairs, same schema for every row of a
/// run.
#[derive(Debug, Clone, Default)]
pub struct Record {
    fields: Vec<(String, Value)>,
}

impl Record {
    pub fn new() -> Self {
        Record { fields: Vec::new() }
    }

    pub fn push_f64(mut self, key: &str, v: f64) -> Self {
        self.fields.push((key.into(), Value::from(v)));
        self
    }

    pub fn push_opt_f64(mut self, key: &str, v: Option<f64>) -> Self {
        self.fields
            .push((key.into(), v.map(Value::from).unwrap_or(Value::Null)));
        self
    }

    pub fn push_int(mut self, key: &str, v: u64) -> Self {
        self.fields.push((key.into(), Value::from(v)));
        self
    }

    pub fn push_opt_int(mut self, key: &str, v: Option<u64>) -> Self {
        self.fields
            .push((key.into(), v.map(Value::from).unwrap_or(Value::Null)));
        self
    }

    pub fn push_str(mut self, key: &str, v: &str) -> Self {
        debug_assert!(!v.contains(','), "CSV labels must stay comma-free: {v}");
        self.fields.push((key.into(), Value::from(v)));
        self
    }

    pub fn push_bool(mut self, key: &str, v: bool) -> Self {
        self.fields.push((key.into(), Value::from(v)));
        self
    }
}

/// 17 significant digits, round-trip safe for f64.
pub fn fmt_f64(v: f64) -> String {
    format!("{v:.16e}")
}

fn csv_cell(v: &Value) -> String {
    match v {
        Value::Null => String::new(),
        Value::Bool(b) => b.to_string(),
        Value::Number(n) => {
            if let Some(i) = n.as_u64() {
                i.to_string()
            } else {
                fmt_f64(n.as_f64().unwrap())
            }
        }
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

pub fn render(records: &[Record], format: Format) -> String {
    match format {
        Format::Csv => {
            let mut out = String::new();
            if let Some(first) = records.first() {
                let header: Vec<&str> = first.fields.iter().map(|(k, _)| k.as_str()).collect();
                out.push_str(&header.join(","));
                out.push('\n');
            }
            for r in records {
                let row: Vec<String> = r.fields.iter().map(|(_, v)| csv_cell(v)).collect();
                out.push_str(&row.join(","));
                out.push('\n');
            }
            out
        }
        Format::Json => {
            let mut out = String::from("[");
            for (i, r) in records.iter().enumerate() {
                let mut map = Map::new();
                for (k, v) in &r.fields {
                    map.insert(k.clone(), v.clone());
                }
                out.push_str(if i == 0 { "\n" } else { ",\n" });
                out.push_str(&Value::Object(map).to_string());
            }
            out.push_str("\n]\n");
            out
        }
    }
}

pub fn write_output(text: &str, out: &Option<PathBuf>) -> std::io::Result<()> {
    match out {
        None => {
            let stdout = std::io::stdout();
            let mut lock = stdout.lock();
            lock.write_all(text.as_bytes())?;
            lock.flush()
        }
        Some(path) => fs::write(path, text),
    }
}
