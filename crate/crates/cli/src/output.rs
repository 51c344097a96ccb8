//! Record emission as JSON lines or CSV.

use crate::config::Format;
use serde::Serialize;
use serde_json::Value;
use std::io::{self, Write};

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Emitted {
    pub operation: String,
    pub fingerprint: String,
    pub cached: bool,
    pub params: Value,
    pub result: Value,
}

pub fn write_records(out: &mut dyn Write, records: &[Emitted], format: Format) -> io::Result<()> {
    match format {
        Format::Json => {
            for r in records {
                serde_json::to_writer(&mut *out, r)?;
                out.write_all(b"\n")?;
            }
            Ok(())
        }
        Format::Csv => write_csv(out, records),
    }
}

fn cell(v: &Value) -> String {
    match v {
        Value::Null => String::new(),
        Value::String(s) => s.clone(),
        Value::Bool(_) | Value::Number(_) => v.to_string(),
        Value::Array(_) | Value::Object(_) => v.to_string(),
    }
}

fn flatten(prefix: &str, v: &Value, row: &mut Vec<(String, String)>) {
    match v {
        Value::Object(map) => {
            for (k, x) in map {
                row.push((format!("{prefix}{k}"), cell(x)));
            }
        }
        other => row.push((prefix.trim_end_matches('.').to_string(), cell(other))),
    }
}

/// One row per record: operation, fingerprint, cached, then the top-level
/// fields of params and result; nested values are embedded as JSON.
fn write_csv(out: &mut dyn Write, records: &[Emitted]) -> io::Result<()> {
    let rows: Vec<Vec<(String, String)>> = records
        .iter()
        .map(|r| {
            let mut row = vec![
                ("operation".to_string(), r.operation.clone()),
                ("fingerprint".to_string(), r.fingerprint.clone()),
                ("cached".to_string(), r.cached.to_string()),
            ];
            flatten("params.", &r.params, &mut row);
            flatten("result.", &r.result, &mut row);
            row
        })
        .collect();
    let mut header: Vec<String> = Vec::new();
    for row in &rows {
        for (k, _) in row {
            if !header.contains(k) {
                header.push(k.clone());
            }
        }
    }
    let mut w = csv::Writer::from_writer(out);
    w.write_record(&header)?;
    for row in &rows {
        let cells = header
            .iter()
            .map(|h| row.iter().find(|(k, _)| k == h).map(|(_, v)| v.as_str()).unwrap_or(""));
        w.write_record(cells)?;
    }
    w.flush()
}
