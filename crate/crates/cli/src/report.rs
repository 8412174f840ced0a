//! JSON-lines and CSV output with a provenance block.

use std::io::Write;

use serde_json::{Map, Value};

use crate::args::Format;

#[derive(Debug, Default)]
pub struct Report {
    pub records: Vec<Value>,
    pub summary: Map<String, Value>,
}

impl Report {
    pub fn push(&mut self, record: Value) {
        self.records.push(record);
    }

    pub fn summary(&mut self, key: &str, value: impl Into<Value>) {
        self.summary.insert(key.to_string(), value.into());
    }
}

fn cell(v: &Value) -> String {
    match v {
        Value::Null => String::new(),
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

pub fn write(out: &mut dyn Write, format: Format, provenance: &Value, report: &Report) -> anyhow::Result<()> {
    match format {
        Format::Json => {
            writeln!(out, "{}", serde_json::json!({ "provenance": provenance }))?;
            for r in &report.records {
                writeln!(out, "{r}")?;
            }
            if !report.summary.is_empty() {
                writeln!(out, "{}", serde_json::json!({ "summary": report.summary }))?;
            }
        }
        Format::Csv => {
            writeln!(out, "# provenance: {provenance}")?;
            let mut columns: Vec<String> = Vec::new();
            for r in &report.records {
                if let Value::Object(m) = r {
                    for k in m.keys() {
                        if !columns.contains(k) {
                            columns.push(k.clone());
                        }
                    }
                }
            }
            if !columns.is_empty() {
                let mut w = csv::Writer::from_writer(Vec::new());
                w.write_record(&columns)?;
                for r in &report.records {
                    w.write_record(columns.iter().map(|c| r.get(c).map(cell).unwrap_or_default()))?;
                }
                out.write_all(&w.into_inner()?)?;
            }
            for (k, v) in &report.summary {
                writeln!(out, "# {k}: {}", cell(v))?;
            }
        }
    }
    Ok(())
}
