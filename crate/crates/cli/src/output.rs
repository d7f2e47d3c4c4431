//! Result documents rendered as CSV or JSON.

use std::collections::BTreeSet;
use std::io::Write;
use std::path::Path;

use clap::ValueEnum;
use rscodes::sim::SimReport;
use serde::Serialize;
use serde_json::Value;

use crate::{CliError, CliResult};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

/// One result with both renderings; the CSV form is a header plus rows.
pub struct Output {
    pub json: Value,
    pub header: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Output {
    pub fn new(json: Value, header: &[&str], rows: Vec<Vec<String>>) -> Self {
        Self { json, header: header.iter().map(|s| s.to_string()).collect(), rows }
    }

    /// Key/value rows from a flat JSON object; nested values are written as JSON text.
    pub fn key_values(json: Value) -> Self {
        let rows = match &json {
            Value::Object(map) => map.iter().map(|(k, v)| vec![k.clone(), cell(v)]).collect(),
            other => vec![vec!["value".into(), cell(other)]],
        };
        Self::new(json, &["key", "value"], rows)
    }

    pub fn from_serialize<T: Serialize>(value: &T) -> CliResult<Self> {
        Ok(Self::key_values(to_json(value)?))
    }

    /// One row per report; columns are the union of parameters and metrics.
    pub fn reports(reports: &[SimReport]) -> CliResult<Self> {
        let params: BTreeSet<&String> = reports.iter().flat_map(|r| r.params.keys()).collect();
        let metrics: BTreeSet<&String> = reports.iter().flat_map(|r| r.metrics.keys()).collect();
        let mut header = vec!["name".to_string(), "seed".to_string()];
        header.extend(params.iter().map(|p| p.to_string()));
        for m in &metrics {
            header.extend([m.to_string(), format!("{m}_stderr"), format!("{m}_trials")]);
        }
        let rows = reports
            .iter()
            .map(|r| {
                let mut row = vec![r.name.clone(), r.seed.to_string()];
                row.extend(params.iter().map(|p| r.params.get(*p).map_or(String::new(), |v| num(*v))));
                for m in &metrics {
                    match r.metrics.get(*m) {
                        Some(x) => row.extend([num(x.value), x.stderr.map_or(String::new(), num), x.trials.to_string()]),
                        None => row.extend([String::new(), String::new(), String::new()]),
                    }
                }
                row
            })
            .collect();
        let json = if reports.len() == 1 { to_json(&reports[0])? } else { to_json(&reports)? };
        Ok(Self { json, header, rows })
    }

    pub fn render(&self, format: Format) -> CliResult<String> {
        match format {
            Format::Json => serde_json::to_string_pretty(&self.json).map(|s| s + "\n").map_err(|e| CliError::Runtime(e.to_string())),
            Format::Csv => {
                let mut w = csv::Writer::from_writer(Vec::new());
                w.write_record(&self.header).map_err(|e| CliError::Runtime(e.to_string()))?;
                for r in &self.rows {
                    w.write_record(r).map_err(|e| CliError::Runtime(e.to_string()))?;
                }
                let bytes = w.into_inner().map_err(|e| CliError::Runtime(e.to_string()))?;
                String::from_utf8(bytes).map_err(|e| CliError::Runtime(e.to_string()))
            }
        }
    }

    pub fn emit(&self, format: Format, out: Option<&Path>) -> CliResult<()> {
        let text = self.render(format)?;
        match out {
            Some(p) => std::fs::write(p, text).map_err(|e| CliError::Config(format!("cannot write {}: {e}", p.display()))),
            None => {
                let mut stdout = std::io::stdout().lock();
                stdout.write_all(text.as_bytes()).map_err(|e| CliError::Runtime(e.to_string()))
            }
        }
    }
}

pub fn to_json<T: Serialize>(value: &T) -> CliResult<Value> {
    serde_json::to_value(value).map_err(|e| CliError::Runtime(e.to_string()))
}

/// Shortest round-trip decimal form.
pub fn num(x: f64) -> String {
    format!("{x}")
}

fn cell(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Null => String::new(),
        other => other.to_string(),
    }
}

/// Symbols joined by spaces.
pub fn word(symbols: &[u32]) -> String {
    symbols.iter().map(u32::to_string).collect::<Vec<_>>().join(" ")
}
