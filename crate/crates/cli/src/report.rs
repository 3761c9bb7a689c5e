use std::fs;
use std::path::{Path, PathBuf};

use serde::Serialize;
use serde_json::Value;
use weylwave::calculus::{LevelNorm, Order};

use crate::args::Format;

#[derive(Serialize, Clone, Copy, Debug, PartialEq, Eq)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
}

/// JSON report; field order is part of the byte-level output.
#[derive(Serialize, Debug)]
pub struct Report {
    pub experiment: &'static str,
    pub parameters: Value,
    pub norms: Vec<LevelNorm>,
    pub order: Option<Order>,
    pub verdict: Verdict,
    pub wall_time: f64,
    pub metrics: Value,
}

/// Rows for CSV output; cells are pre-formatted.
#[derive(Debug, Clone, Default)]
pub struct Table {
    pub header: Vec<&'static str>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new(header: &[&'static str]) -> Self {
        Self { header: header.to_vec(), rows: Vec::new() }
    }

    pub fn push<I: IntoIterator<Item = String>>(&mut self, row: I) {
        self.rows.push(row.into_iter().collect());
    }

    pub fn to_csv(&self) -> Result<String, String> {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(&self.header).map_err(|e| e.to_string())?;
        for r in &self.rows {
            w.write_record(r).map_err(|e| e.to_string())?;
        }
        let bytes = w.into_inner().map_err(|e| e.to_string())?;
        String::from_utf8(bytes).map_err(|e| e.to_string())
    }
}

pub fn json(report: &Report) -> Result<String, String> {
    serde_json::to_string_pretty(report).map(|s| s + "\n").map_err(|e| e.to_string())
}

pub fn write(dir: &Path, name: &str, body: &str) -> Result<PathBuf, String> {
    fs::create_dir_all(dir).map_err(|e| format!("cannot create output directory {}: {e}", dir.display()))?;
    let path = dir.join(name);
    fs::write(&path, body).map_err(|e| format!("cannot write {}: {e}", path.display()))?;
    Ok(path)
}

pub fn file_name(experiment: &str, format: Format) -> String {
    match format {
        Format::Json => format!("{experiment}.json"),
        Format::Csv => format!("{experiment}.csv"),
    }
}

pub fn norms_table(norms: &[LevelNorm]) -> Table {
    let mut t = Table::new(&["h", "rms", "max"]);
    for n in norms {
        t.push([n.h.to_string(), n.rms.to_string(), n.max.to_string()]);
    }
    t
}

pub fn metrics_table(metrics: &Value) -> Table {
    let mut t = Table::new(&["metric", "value"]);
    if let Value::Object(map) = metrics {
        for (k, v) in map {
            let cell = match v {
                Value::String(s) => s.clone(),
                other => other.to_string(),
            };
            t.push([k.clone(), cell]);
        }
    }
    t
}
