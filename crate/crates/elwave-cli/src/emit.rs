//! Deterministic table emission (CSV or JSON) and run manifests.
//!
//! CSV uses '.' decimal separators and shortest round-trip float formatting,
//! so two runs with the same parameters produce byte-identical bodies.

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};
use std::time::{SystemTime, UNIX_EPOCH};

use serde::Serialize;

/// One table cell.
#[derive(Debug, Clone, Copy)]
pub enum Value {
    Float(f64),
    Int(i64),
    /// Empty CSV cell / JSON null when absent.
    OptFloat(Option<f64>),
}

impl Value {
    fn to_csv(self) -> String {
        match self {
            Value::Float(v) => format!("{v}"),
            Value::Int(v) => format!("{v}"),
            Value::OptFloat(Some(v)) => format!("{v}"),
            Value::OptFloat(None) => String::new(),
        }
    }

    fn to_json(self) -> serde_json::Value {
        match self {
            Value::Float(v) => serde_json::json!(v),
            Value::Int(v) => serde_json::json!(v),
            Value::OptFloat(Some(v)) => serde_json::json!(v),
            Value::OptFloat(None) => serde_json::Value::Null,
        }
    }
}

/// Column-named rows ready for emission.
pub struct Table {
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<Value>>,
}

impl Table {
    pub fn new(columns: Vec<&'static str>) -> Self {
        Self {
            columns,
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<Value>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    pub fn to_csv(&self) -> String {
        let mut body = self.columns.join(",");
        body.push('\n');
        for row in &self.rows {
            let cells: Vec<String> = row.iter().map(|v| v.to_csv()).collect();
            body.push_str(&cells.join(","));
            body.push('\n');
        }
        body
    }

    pub fn to_json(&self) -> String {
        let objects: Vec<serde_json::Value> = self
            .rows
            .iter()
            .map(|row| {
                let mut object = serde_json::Map::new();
                for (column, value) in self.columns.iter().zip(row) {
                    object.insert((*column).to_string(), value.to_json());
                }
                serde_json::Value::Object(object)
            })
            .collect();
        let mut text = serde_json::to_string_pretty(&objects).expect("tables serialize infallibly");
        text.push('\n');
        text
    }
}

/// Output format of table data.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Csv,
    Json,
}

/// Record of one CLI run; every emitted data file belongs to exactly one
/// manifest. Re-running with the same parameters reproduces the data files
/// byte for byte (the timestamp lives only here).
#[derive(Debug, Serialize)]
pub struct RunManifest {
    pub subcommand: String,
    pub parameters: BTreeMap<String, String>,
    pub config_source: Option<String>,
    pub outputs: Vec<String>,
    pub tool_version: String,
    pub timestamp_unix: u64,
}

/// Collects data files for one run and writes the manifest at the end.
pub struct Emitter {
    out_dir: PathBuf,
    format: Format,
    manifest: RunManifest,
}

impl Emitter {
    pub fn new(
        out_dir: &Path,
        format: Format,
        subcommand: &str,
        parameters: BTreeMap<String, String>,
        config_source: Option<String>,
    ) -> std::io::Result<Self> {
        fs::create_dir_all(out_dir)?;
        Ok(Self {
            out_dir: out_dir.to_path_buf(),
            format,
            manifest: RunManifest {
                subcommand: subcommand.to_string(),
                parameters,
                config_source,
                outputs: Vec::new(),
                tool_version: env!("CARGO_PKG_VERSION").to_string(),
                timestamp_unix: SystemTime::now()
                    .duration_since(UNIX_EPOCH)
                    .map(|d| d.as_secs())
                    .unwrap_or(0),
            },
        })
    }

    /// Writes a table as `<stem>.csv` or `<stem>.json` per the run format.
    pub fn write_table(&mut self, stem: &str, table: &Table) -> std::io::Result<PathBuf> {
        let (extension, body) = match self.format {
            Format::Csv => ("csv", table.to_csv()),
            Format::Json => ("json", table.to_json()),
        };
        let path = self.out_dir.join(format!("{stem}.{extension}"));
        fs::write(&path, body)?;
        self.manifest.outputs.push(path.display().to_string());
        Ok(path)
    }

    /// Writes a serializable report as `<stem>.json` regardless of format.
    pub fn write_json<T: Serialize>(&mut self, stem: &str, report: &T) -> std::io::Result<PathBuf> {
        let path = self.out_dir.join(format!("{stem}.json"));
        let mut body = serde_json::to_string_pretty(report).expect("reports serialize infallibly");
        body.push('\n');
        fs::write(&path, body)?;
        self.manifest.outputs.push(path.display().to_string());
        Ok(path)
    }

    /// Writes `<subcommand>.manifest.json` listing every emitted file.
    pub fn finish(self) -> std::io::Result<PathBuf> {
        let path = self
            .out_dir
            .join(format!("{}.manifest.json", self.manifest.subcommand));
        let mut body =
            serde_json::to_string_pretty(&self.manifest).expect("manifest serializes infallibly");
        body.push('\n');
        fs::write(&path, body)?;
        Ok(path)
    }
}
