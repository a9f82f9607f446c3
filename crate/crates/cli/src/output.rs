//! Data files, written atomically, and the run manifest.

use std::collections::BTreeMap;
use std::io::Write;
use std::path::{Path, PathBuf};

use serde::Serialize;
use serde_json::Value;

use crate::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone)]
pub enum Cell {
    Num(f64),
    Text(String),
}

/// Column-labelled rows. Headers carry unit suffixes.
#[derive(Debug, Clone)]
pub struct Table {
    header: Vec<String>,
    rows: Vec<Vec<Cell>>,
}

impl Table {
    pub fn new(header: &[&str]) -> Self {
        Table {
            header: header.iter().map(|s| s.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        assert_eq!(row.len(), self.header.len(), "row width");
        self.rows.push(row);
    }

    pub fn push_nums(&mut self, row: &[f64]) {
        self.push(row.iter().map(|&v| Cell::Num(v)).collect());
    }

    fn csv(&self) -> Result<Vec<u8>, CliError> {
        let mut w = csv::WriterBuilder::new()
            .terminator(csv::Terminator::Any(b'\n'))
            .from_writer(Vec::new());
        w.write_record(&self.header).map_err(csv_error)?;
        for row in &self.rows {
            w.write_record(row.iter().map(|c| match c {
                // shortest round-trip form
                Cell::Num(v) => format!("{v:e}"),
                Cell::Text(s) => s.clone(),
            }))
            .map_err(csv_error)?;
        }
        w.into_inner().map_err(|e| CliError::Io(e.into_error()))
    }

    fn json(&self) -> Value {
        let rows: Vec<Value> = self
            .rows
            .iter()
            .map(|row| {
                Value::Array(
                    row.iter()
                        .map(|c| match c {
                            Cell::Num(v) => serde_json::json!(v),
                            Cell::Text(s) => Value::String(s.clone()),
                        })
                        .collect(),
                )
            })
            .collect();
        serde_json::json!({ "columns": self.header, "rows": rows })
    }
}

fn csv_error(e: csv::Error) -> CliError {
    CliError::Io(std::io::Error::other(e))
}

#[derive(Debug, Serialize)]
pub struct RunManifest {
    pub command: String,
    pub config_hash: String,
    pub outputs: Vec<String>,
    pub residuals: BTreeMap<String, f64>,
    pub version: String,
}

/// Output directory that records everything written into it.
pub struct OutputDir {
    root: PathBuf,
    format: Format,
    outputs: Vec<String>,
    residuals: BTreeMap<String, f64>,
}

impl OutputDir {
    pub fn create(root: &Path, format: Format) -> Result<Self, CliError> {
        std::fs::create_dir_all(root)?;
        Ok(OutputDir {
            root: root.to_path_buf(),
            format,
            outputs: Vec::new(),
            residuals: BTreeMap::new(),
        })
    }

    /// Write to a temporary file in the same directory, then rename.
    pub fn write_bytes(&mut self, name: &str, bytes: &[u8]) -> Result<(), CliError> {
        let mut tmp = tempfile::NamedTempFile::new_in(&self.root)?;
        tmp.write_all(bytes)?;
        tmp.as_file().sync_all()?;
        tmp.persist(self.root.join(name)).map_err(|e| CliError::Io(e.error))?;
        if !self.outputs.iter().any(|o| o == name) {
            self.outputs.push(name.to_string());
        }
        Ok(())
    }

    pub fn write_json<T: Serialize>(&mut self, name: &str, value: &T) -> Result<(), CliError> {
        let mut bytes = serde_json::to_vec_pretty(value).map_err(|e| CliError::Io(e.into()))?;
        bytes.push(b'\n');
        self.write_bytes(name, &bytes)
    }

    /// `stem.csv` or `stem.json` depending on the chosen format.
    pub fn write_table(&mut self, stem: &str, table: &Table) -> Result<(), CliError> {
        match self.format {
            Format::Csv => {
                let bytes = table.csv()?;
                self.write_bytes(&format!("{stem}.csv"), &bytes)
            }
            Format::Json => self.write_json(&format!("{stem}.json"), &table.json()),
        }
    }

    pub fn residual(&mut self, key: impl Into<String>, value: f64) {
        self.residuals.insert(key.into(), value);
    }

    pub fn finish(mut self, command: &str, config_hash: String) -> Result<RunManifest, CliError> {
        let manifest = RunManifest {
            command: command.to_string(),
            config_hash,
            outputs: self.outputs.clone(),
            residuals: std::mem::take(&mut self.residuals),
            version: env!("CARGO_PKG_VERSION").to_string(),
        };
        self.write_json("manifest.json", &manifest)?;
        Ok(manifest)
    }
}
