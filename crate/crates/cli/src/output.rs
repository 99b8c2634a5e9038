//! CSV and JSON serialization of scan records.

use std::fs;
use std::io::Write;
use std::path::Path;

use clap::ValueEnum;
use jcpurity::ScanRecord;
use serde::{Deserialize, Serialize};

use crate::error::{CliError, Result};

pub const COLUMNS: [&str; 19] = [
    "tau",
    "r0",
    "r1",
    "r2",
    "r3",
    "r_norm",
    "mixed_measure",
    "purity",
    "concurrence",
    "tangle",
    "tan_phi",
    "phi",
    "eps_minus",
    "eps_plus",
    "lambda_minus",
    "lambda_plus",
    "entropy_vn",
    "entropy_binary",
    "excitation",
];

#[derive(Copy, Clone, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum Format {
    #[default]
    Csv,
    Json,
}

impl Format {
    pub fn extension(self) -> &'static str {
        match self {
            Format::Csv => "csv",
            Format::Json => "json",
        }
    }
}

/// Flat view of a [`ScanRecord`] in column order.
#[derive(Copy, Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Row {
    pub tau: f64,
    pub r0: f64,
    pub r1: f64,
    pub r2: f64,
    pub r3: f64,
    pub r_norm: f64,
    pub mixed_measure: f64,
    pub purity: f64,
    pub concurrence: f64,
    pub tangle: f64,
    pub tan_phi: f64,
    pub phi: f64,
    pub eps_minus: f64,
    pub eps_plus: f64,
    pub lambda_minus: f64,
    pub lambda_plus: f64,
    pub entropy_vn: f64,
    pub entropy_binary: f64,
    pub excitation: f64,
}

impl From<&ScanRecord> for Row {
    fn from(rec: &ScanRecord) -> Self {
        let b = &rec.bloch;
        let r = &rec.report;
        Row {
            tau: rec.tau,
            r0: b.r0(),
            r1: b.r1(),
            r2: b.r2(),
            r3: b.r3(),
            r_norm: b.norm(),
            mixed_measure: r.mixed_measure,
            purity: r.purity,
            concurrence: r.concurrence,
            tangle: r.tangle,
            tan_phi: r.tan_phi,
            phi: r.phi,
            eps_minus: r.eps_minus,
            eps_plus: r.eps_plus,
            lambda_minus: r.lambda_minus,
            lambda_plus: r.lambda_plus,
            entropy_vn: r.entropy_vn,
            entropy_binary: r.entropy_binary,
            excitation: r.excitation,
        }
    }
}

impl Row {
    pub fn values(&self) -> [f64; 19] {
        [
            self.tau,
            self.r0,
            self.r1,
            self.r2,
            self.r3,
            self.r_norm,
            self.mixed_measure,
            self.purity,
            self.concurrence,
            self.tangle,
            self.tan_phi,
            self.phi,
            self.eps_minus,
            self.eps_plus,
            self.lambda_minus,
            self.lambda_plus,
            self.entropy_vn,
            self.entropy_binary,
            self.excitation,
        ]
    }

    pub fn get(&self, column: &str) -> Option<f64> {
        COLUMNS.iter().position(|c| *c == column).map(|i| self.values()[i])
    }
}

/// Shortest decimal that parses back to the same `f64`.
///
/// Plain notation in `[1e-5, 1e16)`, scientific outside it; `-0` prints as `0`.
pub fn format_number(x: f64) -> String {
    if x == 0.0 {
        return "0".to_string();
    }
    let a = x.abs();
    if x.is_finite() && !(1e-5..1e16).contains(&a) {
        format!("{x:e}")
    } else {
        format!("{x}")
    }
}

pub fn render_csv(records: &[ScanRecord]) -> Result<Vec<u8>> {
    if records.is_empty() {
        return Err(CliError::EmptyRecords);
    }
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(COLUMNS)?;
    for rec in records {
        w.write_record(Row::from(rec).values().map(format_number))?;
    }
    w.into_inner().map_err(|e| CliError::Csv(e.into_error().into()))
}

pub fn render_json(records: &[ScanRecord]) -> Result<Vec<u8>> {
    if records.is_empty() {
        return Err(CliError::EmptyRecords);
    }
    let rows: Vec<Row> = records.iter().map(Row::from).collect();
    let mut out = serde_json::to_vec_pretty(&rows)?;
    out.push(b'\n');
    Ok(out)
}

pub fn render(records: &[ScanRecord], format: Format) -> Result<Vec<u8>> {
    match format {
        Format::Csv => render_csv(records),
        Format::Json => render_json(records),
    }
}

/// Writes `records` to `path`. Nothing is created when `records` is empty.
pub fn write_records(records: &[ScanRecord], format: Format, path: &Path) -> Result<()> {
    let bytes = render(records, format)?;
    fs::write(path, bytes).map_err(|e| CliError::io(path, e))
}

/// Writes to `path`, or stdout when `path` is `None`.
pub fn emit(bytes: &[u8], path: Option<&Path>) -> Result<()> {
    match path {
        Some(p) => fs::write(p, bytes).map_err(|e| CliError::io(p, e)),
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(bytes)
                .and_then(|_| out.flush())
                .map_err(|e| CliError::io("<stdout>", e))
        }
    }
}

pub fn read_json(path: &Path) -> Result<Vec<Row>> {
    let text = fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
    Ok(serde_json::from_str(&text)?)
}
