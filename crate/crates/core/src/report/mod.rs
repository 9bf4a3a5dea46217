//! Run configuration, verification suites and machine-readable output.

mod output;
mod suites;

use std::fs;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::special_functions::PrecisionConfig;
use crate::zero_finder::{find_zeros_up_to, ZeroTable};

pub use output::{contour_json, write_scan_csv, write_trace_csv};
pub use suites::{run_suite, SUITES};

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct DecomposeParams {
    pub alpha: f64,
    pub beta: f64,
    pub heights: Vec<f64>,
    /// None → 1/T² at each height.
    pub eps2: Option<f64>,
}

impl Default for DecomposeParams {
    fn default() -> Self {
        Self {
            alpha: 0.6,
            beta: 0.8,
            heights: vec![20.0, 50.0, 100.0],
            eps2: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct TelescopeParams {
    pub alpha: f64,
    pub beta: f64,
    pub t: f64,
    pub n: usize,
    /// Scale of the substitution H(n) = C/(T−γ_n)².
    pub c: f64,
}

impl Default for TelescopeParams {
    fn default() -> Self {
        Self {
            alpha: 0.6,
            beta: 0.8,
            t: 100.0,
            n: 29,
            c: 2.0,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct ProbeParams {
    pub tau_lo: f64,
    pub tau_hi: f64,
    pub step: f64,
    pub sigma_lo: f64,
    pub sigma_hi: f64,
    pub samples: usize,
    pub u: f64,
    pub v: f64,
    pub eps: f64,
}

impl Default for ProbeParams {
    fn default() -> Self {
        Self {
            tau_lo: 0.0,
            tau_hi: 500.0,
            step: 0.01,
            sigma_lo: 0.6,
            sigma_hi: 0.8,
            samples: 33,
            u: 0.0,
            v: -std::f64::consts::PI,
            eps: 0.5,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct RunConfig {
    pub precision: PrecisionConfig,
    pub zero_table_path: Option<PathBuf>,
    /// Compute the table (and save it to `zero_table_path`, if set) when it
    /// cannot be loaded.
    pub build_missing_table: bool,
    pub table_height: f64,
    pub output_dir: PathBuf,
    pub decompose: DecomposeParams,
    pub telescope: TelescopeParams,
    pub probe: ProbeParams,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            precision: PrecisionConfig::default(),
            zero_table_path: None,
            build_missing_table: true,
            table_height: 6000.0,
            output_dir: PathBuf::from("."),
            decompose: DecomposeParams::default(),
            telescope: TelescopeParams::default(),
            probe: ProbeParams::default(),
        }
    }
}

impl RunConfig {
    pub fn to_json(&self) -> Result<String> {
        serde_json::to_string(self).map_err(|e| Error::Serialization(e.to_string()))
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Serialization(e.to_string()))
    }

    /// sha256 of the compact JSON serialization.
    pub fn hash(&self) -> Result<String> {
        Ok(hex::encode(Sha256::digest(self.to_json()?.as_bytes())))
    }

    /// Loads the configured table, or builds it up to `table_height` when allowed.
    pub fn zero_table(&self) -> Result<ZeroTable> {
        if let Some(path) = &self.zero_table_path {
            if path.exists() {
                return ZeroTable::load(path);
            }
        }
        if !self.build_missing_table {
            return Err(Error::MissingTable(match &self.zero_table_path {
                Some(p) => format!("{} does not exist", p.display()),
                None => "no zero table path configured".into(),
            }));
        }
        let table = find_zeros_up_to(self.table_height, &self.precision)?;
        if let Some(path) = &self.zero_table_path {
            table.save(path)?;
        }
        Ok(table)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Status {
    Pass,
    Fail,
    MeasuredOnly,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::MeasuredOnly => "measured-only",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    /// None when the check aborted or the value is not finite.
    pub measured: Option<f64>,
    /// Pass/fail threshold (measured ≤ bound unless the detail says otherwise).
    pub bound: Option<f64>,
    pub status: Status,
    pub detail: String,
}

impl Check {
    /// Pass when measured ≤ bound.
    pub fn at_most(name: &str, measured: f64, bound: f64) -> Self {
        Self::verdict(name, measured, Some(bound), measured <= bound, "")
    }

    pub fn verdict(name: &str, measured: f64, bound: Option<f64>, ok: bool, detail: &str) -> Self {
        Self {
            name: name.to_string(),
            measured: finite(measured),
            bound,
            status: if ok { Status::Pass } else { Status::Fail },
            detail: detail.to_string(),
        }
    }

    pub fn measured(name: &str, measured: f64, detail: &str) -> Self {
        Self {
            name: name.to_string(),
            measured: finite(measured),
            bound: None,
            status: Status::MeasuredOnly,
            detail: detail.to_string(),
        }
    }

    pub fn failed(name: &str, err: &Error) -> Self {
        Self::verdict(name, f64::NAN, None, false, &err.to_string())
    }
}

fn finite(x: f64) -> Option<f64> {
    x.is_finite().then_some(x)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub suite: String,
    pub version: String,
    pub config_hash: String,
    pub checks: Vec<Check>,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.status != Status::Fail)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| c.status == Status::Fail)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Json,
    Csv,
}

impl FromStr for Format {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "json" => Ok(Format::Json),
            "csv" => Ok(Format::Csv),
            other => Err(Error::Domain(format!("unknown format {other:?} (json or csv)"))),
        }
    }
}

/// Pretty JSON with fields in declaration order.
pub fn report_json(report: &VerificationReport) -> Result<String> {
    serde_json::to_string_pretty(report).map_err(|e| Error::Serialization(e.to_string()))
}

pub fn export_report(report: &VerificationReport, format: Format, path: impl AsRef<Path>) -> Result<()> {
    match format {
        Format::Json => fs::write(path, report_json(report)? + "\n")?,
        Format::Csv => {
            let mut w = csv::Writer::from_path(path).map_err(csv_error)?;
            w.write_record(["suite", "name", "measured", "bound", "status", "detail"])
                .map_err(csv_error)?;
            for c in &report.checks {
                w.write_record([
                    report.suite.as_str(),
                    &c.name,
                    &c.measured.map(|m| m.to_string()).unwrap_or_default(),
                    &c.bound.map(|b| b.to_string()).unwrap_or_default(),
                    c.status.as_str(),
                    &c.detail,
                ])
                .map_err(csv_error)?;
            }
            w.flush()?;
        }
    }
    Ok(())
}

pub fn load_report(path: impl AsRef<Path>) -> Result<VerificationReport> {
    let text = fs::read_to_string(path)?;
    serde_json::from_str(&text).map_err(|e| Error::Serialization(e.to_string()))
}

pub(crate) fn csv_error(e: csv::Error) -> Error {
    match e.into_kind() {
        csv::ErrorKind::Io(io) => Error::Io(io),
        other => Error::Serialization(format!("{other:?}")),
    }
}
