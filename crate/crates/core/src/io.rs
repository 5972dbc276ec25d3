//! CSV ingestion, series export and the JSON report document.

use std::io::{Read, Write};
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::collinearity::CollinearityReport;
use crate::dataset::Dataset;
use crate::error::{Error, Result};
use crate::inference::DecisionRecord;
use crate::ols::{CoefTest, OlsFit};
use crate::selection::{ModelComparison, SelectionTrace};
use crate::simulation::experiment::ExperimentResult;
use crate::simulation::rng::fingerprint;

/// Reads a headed numeric CSV; `response` names the dependent column and the
/// remaining columns become predictors in header order. Blank lines are
/// skipped.
pub fn load_csv(path: impl AsRef<Path>, response: &str) -> Result<Dataset> {
    let path = path.as_ref();
    let file = std::fs::File::open(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    read_csv(file, response)
}

pub fn read_csv<R: Read>(reader: R, response: &str) -> Result<Dataset> {
    let mut rdr = csv::ReaderBuilder::new().has_headers(true).trim(csv::Trim::All).from_reader(reader);
    let header: Vec<String> = rdr
        .headers()
        .map_err(|e| csv_error(e, 1))?
        .iter()
        .map(str::to_string)
        .collect();
    let ycol = header
        .iter()
        .position(|h| h == response)
        .ok_or_else(|| Error::MissingResponse(response.to_string()))?;

    let mut y = Vec::new();
    let mut cols: Vec<Vec<f64>> = vec![Vec::new(); header.len() - 1];
    for rec in rdr.records() {
        let rec = rec.map_err(|e| csv_error(e, 0))?;
        let line = rec.position().map_or(0, |p| p.line());
        if rec.len() != header.len() {
            return Err(Error::ParseError {
                line,
                col: rec.len().min(header.len()) + 1,
                message: format!("expected {} fields, found {}", header.len(), rec.len()),
            });
        }
        let mut c = 0;
        for (j, cell) in rec.iter().enumerate() {
            let v: f64 = cell.parse().map_err(|_| Error::NonNumericCell {
                line,
                col: j + 1,
                value: cell.to_string(),
            })?;
            if !v.is_finite() {
                return Err(Error::NonNumericCell {
                    line,
                    col: j + 1,
                    value: cell.to_string(),
                });
            }
            if j == ycol {
                y.push(v);
            } else {
                cols[c].push(v);
                c += 1;
            }
        }
    }
    let names: Vec<String> = header
        .into_iter()
        .enumerate()
        .filter(|(j, _)| *j != ycol)
        .map(|(_, h)| h)
        .collect();
    let n = y.len();
    let k = names.len() + 1;
    if n <= k {
        return Err(Error::TooFewRows { n, k });
    }
    Dataset::new(y, cols, names)
}

fn csv_error(e: csv::Error, fallback_line: u64) -> Error {
    let line = e.position().map_or(fallback_line, |p| p.line());
    match e.kind() {
        csv::ErrorKind::UnequalLengths { expected_len, len, .. } => Error::ParseError {
            line,
            col: (*len as usize).min(*expected_len as usize) + 1,
            message: format!("expected {expected_len} fields, found {len}"),
        },
        csv::ErrorKind::Io(io) => Error::Io(io.to_string()),
        _ => Error::ParseError {
            line,
            col: 0,
            message: e.to_string(),
        },
    }
}

/// Writes `k,max_vif,max_avif` rows for a sweep.
pub fn write_series_csv<W: Write>(out: W, result: &ExperimentResult) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    let io = |e: csv::Error| Error::Io(e.to_string());
    w.write_record(["k", "max_vif", "max_avif"]).map_err(io)?;
    for p in &result.series {
        w.write_record([p.k.to_string(), p.max_vif.to_string(), p.max_avif.to_string()])
            .map_err(io)?;
    }
    w.flush()?;
    Ok(())
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FitSummary {
    pub n: usize,
    pub k: usize,
    pub df_resid: usize,
    pub scr: f64,
    pub sigma_hat: f64,
    pub r2: f64,
    pub adj_r2: f64,
    #[serde(with = "crate::serde_float")]
    pub aic: f64,
    #[serde(with = "crate::serde_float")]
    pub f_stat: f64,
    #[serde(with = "crate::serde_float")]
    pub f_pvalue: f64,
    pub coefficients: Vec<CoefTest>,
}

impl From<&OlsFit> for FitSummary {
    fn from(f: &OlsFit) -> Self {
        Self {
            n: f.n,
            k: f.k,
            df_resid: f.df_resid,
            scr: f.scr,
            sigma_hat: f.sigma_hat,
            r2: f.r2,
            adj_r2: f.adj_r2,
            aic: f.aic,
            f_stat: f.f_stat,
            f_pvalue: f.f_pvalue,
            coefficients: f.coef_tests.clone(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Provenance {
    pub tool: String,
    pub version: String,
    pub seed: Option<u64>,
    /// Hex digest of the invocation settings.
    pub config_hash: String,
}

impl Provenance {
    pub fn new(seed: Option<u64>, settings: &str) -> Self {
        let bytes: Vec<f64> = settings.bytes().map(f64::from).collect();
        Self {
            tool: "collin".into(),
            version: env!("CARGO_PKG_VERSION").into(),
            seed,
            config_hash: format!("{:016x}", fingerprint(&bytes)),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReportDocument {
    pub fit: FitSummary,
    pub collinearity: CollinearityReport,
    pub decisions: Vec<DecisionRecord>,
    pub selection: Option<SelectionTrace>,
    pub comparison: Option<ModelComparison>,
    pub notes: Vec<String>,
    pub provenance: Provenance,
}

impl ReportDocument {
    /// Pretty JSON with keys sorted at every level.
    pub fn to_json(&self) -> Result<String> {
        to_sorted_json(self)
    }

    pub fn from_json(s: &str) -> Result<Self> {
        serde_json::from_str(s).map_err(|e| Error::ParseError {
            line: e.line() as u64,
            col: e.column(),
            message: e.to_string(),
        })
    }
}

/// Serialises through `serde_json::Value`, whose object map is ordered by
/// key, so the output is stable.
pub fn to_sorted_json<T: Serialize>(value: &T) -> Result<String> {
    let v = serde_json::to_value(value).map_err(|e| Error::Io(e.to_string()))?;
    serde_json::to_string_pretty(&v).map_err(|e| Error::Io(e.to_string()))
}
