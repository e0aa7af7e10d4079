//! CSV and structured (JSON) reports.

use super::config::{ExperimentConfig, Format};
use super::sweep::SweepRecord;
use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};
use std::io::Write;
use std::path::Path;

/// Column order of the CSV schema.
pub const CSV_HEADER: [&str; 21] = [
    "eps",
    "k",
    "r1",
    "r2",
    "model",
    "incident",
    "N",
    "boundary_residual",
    "lambda1_re",
    "lambda1_im",
    "lambda2_re",
    "lambda2_im",
    "lambda_gap_abs",
    "max_grad",
    "max_grad_x1",
    "max_grad_x2",
    "pred_lambda_gap_abs",
    "pred_grad_scale",
    "ratio_lambda",
    "ratio_grad",
    "recip_defect_abs",
];

pub const TOOL_NAME: &str = "neartouch";

/// One structured document per run.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub tool: String,
    pub version: String,
    pub config: Option<ExperimentConfig>,
    pub records: Vec<SweepRecord>,
}

impl Report {
    pub fn new(config: Option<ExperimentConfig>, records: Vec<SweepRecord>) -> Self {
        Report {
            tool: TOOL_NAME.into(),
            version: env!("CARGO_PKG_VERSION").into(),
            config,
            records,
        }
    }
}

fn csv_error(e: csv::Error) -> Error {
    Error::Io(e.to_string())
}

/// Writes the CSV table to any sink.  Missing measurements are empty cells.
pub fn write_csv<W: Write>(records: &[SweepRecord], sink: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(sink);
    w.write_record(CSV_HEADER).map_err(csv_error)?;
    let num = |v: f64| v.to_string();
    let opt = |v: Option<f64>| v.map(num).unwrap_or_default();
    for r in records {
        let m = r.measured.as_ref();
        let row = [
            num(r.pair.eps),
            num(r.k),
            num(r.pair.r1),
            num(r.pair.r2),
            r.model.label().to_string(),
            r.incident.label().to_string(),
            m.map(|m| m.n_nodes.to_string()).unwrap_or_default(),
            opt(m.map(|m| m.boundary_residual)),
            opt(m.map(|m| m.lambda1.re)),
            opt(m.map(|m| m.lambda1.im)),
            opt(m.map(|m| m.lambda2.re)),
            opt(m.map(|m| m.lambda2.im)),
            opt(m.map(|m| m.lambda_gap_abs)),
            opt(m.map(|m| m.max_grad)),
            opt(m.map(|m| m.max_grad_at.x1)),
            opt(m.map(|m| m.max_grad_at.x2)),
            num(r.predicted.lambda_gap.norm()),
            num(r.predicted.gradient_scale),
            opt(r.ratio_lambda),
            opt(r.ratio_grad),
            opt(m.map(|m| m.recip_defect.norm())),
        ];
        w.write_record(&row).map_err(csv_error)?;
    }
    w.flush()?;
    Ok(())
}

pub fn csv_string(records: &[SweepRecord]) -> Result<String> {
    let mut buf = Vec::new();
    write_csv(records, &mut buf)?;
    String::from_utf8(buf).map_err(|e| Error::Io(e.to_string()))
}

pub fn structured_string(report: &Report) -> Result<String> {
    serde_json::to_string_pretty(report).map_err(|e| Error::Io(e.to_string()))
}

/// Writes `records` to `path` in the chosen format.
pub fn emit_report(
    records: &[SweepRecord],
    format: Format,
    path: &Path,
    config: Option<&ExperimentConfig>,
) -> Result<()> {
    if records.is_empty() {
        return Err(Error::InvalidArgument("no records to report".into()));
    }
    let text = match format {
        Format::Csv => csv_string(records)?,
        Format::Structured => structured_string(&Report::new(config.cloned(), records.to_vec()))?,
    };
    std::fs::write(path, text).map_err(|e| Error::Io(format!("{}: {e}", path.display())))
}

pub fn load_structured(path: &Path) -> Result<Report> {
    let text =
        std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    parse_structured(&text)
}

pub fn parse_structured(text: &str) -> Result<Report> {
    serde_json::from_str(text).map_err(|e| Error::Config {
        path: "structured report".into(),
        message: e.to_string(),
    })
}
