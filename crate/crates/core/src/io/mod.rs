//! Instance files, report emission and batch runs.

mod batch;
mod format;

pub use batch::{
    run_batch, BatchOptions, BatchOutcome, BatchSummary, InstanceError, BOUND_EXPONENTS,
};
pub use format::{emit_edgelist, emit_mqlib, parse_edgelist, parse_mqlib, InputFormat};

use std::fs;
use std::path::{Path, PathBuf};

use thiserror::Error;

use crate::classifier::DlaReport;
use crate::graph::{Graph, GraphError};

#[derive(Debug, Error)]
pub enum IoError {
    #[error("line {line}: {reason}")]
    Parse { line: usize, reason: String },
    #[error("{path}: {source}")]
    Read {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("{path}: {source}")]
    InFile {
        path: PathBuf,
        #[source]
        source: Box<IoError>,
    },
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Csv(#[from] csv::Error),
}

/// A parsed instance together with where it came from.
#[derive(Debug, Clone)]
pub struct InstanceRecord {
    pub id: String,
    pub graph: Graph,
    pub source_path: PathBuf,
    pub ignored_weights: bool,
}

/// Reads one instance; the id is the file stem.
pub fn load_instance(
    path: &Path,
    format: InputFormat,
    ignore_weights: bool,
) -> Result<InstanceRecord, IoError> {
    let text = fs::read_to_string(path).map_err(|source| IoError::Read {
        path: path.to_path_buf(),
        source,
    })?;
    let graph = match format {
        InputFormat::Mqlib => parse_mqlib(&text, ignore_weights),
        InputFormat::Edgelist => parse_edgelist(&text),
    }
    .map_err(|e| IoError::InFile {
        path: path.to_path_buf(),
        source: Box::new(e),
    })?;
    let id = path
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .filter(|s| !s.is_empty())
        .unwrap_or_else(|| path.display().to_string());
    Ok(InstanceRecord {
        id,
        graph,
        source_path: path.to_path_buf(),
        ignored_weights: ignore_weights,
    })
}

/// Expands directories (sorted by file name, non-recursive) and keeps files
/// as given.
pub fn collect_inputs(paths: &[PathBuf]) -> Result<Vec<PathBuf>, IoError> {
    let mut out = Vec::new();
    for p in paths {
        if p.is_dir() {
            let read = |source| IoError::Read {
                path: p.clone(),
                source,
            };
            let mut files: Vec<PathBuf> = fs::read_dir(p)
                .map_err(read)?
                .map(|e| e.map(|e| e.path()))
                .collect::<Result<_, _>>()
                .map_err(read)?;
            files.retain(|f| f.is_file());
            files.sort();
            out.extend(files);
        } else {
            out.push(p.clone());
        }
    }
    Ok(out)
}

/// JSON for one report. Exact dimensions longer than `exact_bits` bits are
/// replaced by null unless `exact_bits` is `None`.
pub fn report_json(report: &DlaReport, exact_bits: Option<u64>) -> serde_json::Value {
    let mut v = serde_json::to_value(report).expect("report serialises");
    if let Some(limit) = exact_bits {
        let too_long = |bits: u64| bits > limit;
        let obj = v.as_object_mut().expect("object");
        if too_long(report.ma_dimension.exact.bits()) {
            obj.insert("ma_dim_exact".into(), serde_json::Value::Null);
        }
        if too_long(report.lower_bound.exact.bits()) {
            obj.insert("lower_bound_exact".into(), serde_json::Value::Null);
        }
        if report
            .dimension
            .as_ref()
            .is_some_and(|d| too_long(d.exact.bits()))
        {
            obj.insert("dimension_exact".into(), serde_json::Value::Null);
        }
    }
    v
}

/// Column order of the CSV export.
pub const CSV_COLUMNS: [&str; 10] = [
    "id",
    "n",
    "m",
    "weighted",
    "freeness",
    "free",
    "blocks",
    "singletons",
    "ma_dim_log2",
    "lower_bound_log2",
];

fn log2_cell(x: f64) -> String {
    if x.is_finite() {
        format!("{x:.6}")
    } else {
        String::new()
    }
}

/// CSV rows with the summary columns of each report.
pub fn write_csv<W: std::io::Write>(out: W, reports: &[&DlaReport]) -> Result<(), IoError> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(CSV_COLUMNS)?;
    for r in reports {
        w.write_record([
            r.id.clone(),
            r.n.to_string(),
            r.m.to_string(),
            r.weighted.to_string(),
            r.freeness.name().to_string(),
            r.is_free().to_string(),
            r.partition.len().to_string(),
            r.partition.singletons().len().to_string(),
            log2_cell(r.ma_dimension.log2),
            log2_cell(r.lower_bound.log2),
        ])?;
    }
    w.flush().map_err(csv::Error::from)?;
    Ok(())
}
