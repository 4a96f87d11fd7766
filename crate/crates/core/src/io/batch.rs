//! Parallel analysis of many instances with input-ordered output.

use std::path::PathBuf;

use rayon::prelude::*;
use serde::Serialize;

use crate::classifier::{analyze, AnalysisOptions, DlaReport};

use super::{load_instance, InputFormat, IoError};

/// Exponents `k` for the "lower bound at least `2^k`" summary counts.
pub const BOUND_EXPONENTS: [u64; 5] = [32, 64, 128, 256, 512];

#[derive(Debug, Clone)]
pub struct BatchOptions {
    pub analysis: AnalysisOptions,
    pub format: InputFormat,
    pub ignore_weights: bool,
    /// Worker threads; 0 picks the rayon default.
    pub threads: usize,
    pub timings: bool,
}

impl Default for BatchOptions {
    fn default() -> Self {
        BatchOptions {
            analysis: AnalysisOptions {
                brute_force: false,
                ..AnalysisOptions::default()
            },
            format: InputFormat::Mqlib,
            ignore_weights: false,
            threads: 0,
            timings: true,
        }
    }
}

#[derive(Debug)]
pub struct InstanceError {
    pub path: PathBuf,
    pub error: IoError,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BatchSummary {
    pub total: usize,
    pub analyzed: usize,
    pub errors: usize,
    pub free: usize,
    pub free_fraction: f64,
    /// `(k, count of reports with lower bound >= 2^k)`.
    pub lower_bound_at_least: Vec<(u64, usize)>,
}

impl BatchSummary {
    pub fn from_reports<'a>(
        reports: impl IntoIterator<Item = &'a DlaReport>,
        errors: usize,
    ) -> Self {
        let mut analyzed = 0;
        let mut free = 0;
        let mut counts = vec![0usize; BOUND_EXPONENTS.len()];
        for r in reports {
            analyzed += 1;
            free += usize::from(r.is_free());
            for (c, &k) in counts.iter_mut().zip(&BOUND_EXPONENTS) {
                *c += usize::from(r.lower_bound.at_least_pow2(k));
            }
        }
        BatchSummary {
            total: analyzed + errors,
            analyzed,
            errors,
            free,
            free_fraction: if analyzed == 0 {
                0.0
            } else {
                free as f64 / analyzed as f64
            },
            lower_bound_at_least: BOUND_EXPONENTS.iter().copied().zip(counts).collect(),
        }
    }
}

#[derive(Debug)]
pub struct BatchOutcome {
    /// One entry per input path, in input order.
    pub results: Vec<Result<DlaReport, InstanceError>>,
    pub summary: BatchSummary,
}

impl BatchOutcome {
    pub fn reports(&self) -> impl Iterator<Item = &DlaReport> {
        self.results.iter().filter_map(|r| r.as_ref().ok())
    }

    pub fn errors(&self) -> impl Iterator<Item = &InstanceError> {
        self.results.iter().filter_map(|r| r.as_ref().err())
    }
}

/// Analyzes every path; per-file failures are collected and the batch
/// continues.
pub fn run_batch(paths: &[PathBuf], opts: &BatchOptions) -> BatchOutcome {
    let work = |path: &PathBuf| -> Result<DlaReport, InstanceError> {
        let rec = load_instance(path, opts.format, opts.ignore_weights).map_err(|error| {
            InstanceError {
                path: path.clone(),
                error,
            }
        })?;
        let analysis = AnalysisOptions {
            id: rec.id.clone(),
            ..opts.analysis.clone()
        };
        let mut report = analyze(&rec.graph, &analysis);
        if !opts.timings {
            report.clear_timings();
        }
        Ok(report)
    };
    let results: Vec<_> = match rayon::ThreadPoolBuilder::new()
        .num_threads(opts.threads)
        .build()
    {
        Ok(pool) => pool.install(|| paths.par_iter().map(work).collect()),
        Err(_) => paths.iter().map(work).collect(),
    };
    let errors = results.iter().filter(|r| r.is_err()).count();
    let summary =
        BatchSummary::from_reports(results.iter().filter_map(|r| r.as_ref().ok()), errors);
    BatchOutcome { results, summary }
}
