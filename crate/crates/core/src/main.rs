use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use qaoa_dla::classifier::{
    analyze, classify_multiangle, multiangle_closure, qaoa_closure_dimension, AnalysisOptions,
    DlaReport, DEFAULT_QUBIT_CAP, MAX_CLOSURE_QUBITS_ENV,
};
use qaoa_dla::graph::{
    enumerate_connected, enumerate_graphs, exact_maxcut, named_family, reduce_to_subdivision,
    sample_er, to_graph6, Family, Graph, PRNG_ID,
};
use qaoa_dla::io::{
    collect_inputs, emit_edgelist, emit_mqlib, load_instance, report_json, run_batch, write_csv,
    BatchOptions, BatchSummary, InputFormat,
};
use qaoa_dla::pauli::Mod61;
use qaoa_dla::splitter::{certify_asym_subdivision, verify_certificate};

/// Exact dimensions wider than this many bits are printed as null unless
/// `--exact` is given.
const DEFAULT_EXACT_BITS: u64 = 256;

#[derive(Parser)]
#[command(
    name = "qaoa-dla",
    version,
    about = "Freeness analysis of QAOA-MaxCut dynamical Lie algebras"
)]
struct Cli {
    #[command(flatten)]
    common: Common,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct Common {
    /// Read every edge weight as 1.
    #[arg(long, global = true)]
    ignore_weights: bool,
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Worker threads (0 = all cores).
    #[arg(long, global = true, default_value_t = 0)]
    threads: usize,
    #[arg(long, global = true, value_parser = parse_format, default_value = "mqlib")]
    format: InputFormat,
    #[arg(long, global = true, value_enum, default_value = "json")]
    output: Output,
    /// Largest graph sent to the brute-force closure [env: DLA_MAX_CLOSURE_QUBITS].
    #[arg(long, global = true)]
    max_closure_qubits: Option<usize>,
    /// Exit with status 1 when any instance fails.
    #[arg(long, global = true)]
    strict: bool,
    /// Zero all stage timings so output is reproducible byte for byte.
    #[arg(long, global = true)]
    no_timings: bool,
    /// Always print exact dimensions, however long.
    #[arg(long, global = true)]
    exact: bool,
}

#[derive(Clone, Copy, ValueEnum, PartialEq, Eq)]
enum Output {
    Json,
    Jsonl,
    Csv,
}

fn parse_format(s: &str) -> Result<InputFormat, String> {
    s.parse()
}

#[derive(Subcommand)]
enum Command {
    /// Analyze one instance and print its report.
    Analyze {
        file: PathBuf,
        /// Skip the brute-force closure stage.
        #[arg(long)]
        no_brute_force: bool,
    },
    /// Analyze files and directories; reports follow input order.
    Batch {
        paths: Vec<PathBuf>,
        /// Report format (overrides --output).
        #[arg(long, value_enum)]
        out: Option<Output>,
        /// Enable the brute-force closure stage.
        #[arg(long)]
        brute_force: bool,
        /// Also write the summary as JSON to this file.
        #[arg(long)]
        summary: Option<PathBuf>,
    },
    /// Sample Erdős–Rényi graphs and analyze them.
    SampleEr {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        p: f64,
        #[arg(long, default_value_t = 1)]
        count: usize,
        /// Attach uniform (0, 1] weights.
        #[arg(long)]
        weighted: bool,
        /// Write each sample in MQLib format into this directory.
        #[arg(long)]
        emit_dir: Option<PathBuf>,
        #[arg(long)]
        brute_force: bool,
    },
    /// Reduce to an asymmetric subdivision and verify it.
    Reduce {
        file: PathBuf,
        /// Write the reduced graph here (in --format).
        #[arg(long)]
        emit: Option<PathBuf>,
    },
    /// Exact closure dimension of the QAOA generators.
    Closure {
        file: PathBuf,
        #[arg(long)]
        max_qubits: Option<usize>,
        /// Close the individual terms instead.
        #[arg(long)]
        multiangle: bool,
    },
    /// Connected graphs on n vertices up to isomorphism, as graph6.
    Enumerate {
        #[arg(long)]
        n: usize,
        /// Include disconnected graphs.
        #[arg(long)]
        all: bool,
    },
    /// Emit a named family member, e.g. `spider:1,2,3`.
    Families {
        #[arg(long)]
        spec: String,
        /// Print its report instead of the graph.
        #[arg(long)]
        analyze: bool,
    },
    /// Print and verify a subdivision certificate.
    Certify { file: PathBuf },
}

struct Ctx {
    common: Common,
    out: io::BufWriter<io::Stdout>,
}

type CliResult = Result<ExitCode, String>;

impl Ctx {
    fn cap(&self) -> usize {
        self.common.max_closure_qubits.unwrap_or_else(|| {
            std::env::var(MAX_CLOSURE_QUBITS_ENV)
                .ok()
                .and_then(|v| v.trim().parse().ok())
                .unwrap_or(DEFAULT_QUBIT_CAP)
        })
    }

    fn options(&self, brute_force: bool) -> AnalysisOptions {
        AnalysisOptions {
            max_closure_qubits: self.cap(),
            brute_force,
            ..AnalysisOptions::default()
        }
    }

    fn exact_bits(&self) -> Option<u64> {
        (!self.common.exact).then_some(DEFAULT_EXACT_BITS)
    }

    fn load(&self, path: &Path) -> Result<Graph, String> {
        load_instance(path, self.common.format, self.common.ignore_weights)
            .map(|r| r.graph)
            .map_err(|e| e.to_string())
    }

    fn line(&mut self, s: impl AsRef<str>) -> Result<(), String> {
        writeln!(self.out, "{}", s.as_ref()).map_err(|e| e.to_string())
    }

    fn emit_reports(&mut self, reports: &[&DlaReport], output: Output) -> Result<(), String> {
        match output {
            Output::Csv => write_csv(&mut self.out, reports).map_err(|e| e.to_string()),
            Output::Json | Output::Jsonl => {
                for r in reports {
                    let v = report_json(r, self.exact_bits());
                    self.line(v.to_string())?;
                }
                Ok(())
            }
        }
    }

    fn finish(&mut self, report: &mut DlaReport) {
        if self.common.no_timings {
            report.clear_timings();
        }
    }

    fn graph_text(&self, g: &Graph) -> String {
        match self.common.format {
            InputFormat::Mqlib => emit_mqlib(g),
            InputFormat::Edgelist => emit_edgelist(g),
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let mut ctx = Ctx {
        common: cli.common,
        out: io::BufWriter::new(io::stdout()),
    };
    if ctx.common.threads > 0 {
        // Only fails if a global pool already exists.
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(ctx.common.threads)
            .build_global();
    }
    let result = run(&mut ctx, cli.command);
    let flushed = ctx.out.flush();
    match (result, flushed) {
        (Ok(code), Ok(())) => code,
        (Err(msg), _) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        (Ok(_), Err(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}

fn run(ctx: &mut Ctx, cmd: Command) -> CliResult {
    match cmd {
        Command::Analyze {
            file,
            no_brute_force,
        } => {
            let g = ctx.load(&file)?;
            let mut opts = ctx.options(!no_brute_force);
            opts.id = file
                .file_stem()
                .map(|s| s.to_string_lossy().into_owned())
                .unwrap_or_default();
            let mut r = analyze(&g, &opts);
            ctx.finish(&mut r);
            let output = ctx.common.output;
            ctx.emit_reports(&[&r], output)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Batch {
            paths,
            out,
            brute_force,
            summary,
        } => {
            let files = collect_inputs(&paths).map_err(|e| e.to_string())?;
            let opts = BatchOptions {
                analysis: ctx.options(brute_force),
                format: ctx.common.format,
                ignore_weights: ctx.common.ignore_weights,
                threads: ctx.common.threads,
                timings: !ctx.common.no_timings,
            };
            let outcome = run_batch(&files, &opts);
            for e in outcome.errors() {
                eprintln!("error: {}", e.error);
            }
            let reports: Vec<&DlaReport> = outcome.reports().collect();
            ctx.emit_reports(&reports, out.unwrap_or(ctx.common.output))?;
            let text = serde_json::to_string(&outcome.summary).map_err(|e| e.to_string())?;
            eprintln!("summary: {text}");
            if let Some(path) = summary {
                fs::write(&path, text + "\n").map_err(|e| format!("{}: {e}", path.display()))?;
            }
            Ok(exit_for(&outcome.summary, ctx.common.strict))
        }
        Command::SampleEr {
            n,
            p,
            count,
            weighted,
            emit_dir,
            brute_force,
        } => {
            if let Some(dir) = &emit_dir {
                fs::create_dir_all(dir).map_err(|e| format!("{}: {e}", dir.display()))?;
            }
            let opts = ctx.options(brute_force);
            let mut reports = Vec::with_capacity(count);
            for i in 0..count {
                let seed = ctx.common.seed.wrapping_add(i as u64);
                let mut g = sample_er(n, p, seed).map_err(|e| e.to_string())?;
                if weighted {
                    g = g.with_uniform_weights(seed);
                }
                let id = format!("er_n{n}_s{seed}");
                if let Some(dir) = &emit_dir {
                    let path = dir.join(format!("{id}.txt"));
                    fs::write(&path, emit_mqlib(&g))
                        .map_err(|e| format!("{}: {e}", path.display()))?;
                }
                let mut r = analyze(
                    &g,
                    &AnalysisOptions {
                        id,
                        prng_id: Some(PRNG_ID.to_string()),
                        ..opts.clone()
                    },
                );
                ctx.finish(&mut r);
                reports.push(r);
            }
            let refs: Vec<&DlaReport> = reports.iter().collect();
            let output = ctx.common.output;
            ctx.emit_reports(&refs, output)?;
            let summary = BatchSummary::from_reports(&reports, 0);
            eprintln!(
                "summary: {}",
                serde_json::to_string(&summary).map_err(|e| e.to_string())?
            );
            Ok(ExitCode::SUCCESS)
        }
        Command::Reduce { file, emit } => {
            let g = ctx.load(&file)?.unweighted();
            let red = reduce_to_subdivision(&g).map_err(|e| e.to_string())?;
            let h = &red.graph;
            let certified = certify_asym_subdivision(h)
                .and_then(|c| verify_certificate(h, &c))
                .is_ok();
            let cuts = exact_maxcut(&g).and_then(|a| Ok((a.0, exact_maxcut(h)?.0)));
            let added = red.added_vertices(&g);
            let (mc, mc_red, verified) = match cuts {
                Ok((a, b)) => (json!(a), json!(b), json!(b - a == added as f64)),
                Err(_) => (json!(null), json!(null), json!(null)),
            };
            if let Some(path) = emit {
                fs::write(&path, ctx.graph_text(h))
                    .map_err(|e| format!("{}: {e}", path.display()))?;
            }
            ctx.line(
                json!({
                    "n": g.n(),
                    "m": g.m(),
                    "n_reduced": h.n(),
                    "m_reduced": h.m(),
                    "added_vertices": added,
                    "certificate_verified": certified,
                    "maxcut": mc,
                    "maxcut_reduced": mc_red,
                    "delta_verified": verified,
                })
                .to_string(),
            )?;
            Ok(if verified == json!(false) || !certified {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            })
        }
        Command::Closure {
            file,
            max_qubits,
            multiangle,
        } => {
            let g = ctx.load(&file)?;
            let cap = max_qubits.unwrap_or_else(|| ctx.cap());
            let ma = classify_multiangle(&g.unweighted())
                .map_err(|e| e.to_string())?
                .1;
            let dimension = if multiangle {
                multiangle_closure::<Mod61>(&g.unweighted(), cap).map(|b| b.dimension())
            } else {
                qaoa_closure_dimension(&g, cap)
            }
            .map_err(|e| e.to_string())?;
            ctx.line(
                json!({
                    "n": g.n(),
                    "generators": if multiangle { "multiangle" } else { "qaoa" },
                    "dimension": dimension,
                    "ma_dimension": ma.exact.to_string(),
                    "free": ma.to_usize() == Some(dimension),
                })
                .to_string(),
            )?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Enumerate { n, all } => {
            let graphs = if all {
                enumerate_graphs(n)
            } else {
                enumerate_connected(n)
            }
            .map_err(|e| e.to_string())?;
            for g in &graphs {
                let s = to_graph6(g).map_err(|e| e.to_string())?;
                ctx.line(s)?;
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Families {
            spec,
            analyze: run_analysis,
        } => {
            let family: Family = spec
                .parse()
                .map_err(|e: qaoa_dla::graph::GraphError| e.to_string())?;
            let g = named_family(&family).map_err(|e| e.to_string())?;
            if run_analysis {
                let mut r = analyze(
                    &g,
                    &AnalysisOptions {
                        id: family.to_string(),
                        ..ctx.options(true)
                    },
                );
                ctx.finish(&mut r);
                let output = ctx.common.output;
                ctx.emit_reports(&[&r], output)?;
            } else {
                let text = ctx.graph_text(&g);
                write!(ctx.out, "{text}").map_err(|e| e.to_string())?;
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Certify { file } => {
            let mut g = ctx.load(&file)?;
            if g.has_uniform_weights() {
                g = g.unweighted();
            }
            let cert = certify_asym_subdivision(&g).map_err(|e| e.to_string())?;
            verify_certificate(&g, &cert).map_err(|e| e.to_string())?;
            write!(ctx.out, "{cert}").map_err(|e| e.to_string())?;
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn exit_for(summary: &BatchSummary, strict: bool) -> ExitCode {
    if strict && summary.errors > 0 {
        ExitCode::from(1)
    } else {
        ExitCode::SUCCESS
    }
}
