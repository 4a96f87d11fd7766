//! Staged freeness analysis of a single graph.

use std::fmt;
use std::time::Instant;

use num_bigint::BigUint;
use serde::ser::{SerializeStruct, Serializer};
use serde::Serialize;

use crate::graph::{has_trivial_automorphism_group, FreeExtension, Graph, VertexPartition};
use crate::splitter::{bfs_splitting, certify_asym_subdivision, verify_certificate};

use super::{
    classify_multiangle, dimension_lower_bound, qaoa_closure_dimension, weighted_freeness_check,
    DlaClass, DlaDimension, DEFAULT_QUBIT_CAP,
};

/// Environment variable overriding the brute-force qubit cap.
pub const MAX_CLOSURE_QUBITS_ENV: &str = "DLA_MAX_CLOSURE_QUBITS";

#[derive(Debug, Clone, PartialEq)]
pub struct AnalysisOptions {
    /// Largest graph handed to the brute-force closure.
    pub max_closure_qubits: usize,
    /// Whether the brute-force stage may run at all.
    pub brute_force: bool,
    pub id: String,
    /// Sampling stream that produced the graph, when it was sampled.
    pub prng_id: Option<String>,
}

impl Default for AnalysisOptions {
    fn default() -> Self {
        let max_closure_qubits = std::env::var(MAX_CLOSURE_QUBITS_ENV)
            .ok()
            .and_then(|v| v.trim().parse().ok())
            .unwrap_or(DEFAULT_QUBIT_CAP);
        AnalysisOptions {
            max_closure_qubits,
            brute_force: true,
            id: String::new(),
            prng_id: None,
        }
    }
}

/// Verdict on whether the QAOA algebra equals the multi-angle algebra.
#[derive(Debug, Clone, PartialEq)]
pub enum Freeness {
    Splittable,
    CertifiedSubdivision,
    CertifiedExtension,
    /// Weighted graph meeting the signed-sum condition.
    WeightedCondition,
    BruteForcedFree,
    BruteForcedNotFree {
        dimension: usize,
    },
    /// Two or more isolated vertices share one `X` generator. The dimension
    /// is known when the rest of the graph is free.
    NotFreeIsolated {
        dimension: Option<BigUint>,
    },
    Undetermined,
}

impl Freeness {
    pub fn is_free(&self) -> bool {
        matches!(
            self,
            Freeness::Splittable
                | Freeness::CertifiedSubdivision
                | Freeness::CertifiedExtension
                | Freeness::WeightedCondition
                | Freeness::BruteForcedFree
        )
    }

    pub fn is_decided(&self) -> bool {
        !matches!(self, Freeness::Undetermined)
    }

    pub fn name(&self) -> &'static str {
        match self {
            Freeness::Splittable => "Splittable",
            Freeness::CertifiedSubdivision => "CertifiedSubdivision",
            Freeness::CertifiedExtension => "CertifiedExtension",
            Freeness::WeightedCondition => "WeightedCondition",
            Freeness::BruteForcedFree => "BruteForcedFree",
            Freeness::BruteForcedNotFree { .. } => "BruteForcedNotFree",
            Freeness::NotFreeIsolated { .. } => "NotFreeIsolated",
            Freeness::Undetermined => "Undetermined",
        }
    }
}

impl fmt::Display for Freeness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Freeness::BruteForcedNotFree { dimension } => {
                write!(f, "BruteForcedNotFree({dimension})")
            }
            Freeness::NotFreeIsolated { dimension: Some(d) } => write!(f, "NotFreeIsolated({d})"),
            other => f.write_str(other.name()),
        }
    }
}

/// Pipeline stages, in the order they are tried.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Stage {
    Isolated,
    Split,
    Certificate,
    Extension,
    WeightedCheck,
    BruteForce,
    LowerBound,
}

#[derive(Debug, Clone)]
pub struct DlaReport {
    pub id: String,
    pub n: usize,
    pub m: usize,
    pub weighted: bool,
    pub freeness: Freeness,
    pub partition: VertexPartition,
    pub ma_class: DlaClass,
    pub ma_dimension: DlaDimension,
    /// Best proven lower bound on the QAOA dimension.
    pub lower_bound: DlaDimension,
    /// Exact QAOA dimension when it is known.
    pub dimension: Option<DlaDimension>,
    /// Wall-clock time per stage, in the order of `method_trail`.
    pub timings_ms: Vec<(Stage, f64)>,
    pub method_trail: Vec<Stage>,
    pub prng_id: Option<String>,
    pub version: &'static str,
}

impl DlaReport {
    pub fn is_free(&self) -> bool {
        self.freeness.is_free()
    }

    /// Stage that produced the verdict.
    pub fn deciding_stage(&self) -> Option<Stage> {
        self.method_trail.last().copied()
    }

    /// Zeroes every timing so that reports compare byte for byte.
    pub fn clear_timings(&mut self) {
        for t in &mut self.timings_ms {
            t.1 = 0.0;
        }
    }
}

fn finite(x: f64) -> Option<f64> {
    x.is_finite().then_some(x)
}

impl Serialize for DlaReport {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("DlaReport", 17)?;
        st.serialize_field("id", &self.id)?;
        st.serialize_field("n", &self.n)?;
        st.serialize_field("m", &self.m)?;
        st.serialize_field("weighted", &self.weighted)?;
        st.serialize_field("freeness", self.freeness.name())?;
        st.serialize_field("free", &self.is_free())?;
        st.serialize_field("partition", &self.partition.sizes())?;
        st.serialize_field("ma_class", &self.ma_class)?;
        st.serialize_field("ma_dim_log2", &finite(self.ma_dimension.log2))?;
        st.serialize_field("ma_dim_exact", &self.ma_dimension.exact.to_string())?;
        st.serialize_field("lower_bound_log2", &finite(self.lower_bound.log2))?;
        st.serialize_field("lower_bound_exact", &self.lower_bound.exact.to_string())?;
        st.serialize_field(
            "dimension_exact",
            &self.dimension.as_ref().map(|d| d.exact.to_string()),
        )?;
        let timings: serde_json::Map<String, serde_json::Value> = self
            .timings_ms
            .iter()
            .map(|(stage, ms)| (format!("{stage:?}"), serde_json::Value::from(*ms)))
            .collect();
        st.serialize_field("timings_ms", &timings)?;
        st.serialize_field("method_trail", &self.method_trail)?;
        st.serialize_field("prng_id", &self.prng_id)?;
        st.serialize_field("version", self.version)?;
        st.end()
    }
}

struct Trail {
    stages: Vec<Stage>,
    timings: Vec<(Stage, f64)>,
}

impl Trail {
    fn run<T>(&mut self, stage: Stage, f: impl FnOnce() -> T) -> T {
        let start = Instant::now();
        let out = f();
        self.stages.push(stage);
        self.timings
            .push((stage, start.elapsed().as_secs_f64() * 1e3));
        out
    }
}

/// Staged verdict: splitting, subdivision certificate, weighted condition,
/// brute-force closure, and finally a lower bound from the singleton blocks.
/// Graphs with two or more isolated vertices are settled up front.
pub fn analyze(g: &Graph, opts: &AnalysisOptions) -> DlaReport {
    let shape = g.unweighted();
    let (ma_class, ma_dimension) = classify_multiangle(&shape).expect("unweighted shape");
    let mut trail = Trail {
        stages: Vec::new(),
        timings: Vec::new(),
    };
    let subject = if g.has_uniform_weights() { &shape } else { g };
    let (freeness, partition, bound) = decide(subject, &shape, &ma_dimension, opts, &mut trail);

    let dimension = match &freeness {
        f if f.is_free() => Some(ma_dimension.clone()),
        Freeness::BruteForcedNotFree { dimension } => Some(DlaDimension::from_usize(*dimension)),
        Freeness::NotFreeIsolated { dimension: Some(d) } => Some(DlaDimension::new(d.clone())),
        _ => None,
    };
    let lower_bound = match &dimension {
        Some(d) if *d > bound => d.clone(),
        _ => bound,
    };
    DlaReport {
        id: opts.id.clone(),
        n: g.n(),
        m: g.m(),
        weighted: g.is_weighted(),
        freeness,
        partition,
        ma_class,
        ma_dimension,
        lower_bound,
        dimension,
        timings_ms: trail.timings,
        method_trail: trail.stages,
        prng_id: opts.prng_id.clone(),
        version: env!("CARGO_PKG_VERSION"),
    }
}

/// Analysis of a graph built by [`crate::graph::extend_free`]: when the base
/// graph is free, so is the extension.
pub fn analyze_extension(ext: &FreeExtension, opts: &AnalysisOptions) -> DlaReport {
    let quick = AnalysisOptions {
        brute_force: false,
        ..opts.clone()
    };
    let mut report = analyze(&ext.graph, &quick);
    if report.is_free() {
        return report;
    }
    let base: Vec<usize> = (0..ext.base_n).collect();
    let start = Instant::now();
    let base_free = analyze(&ext.graph.induced_subgraph(&base), opts).is_free();
    report.method_trail.push(Stage::Extension);
    report
        .timings_ms
        .push((Stage::Extension, start.elapsed().as_secs_f64() * 1e3));
    if base_free {
        report.freeness = Freeness::CertifiedExtension;
        report.dimension = Some(report.ma_dimension.clone());
        report.lower_bound = report.ma_dimension.clone();
        return report;
    }
    if opts.brute_force {
        return analyze(&ext.graph, opts);
    }
    report
}

fn decide(
    g: &Graph,
    shape: &Graph,
    ma: &DlaDimension,
    opts: &AnalysisOptions,
    trail: &mut Trail,
) -> (Freeness, VertexPartition, DlaDimension) {
    let n = g.n();
    let isolated: Vec<usize> = (0..n).filter(|&u| g.degree(u) == 0).collect();
    let core: Vec<usize> = (0..n).filter(|&u| g.degree(u) > 0).collect();

    if isolated.len() >= 2 {
        return trail.run(Stage::Isolated, || {
            let core_g = g.induced_subgraph(&core);
            let sub = if core.is_empty() {
                None
            } else {
                let r = analyze(
                    &core_g,
                    &AnalysisOptions {
                        id: String::new(),
                        ..opts.clone()
                    },
                );
                Some(r)
            };
            // Free core: ma(core) + 1.
            let dimension = match &sub {
                None => Some(BigUint::from(1u32)),
                Some(r) if r.is_free() => Some(r.ma_dimension.exact.clone() + 1u32),
                _ => None,
            };
            let mut blocks: Vec<Vec<usize>> = match &sub {
                Some(r) => r
                    .partition
                    .blocks()
                    .iter()
                    .map(|b| b.iter().map(|&i| core[i]).collect())
                    .collect(),
                None => Vec::new(),
            };
            blocks.push(isolated.clone());
            let bound = match &sub {
                Some(r) => DlaDimension::new(r.lower_bound.exact.clone()),
                None => DlaDimension::from_usize(1),
            };
            (
                Freeness::NotFreeIsolated { dimension },
                VertexPartition::new(blocks),
                bound,
            )
        });
    }

    let weighted = g.is_weighted();
    // Weighted graphs keep the trivial partition.
    let partition = if weighted {
        VertexPartition::trivial(n)
    } else {
        trail.run(Stage::Split, || bfs_splitting(g))
    };
    if !weighted && partition.is_discrete() {
        return (Freeness::Splittable, partition, ma.clone());
    }
    let bound = dimension_lower_bound(shape, &partition);

    if !weighted && core.len() >= 2 {
        let certified = trail.run(Stage::Certificate, || {
            let core_g = g.induced_subgraph(&core);
            certify_asym_subdivision(&core_g)
                .and_then(|c| verify_certificate(&core_g, &c))
                .is_ok()
        });
        if certified {
            return (Freeness::CertifiedSubdivision, partition, bound);
        }
    }

    if weighted {
        let ok = trail.run(Stage::WeightedCheck, || {
            weighted_freeness_check(g).unwrap_or(false)
        });
        if ok {
            return (Freeness::WeightedCondition, partition, bound);
        }
    }

    if opts.brute_force && n <= opts.max_closure_qubits {
        let verdict = trail.run(Stage::BruteForce, || {
            brute_verdict(g, ma, opts.max_closure_qubits)
        });
        if let Some(f) = verdict {
            return (f, partition, bound);
        }
    }

    trail.run(Stage::LowerBound, || ());
    (Freeness::Undetermined, partition, bound)
}

fn brute_verdict(g: &Graph, ma: &DlaDimension, cap: usize) -> Option<Freeness> {
    let target = ma.to_usize()?;
    if !g.is_weighted() && !has_trivial_automorphism_group(g).ok()? {
        let dimension = qaoa_closure_dimension(g, cap).ok()?;
        debug_assert!(dimension < target);
        return Some(Freeness::BruteForcedNotFree { dimension });
    }
    let dimension = qaoa_closure_dimension(g, cap).ok()?;
    Some(if dimension == target {
        Freeness::BruteForcedFree
    } else {
        Freeness::BruteForcedNotFree { dimension }
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{named_family, Family};

    fn run(g: &Graph) -> DlaReport {
        analyze(g, &AnalysisOptions::default())
    }

    #[test]
    fn spider_is_free() {
        let g = named_family(&Family::Spider(vec![1, 2, 3])).unwrap();
        let r = run(&g);
        assert!(matches!(
            r.freeness,
            Freeness::Splittable | Freeness::CertifiedSubdivision
        ));
        assert_eq!(r.dimension.unwrap().to_usize(), Some(4095));
    }

    #[test]
    fn cycle_is_not_free() {
        let g = named_family(&Family::Cycle(5)).unwrap();
        let r = run(&g);
        assert_eq!(r.freeness, Freeness::BruteForcedNotFree { dimension: 14 });
        assert_eq!(r.lower_bound.to_usize(), Some(14));
        assert_eq!(r.deciding_stage(), Some(Stage::BruteForce));
    }

    #[test]
    fn brute_force_can_be_disabled() {
        let g = named_family(&Family::Cycle(5)).unwrap();
        let opts = AnalysisOptions {
            brute_force: false,
            ..AnalysisOptions::default()
        };
        let r = analyze(&g, &opts);
        assert_eq!(r.freeness, Freeness::Undetermined);
        assert_eq!(r.dimension, None);
        assert_eq!(r.method_trail.last(), Some(&Stage::LowerBound));
    }

    #[test]
    fn isolated_vertices() {
        let spider = named_family(&Family::Spider(vec![1, 2, 3])).unwrap();
        let one = spider.disjoint_union(&Graph::new(1, []).unwrap());
        let r = run(&one);
        assert!(r.is_free());
        assert_eq!(r.ma_dimension.to_usize(), Some(4096));

        let two = one.disjoint_union(&Graph::new(1, []).unwrap());
        let r = run(&two);
        assert_eq!(
            r.freeness,
            Freeness::NotFreeIsolated {
                dimension: Some(BigUint::from(4096u32))
            }
        );
        assert_eq!(r.ma_dimension.to_usize(), Some(4097));

        let empty = Graph::new(3, []).unwrap();
        assert_eq!(run(&empty).dimension.unwrap().to_usize(), Some(1));
    }

    #[test]
    fn isolated_pair_matches_closure() {
        let g = named_family(&Family::Spider(vec![1, 2, 3]))
            .unwrap()
            .disjoint_union(&Graph::new(2, []).unwrap());
        let r = run(&g);
        assert_eq!(
            r.dimension.unwrap().to_usize(),
            Some(qaoa_closure_dimension(&g, 9).unwrap())
        );
        let p3 = named_family(&Family::Path(3))
            .unwrap()
            .disjoint_union(&Graph::new(2, []).unwrap());
        assert_eq!(
            run(&p3).freeness,
            Freeness::NotFreeIsolated { dimension: None }
        );
    }

    #[test]
    fn uniform_weights_count_as_unweighted() {
        let g = named_family(&Family::Spider(vec![1, 2, 3])).unwrap();
        let w = Graph::weighted(7, g.edges().iter().map(|&(u, v)| (u, v, -2.5))).unwrap();
        let r = run(&w);
        assert!(r.weighted);
        assert_eq!(r.freeness, run(&g).freeness);
    }

    #[test]
    fn json_fields() {
        let g = named_family(&Family::Spider(vec![1, 2, 3])).unwrap();
        let mut r = run(&g);
        r.clear_timings();
        let v: serde_json::Value = serde_json::to_value(&r).unwrap();
        assert_eq!(v["ma_dim_exact"], "4095");
        assert_eq!(v["free"], true);
        assert!(v["timings_ms"].is_object());
    }
}
