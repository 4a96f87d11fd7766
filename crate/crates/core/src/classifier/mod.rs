//! Multi-angle classification, exact dimensions, brute-force closures and
//! the full analysis pipeline.

mod analyze;
mod brute;

pub use analyze::{
    analyze, analyze_extension, AnalysisOptions, DlaReport, Freeness, Stage, MAX_CLOSURE_QUBITS_ENV,
};
pub use brute::{
    brute_force_is_free, multiangle_closure, qaoa_closure, qaoa_closure_dimension, qaoa_generators,
    DEFAULT_QUBIT_CAP,
};

use std::collections::HashSet;
use std::fmt;

use num_bigint::BigUint;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{automorphism_group, Graph, GraphError, VertexPartition};
use crate::pauli::{Mod61, PauliError, PauliTerm};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ClassifierError {
    #[error("classification needs an unweighted graph")]
    Weighted,
    #[error("{what} supports at most {limit}, got {got}")]
    TooLarge {
        what: &'static str,
        limit: usize,
        got: usize,
    },
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Pauli(#[from] PauliError),
}

/// Exact dimension with a `log2` convenience value (`-inf` for zero).
#[derive(Debug, Clone, PartialEq)]
pub struct DlaDimension {
    pub exact: BigUint,
    pub log2: f64,
}

impl DlaDimension {
    pub fn new(exact: BigUint) -> Self {
        let log2 = big_log2(&exact);
        DlaDimension { exact, log2 }
    }

    pub fn zero() -> Self {
        Self::new(BigUint::zero())
    }

    pub fn from_usize(v: usize) -> Self {
        Self::new(BigUint::from(v))
    }

    /// The value if it fits in a `usize`.
    pub fn to_usize(&self) -> Option<usize> {
        usize::try_from(&self.exact).ok()
    }

    /// True when the dimension is at least `2^k`.
    pub fn at_least_pow2(&self, k: u64) -> bool {
        self.exact.bits() > k
    }
}

impl PartialOrd for DlaDimension {
    fn partial_cmp(&self, o: &Self) -> Option<std::cmp::Ordering> {
        Some(self.exact.cmp(&o.exact))
    }
}

impl fmt::Display for DlaDimension {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.exact)
    }
}

fn big_log2(x: &BigUint) -> f64 {
    let bits = x.bits();
    if bits == 0 {
        return f64::NEG_INFINITY;
    }
    if bits <= 64 {
        let v: u64 = x.try_into().expect("fits");
        return (v as f64).log2();
    }
    let shift = bits - 64;
    let top: u64 = (x >> shift).try_into().expect("fits");
    (top as f64).log2() + shift as f64
}

fn pow2(k: u64) -> BigUint {
    BigUint::one() << k
}

/// Isomorphism type of the multi-angle algebra.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum DlaLabel {
    So2n,
    So2nPlusSo2n,
    SuPlusSu,
    SpPlusSp,
    SoPlusSo,
    Su,
    DirectSumOfComponents,
    ComputedRaw,
    Unknown,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct DlaClass {
    pub label: DlaLabel,
    pub component_count: Option<usize>,
}

impl fmt::Display for DlaClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.label)
    }
}

/// Label and dimension for one connected component.
fn classify_component(g: &Graph) -> (DlaLabel, BigUint) {
    let n = g.n() as u64;
    if g.is_path() {
        return (DlaLabel::So2n, BigUint::from(2 * n * n - n));
    }
    if g.is_cycle() {
        return (DlaLabel::So2nPlusSo2n, BigUint::from(4 * n * n - 2 * n));
    }
    match g.bipartition() {
        None => (DlaLabel::SuPlusSu, pow2(2 * n - 1) - 2u32),
        Some(side) => {
            if n % 2 == 1 {
                (DlaLabel::Su, pow2(2 * n - 2) - 1u32)
            } else if side.iter().filter(|&&s| s).count() % 2 == 1 {
                (DlaLabel::SpPlusSp, pow2(2 * n - 2) + pow2(n - 1))
            } else {
                (DlaLabel::SoPlusSo, pow2(2 * n - 2) - pow2(n - 1))
            }
        }
    }
}

/// Multi-angle algebra of an unweighted graph, summed over components;
/// an isolated vertex contributes one dimension.
pub fn classify_multiangle(g: &Graph) -> Result<(DlaClass, DlaDimension), ClassifierError> {
    if g.is_weighted() {
        return Err(ClassifierError::Weighted);
    }
    let comps = g.components();
    let mut total = BigUint::zero();
    let mut labels = HashSet::new();
    for c in &comps {
        let (label, d) = classify_component(&g.induced_subgraph(c));
        labels.insert(label);
        total += d;
    }
    let label = match (comps.len(), labels.len()) {
        (1, _) => *labels.iter().next().unwrap(),
        (0, _) => DlaLabel::Unknown,
        _ => DlaLabel::DirectSumOfComponents,
    };
    Ok((
        DlaClass {
            label,
            component_count: Some(comps.len()),
        },
        DlaDimension::new(total),
    ))
}

/// Multi-angle dimension of the subgraph induced by the singleton blocks
/// of `p`; weights are ignored.
pub fn dimension_lower_bound(g: &Graph, p: &VertexPartition) -> DlaDimension {
    let singles = p.singletons();
    if singles.is_empty() {
        return DlaDimension::zero();
    }
    let sub = g.unweighted().induced_subgraph(&singles);
    classify_multiangle(&sub).expect("unweighted").1
}

/// Largest degree for which signed neighbourhood sums are enumerated.
pub const WEIGHTED_DEGREE_LIMIT: usize = 20;
/// Absolute tolerance under which two signed sums count as equal.
pub const WEIGHTED_TOLERANCE: f64 = 1e-12;

/// Sufficient condition for freeness of a weighted graph: non-zero weights
/// and, for distinct vertices, disjoint sets of signed weight sums over
/// their neighbourhoods.
pub fn weighted_freeness_check(g: &Graph) -> Result<bool, ClassifierError> {
    if g.max_degree() > WEIGHTED_DEGREE_LIMIT {
        return Err(ClassifierError::TooLarge {
            what: "signed-sum enumeration degree",
            limit: WEIGHTED_DEGREE_LIMIT,
            got: g.max_degree(),
        });
    }
    if (0..g.m()).any(|i| g.weight(i) == 0.0) {
        return Ok(false);
    }
    let mut values: Vec<(f64, usize)> = Vec::new();
    for u in 0..g.n() {
        let mut sums = vec![0.0f64];
        for &v in g.neighbors(u) {
            let r = g.edge_weight(u, v).expect("edge");
            sums = sums.iter().flat_map(|&s| [s + r, s - r]).collect();
        }
        sums.sort_by(f64::total_cmp);
        sums.dedup();
        values.extend(sums.into_iter().map(|s| (s, u)));
    }
    values.sort_by(|a, b| a.0.total_cmp(&b.0));
    Ok(values
        .windows(2)
        .all(|w| w[0].1 == w[1].1 || (w[1].0 - w[0].0).abs() > WEIGHTED_TOLERANCE))
}

/// Size limit for orbit counting.
pub const ORBIT_LIMIT: usize = 7;

/// Number of orbits of the multi-angle Pauli basis under `Aut(G)` acting on
/// qubits, which is the dimension of the automorphism-fixed subalgebra.
pub fn orbit_fixed_dimension(g: &Graph) -> Result<usize, ClassifierError> {
    if g.n() > ORBIT_LIMIT {
        return Err(ClassifierError::TooLarge {
            what: "orbit counting",
            limit: ORBIT_LIMIT,
            got: g.n(),
        });
    }
    let g = g.unweighted();
    let basis = multiangle_closure::<Mod61>(&g, ORBIT_LIMIT)?;
    let terms: Vec<PauliTerm> = basis.pivots();
    let set: HashSet<&PauliTerm> = terms.iter().collect();
    let aut = automorphism_group(&g)?;
    let n = g.n();
    let image = |t: &PauliTerm, perm: &[usize]| {
        let xs: Vec<usize> = (0..n).filter(|&q| t.x_bit(q)).map(|q| perm[q]).collect();
        let zs: Vec<usize> = (0..n).filter(|&q| t.z_bit(q)).map(|q| perm[q]).collect();
        PauliTerm::from_support(n, &xs, &zs)
    };
    let mut seen: HashSet<PauliTerm> = HashSet::new();
    let mut orbits = 0;
    for t in &terms {
        if seen.contains(t) {
            continue;
        }
        orbits += 1;
        for perm in &aut {
            let img = image(t, perm);
            debug_assert!(set.contains(&img), "basis not automorphism invariant");
            seen.insert(img);
        }
    }
    Ok(orbits)
}
