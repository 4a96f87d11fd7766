//! Simple undirected graphs with optional edge weights, plus the graph-level
//! constructions used by the freeness analysis.

mod canon;
mod extension;
mod families;
mod maxcut;
mod random;
mod subdivision;

use std::collections::VecDeque;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use canon::{
    automorphism_group, canonical_form, enumerate_connected, enumerate_graphs, from_graph6,
    has_trivial_automorphism_group, to_graph6, Permutation,
};
pub use extension::{extend_free, ExtensionRule, FreeExtension};
pub use families::{named_family, Family};
pub use maxcut::{brute_maxcut, exact_maxcut, CutAssignment, BRUTE_MAXCUT_LIMIT};
pub use random::{sample_er, PRNG_ID};
pub use subdivision::{reduce_to_subdivision, SubdivisionReduction};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum GraphError {
    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("duplicate edge ({0}, {1})")]
    DuplicateEdge(usize, usize),
    #[error("edge weight {weight} on ({u}, {v}) is zero or not finite")]
    BadWeight { u: usize, v: usize, weight: f64 },
    #[error("{count} weights supplied for {m} edges")]
    WeightCount { count: usize, m: usize },
    #[error("graph needs at least {0} vertices")]
    TooSmall(usize),
    #[error("graph must be connected")]
    Disconnected,
    #[error("graph must be unweighted")]
    Weighted,
    #[error("{what} requires at most {limit} vertices, got {n}")]
    TooLarge {
        what: &'static str,
        limit: usize,
        n: usize,
    },
    #[error("invalid family parameters: {0}")]
    BadFamily(String),
    #[error("probability {0} outside [0, 1]")]
    BadProbability(f64),
    #[error("extension hypothesis violated: {0}")]
    Extension(String),
    #[error("invalid graph6 string: {0}")]
    Graph6(String),
}

/// Undirected simple graph on vertices `0..n`.
///
/// Edges are stored canonically as `(u, v)` with `u < v`, sorted
/// lexicographically; weights, when present, are aligned with that order.
#[derive(Clone, PartialEq, Serialize, Deserialize)]
pub struct Graph {
    n: usize,
    edges: Vec<(usize, usize)>,
    weights: Option<Vec<f64>>,
    #[serde(skip)]
    adj: Vec<Vec<usize>>,
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Graph")
            .field("n", &self.n)
            .field("edges", &self.edges)
            .field("weights", &self.weights)
            .finish()
    }
}

impl Graph {
    pub fn new<I>(n: usize, edges: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        Self::build(n, edges.into_iter().map(|(u, v)| (u, v, None)), false)
    }

    /// Weighted graph; every weight must be finite and non-zero.
    pub fn weighted<I>(n: usize, edges: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = (usize, usize, f64)>,
    {
        Self::build(n, edges.into_iter().map(|(u, v, w)| (u, v, Some(w))), true)
    }

    fn build<I>(n: usize, edges: I, weighted: bool) -> Result<Self, GraphError>
    where
        I: Iterator<Item = (usize, usize, Option<f64>)>,
    {
        let mut list = Vec::new();
        for (u, v, w) in edges {
            for x in [u, v] {
                if x >= n {
                    return Err(GraphError::VertexOutOfRange { vertex: x, n });
                }
            }
            if u == v {
                return Err(GraphError::SelfLoop(u));
            }
            if let Some(w) = w {
                if !w.is_finite() || w == 0.0 {
                    return Err(GraphError::BadWeight { u, v, weight: w });
                }
            }
            list.push((u.min(v), u.max(v), w.unwrap_or(1.0)));
        }
        list.sort_by_key(|e| (e.0, e.1));
        for pair in list.windows(2) {
            if (pair[0].0, pair[0].1) == (pair[1].0, pair[1].1) {
                return Err(GraphError::DuplicateEdge(pair[0].0, pair[0].1));
            }
        }
        let edges: Vec<_> = list.iter().map(|&(u, v, _)| (u, v)).collect();
        let weights = weighted.then(|| list.iter().map(|e| e.2).collect());
        Ok(Self::from_parts(n, edges, weights))
    }

    fn from_parts(n: usize, edges: Vec<(usize, usize)>, weights: Option<Vec<f64>>) -> Self {
        let mut adj = vec![Vec::new(); n];
        for &(u, v) in &edges {
            adj[u].push(v);
            adj[v].push(u);
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        Graph {
            n,
            edges,
            weights,
            adj,
        }
    }

    /// Rebuilds the adjacency index after deserialisation.
    pub fn reindexed(self) -> Self {
        Self::from_parts(self.n, self.edges, self.weights)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn is_weighted(&self) -> bool {
        self.weights.is_some()
    }

    pub fn weights(&self) -> Option<&[f64]> {
        self.weights.as_deref()
    }

    /// Weight of the `i`-th canonical edge; 1 for unweighted graphs.
    pub fn weight(&self, i: usize) -> f64 {
        self.weights.as_ref().map_or(1.0, |w| w[i])
    }

    pub fn edge_index(&self, u: usize, v: usize) -> Option<usize> {
        let key = (u.min(v), u.max(v));
        self.edges.binary_search(&key).ok()
    }

    pub fn edge_weight(&self, u: usize, v: usize) -> Option<f64> {
        self.edge_index(u, v).map(|i| self.weight(i))
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u].binary_search(&v).is_ok()
    }

    pub fn neighbors(&self, u: usize) -> &[usize] {
        &self.adj[u]
    }

    pub fn degree(&self, u: usize) -> usize {
        self.adj[u].len()
    }

    pub fn max_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).max().unwrap_or(0)
    }

    /// Copy with all weights dropped.
    pub fn unweighted(&self) -> Graph {
        Graph {
            weights: None,
            ..self.clone()
        }
    }

    /// True when the graph is weighted and every edge carries the same
    /// weight; such a graph generates the same algebra as its shape.
    pub fn has_uniform_weights(&self) -> bool {
        self.weights
            .as_ref()
            .is_some_and(|w| w.windows(2).all(|p| p[0] == p[1]))
    }

    /// Entry `u` is true when `deg(u)` is odd.
    pub fn degree_parity_vector(&self) -> Vec<bool> {
        (0..self.n).map(|u| self.degree(u) % 2 == 1).collect()
    }

    /// Odd-degree and even-degree vertex sets, each sorted.
    pub fn degree_parity_split(&self) -> (Vec<usize>, Vec<usize>) {
        (0..self.n).partition(|&u| self.degree(u) % 2 == 1)
    }

    /// True when every vertex has odd degree, the graph is connected and
    /// has at least three vertices.
    pub fn is_odd_graph(&self) -> bool {
        self.n >= 3 && self.is_connected() && (0..self.n).all(|u| self.degree(u) % 2 == 1)
    }

    /// Subgraph induced by `vertices`, relabelled `0..k` in the given order.
    pub fn induced_subgraph(&self, vertices: &[usize]) -> Graph {
        let mut index = vec![usize::MAX; self.n];
        for (i, &v) in vertices.iter().enumerate() {
            index[v] = i;
        }
        let mut edges = Vec::new();
        let mut weights = Vec::new();
        for (i, &(u, v)) in self.edges.iter().enumerate() {
            if index[u] != usize::MAX && index[v] != usize::MAX {
                let (a, b) = (index[u], index[v]);
                edges.push((a.min(b), a.max(b)));
                weights.push(self.weight(i));
            }
        }
        let mut order: Vec<usize> = (0..edges.len()).collect();
        order.sort_by_key(|&i| edges[i]);
        let edges_sorted = order.iter().map(|&i| edges[i]).collect();
        let weights = self
            .is_weighted()
            .then(|| order.iter().map(|&i| weights[i]).collect());
        Self::from_parts(vertices.len(), edges_sorted, weights)
    }

    /// Relabels vertex `u` to `perm[u]`.
    pub fn permuted(&self, perm: &[usize]) -> Graph {
        let edges = self
            .edges
            .iter()
            .enumerate()
            .map(|(i, &(u, v))| (perm[u], perm[v], self.weight(i)));
        if self.is_weighted() {
            Graph::weighted(self.n, edges).expect("permutation preserves validity")
        } else {
            Graph::new(self.n, edges.map(|(u, v, _)| (u, v)))
                .expect("permutation preserves validity")
        }
    }

    /// Connected components, each sorted, ordered by smallest vertex.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.n];
        let mut out = Vec::new();
        for s in 0..self.n {
            if seen[s] {
                continue;
            }
            seen[s] = true;
            let mut comp = vec![s];
            let mut queue = VecDeque::from([s]);
            while let Some(u) = queue.pop_front() {
                for &v in &self.adj[u] {
                    if !seen[v] {
                        seen[v] = true;
                        comp.push(v);
                        queue.push_back(v);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.n > 0 && self.components().len() == 1
    }

    /// Proper 2-colouring (`false`/`true` per vertex) if one exists.
    pub fn bipartition(&self) -> Option<Vec<bool>> {
        let mut color: Vec<Option<bool>> = vec![None; self.n];
        for s in 0..self.n {
            if color[s].is_some() {
                continue;
            }
            color[s] = Some(false);
            let mut queue = VecDeque::from([s]);
            while let Some(u) = queue.pop_front() {
                let cu = color[u].unwrap();
                for &v in &self.adj[u] {
                    match color[v] {
                        None => {
                            color[v] = Some(!cu);
                            queue.push_back(v);
                        }
                        Some(cv) if cv == cu => return None,
                        _ => {}
                    }
                }
            }
        }
        Some(color.into_iter().map(Option::unwrap).collect())
    }

    pub fn is_path(&self) -> bool {
        self.is_connected() && self.m() + 1 == self.n && self.max_degree() <= 2
    }

    pub fn is_cycle(&self) -> bool {
        self.n >= 3 && self.is_connected() && (0..self.n).all(|u| self.degree(u) == 2)
    }

    pub fn is_forest(&self) -> bool {
        self.m() + self.components().len() == self.n
    }

    /// Number of neighbours of `u` inside the vertex set flagged by `member`.
    pub fn neighbors_in(&self, u: usize, member: &[bool]) -> usize {
        self.adj[u].iter().filter(|&&v| member[v]).count()
    }

    /// Disjoint union, with `other` relabelled to `n..n+other.n`.
    pub fn disjoint_union(&self, other: &Graph) -> Graph {
        let off = self.n;
        let weighted = self.is_weighted() || other.is_weighted();
        let mut edges: Vec<(usize, usize, f64)> = self
            .edges
            .iter()
            .enumerate()
            .map(|(i, &(u, v))| (u, v, self.weight(i)))
            .collect();
        edges.extend(
            other
                .edges
                .iter()
                .enumerate()
                .map(|(i, &(u, v))| (u + off, v + off, other.weight(i))),
        );
        let n = self.n + other.n;
        if weighted {
            Graph::weighted(n, edges).expect("union of valid graphs")
        } else {
            Graph::new(n, edges.into_iter().map(|(u, v, _)| (u, v))).expect("union of valid graphs")
        }
    }
}

/// Unordered partition of a vertex set; blocks are sorted and ordered by
/// their smallest member.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct VertexPartition {
    blocks: Vec<Vec<usize>>,
}

impl VertexPartition {
    /// Normalises the blocks; empty blocks are dropped.
    pub fn new(blocks: Vec<Vec<usize>>) -> Self {
        let mut blocks: Vec<Vec<usize>> = blocks
            .into_iter()
            .filter(|b| !b.is_empty())
            .map(|mut b| {
                b.sort_unstable();
                b
            })
            .collect();
        blocks.sort_by_key(|b| b[0]);
        VertexPartition { blocks }
    }

    pub fn trivial(n: usize) -> Self {
        Self::new(vec![(0..n).collect()])
    }

    pub fn discrete(n: usize) -> Self {
        Self::new((0..n).map(|u| vec![u]).collect())
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    pub fn vertex_count(&self) -> usize {
        self.blocks.iter().map(Vec::len).sum()
    }

    pub fn is_discrete(&self) -> bool {
        self.blocks.iter().all(|b| b.len() == 1)
    }

    /// Block sizes in canonical block order.
    pub fn sizes(&self) -> Vec<usize> {
        self.blocks.iter().map(Vec::len).collect()
    }

    /// Vertices lying in singleton blocks.
    pub fn singletons(&self) -> Vec<usize> {
        let mut out: Vec<usize> = self
            .blocks
            .iter()
            .filter(|b| b.len() == 1)
            .map(|b| b[0])
            .collect();
        out.sort_unstable();
        out
    }

    /// Block index of every vertex in `0..n`; `usize::MAX` if uncovered.
    pub fn block_of(&self, n: usize) -> Vec<usize> {
        let mut out = vec![usize::MAX; n];
        for (i, b) in self.blocks.iter().enumerate() {
            for &u in b {
                out[u] = i;
            }
        }
        out
    }

    /// True when every block of `self` lies inside a block of `coarser`.
    pub fn refines(&self, coarser: &VertexPartition) -> bool {
        let n = self
            .blocks
            .iter()
            .chain(coarser.blocks.iter())
            .flatten()
            .max()
            .map_or(0, |m| m + 1);
        let owner = coarser.block_of(n);
        self.blocks.iter().all(|b| {
            b.iter()
                .all(|&u| owner[u] == owner[b[0]] && owner[u] != usize::MAX)
        })
    }
}
