use serde::{Deserialize, Serialize};

use super::{named_family, Family, Graph, GraphError};

/// Output of [`reduce_to_subdivision`]: an asymmetric subdivision of an odd
/// graph whose MaxCut exceeds that of the input by exactly `n' - n`.
///
/// Vertex `u` of the input keeps label `u` in `graph`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SubdivisionReduction {
    pub graph: Graph,
    /// Vertices of the odd graph being subdivided, as labels of `graph`.
    pub base_vertices: Vec<usize>,
    /// Interior vertices inserted on each base edge, keyed by base edge.
    pub chains: Vec<((usize, usize), Vec<usize>)>,
}

impl SubdivisionReduction {
    pub fn added_vertices(&self, original: &Graph) -> usize {
        self.graph.n() - original.n()
    }
}

/// Maps a connected unweighted graph to an asymmetric subdivision of an odd
/// graph, preserving MaxCut up to the additive constant `|V'| - |V|`.
pub fn reduce_to_subdivision(g: &Graph) -> Result<SubdivisionReduction, GraphError> {
    if g.is_weighted() {
        return Err(GraphError::Weighted);
    }
    if g.n() < 2 {
        return Err(GraphError::TooSmall(2));
    }
    if !g.is_connected() {
        return Err(GraphError::Disconnected);
    }
    if g.n() == 2 {
        // Arms 1-2, 3-4-5 and 6-7-8-9 around centre 0; the input edge is the
        // first arm edge.
        return Ok(SubdivisionReduction {
            graph: named_family(&Family::Spider(vec![2, 3, 4]))?,
            base_vertices: vec![0, 2, 5, 9],
            chains: vec![
                ((0, 2), vec![1]),
                ((0, 5), vec![3, 4]),
                ((0, 9), vec![6, 7, 8]),
            ],
        });
    }

    let n = g.n();
    let even: Vec<usize> = (0..n).filter(|&u| g.degree(u).is_multiple_of(2)).collect();
    let pendant_edges: Vec<(usize, usize)> =
        even.iter().enumerate().map(|(i, &u)| (u, n + i)).collect();
    let base_n = n + even.len();
    let mut order = pendant_edges;
    order.extend_from_slice(g.edges());

    let mut edges = Vec::new();
    let mut chains = Vec::new();
    let mut next = base_n;
    for (i, &(a, b)) in order.iter().enumerate() {
        let count = 2 * (i + 1);
        let inner: Vec<usize> = (next..next + count).collect();
        next += count;
        let mut prev = a;
        for &w in &inner {
            edges.push((prev, w));
            prev = w;
        }
        edges.push((prev, b));
        chains.push(((a.min(b), a.max(b)), inner));
    }
    chains.sort_by_key(|c| c.0);
    Ok(SubdivisionReduction {
        graph: Graph::new(next, edges)?,
        base_vertices: (0..base_n).collect(),
        chains,
    })
}
