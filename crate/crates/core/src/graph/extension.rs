use serde::{Deserialize, Serialize};

use super::{Graph, GraphError};

/// Hypothesis under which joining a second graph to a free graph keeps the
/// DLA free. Parities refer to vertex degrees in the respective graph.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum ExtensionRule {
    /// Every even vertex of the free graph gets exactly one connecting edge;
    /// odd vertices of the second graph receive an odd positive number of
    /// them and even vertices an even positive number.
    PartitionEvenSide,
    /// Every odd vertex of the free graph gets exactly one connecting edge;
    /// odd vertices of the second graph receive an even positive number of
    /// them and even vertices an odd number.
    PartitionOddSide,
    /// The second graph is a forest; each of its odd vertices gets exactly
    /// one connecting edge and each even vertex of the free graph receives
    /// an odd number of them.
    Forest,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct FreeExtension {
    /// The free input graph on `0..base_n`, the second graph after it.
    pub graph: Graph,
    pub base_n: usize,
    pub rule: ExtensionRule,
}

/// Joins `other` to the free graph `g` by the edges `connect`, given as
/// `(vertex of g, vertex of other)`, after checking the rule's hypothesis.
pub fn extend_free(
    g: &Graph,
    other: &Graph,
    connect: &[(usize, usize)],
    rule: ExtensionRule,
) -> Result<FreeExtension, GraphError> {
    if g.is_weighted() || other.is_weighted() {
        return Err(GraphError::Weighted);
    }
    let bad = |msg: String| Err(GraphError::Extension(msg));
    let mut count_g = vec![0usize; g.n()];
    let mut count_o = vec![0usize; other.n()];
    for &(a, b) in connect {
        if a >= g.n() || b >= other.n() {
            return bad(format!("connecting edge ({a}, {b}) out of range"));
        }
        count_g[a] += 1;
        count_o[b] += 1;
    }
    let odd_g = |u: usize| g.degree(u) % 2 == 1;
    let odd_o = |u: usize| other.degree(u) % 2 == 1;

    match rule {
        ExtensionRule::PartitionEvenSide | ExtensionRule::PartitionOddSide => {
            let want_odd_side = rule == ExtensionRule::PartitionOddSide;
            for (u, &c) in count_g.iter().enumerate() {
                let expected = usize::from(odd_g(u) == want_odd_side);
                if c != expected {
                    return bad(format!(
                        "vertex {u} of the free graph has {c} connecting edges, expected {expected}"
                    ));
                }
            }
            for (t, &c) in count_o.iter().enumerate() {
                // PartitionEvenSide: odd t gets an odd count; PartitionOddSide: even count.
                let want_odd_count = odd_o(t) != want_odd_side;
                if c == 0 || (c % 2 == 1) != want_odd_count {
                    return bad(format!("vertex {t} of the second graph receives {c} edges"));
                }
            }
        }
        ExtensionRule::Forest => {
            if !other.is_forest() {
                return bad("second graph is not a forest".into());
            }
            for (t, &c) in count_o.iter().enumerate() {
                let expected = usize::from(odd_o(t));
                if c != expected {
                    return bad(format!(
                        "forest vertex {t} has {c} connecting edges, expected {expected}"
                    ));
                }
            }
            for (u, &c) in count_g.iter().enumerate() {
                let ok = if odd_g(u) { c == 0 } else { c % 2 == 1 };
                if !ok {
                    return bad(format!("vertex {u} of the free graph receives {c} edges"));
                }
            }
        }
    }

    let mut joined = g.disjoint_union(other);
    let off = g.n();
    let mut edges = joined.edges().to_vec();
    edges.extend(connect.iter().map(|&(a, b)| (a, b + off)));
    joined = Graph::new(joined.n(), edges).map_err(|e| GraphError::Extension(e.to_string()))?;
    Ok(FreeExtension {
        graph: joined,
        base_n: g.n(),
        rule,
    })
}
