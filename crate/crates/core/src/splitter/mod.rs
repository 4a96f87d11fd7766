//! Generator splitting: vertex partitions refined by neighbourhood parity,
//! the induced edge partition, the recursive freeness checker and
//! constructive certificates for asymmetric subdivisions.

mod certificate;

pub use certificate::{
    certify_asym_subdivision, verify_certificate, Certificate, CertificateEntry, CertificateError,
    Element, Rule,
};

use rand::Rng;

use crate::graph::{Graph, VertexPartition};

/// Partition of (a subset of) the edge set; blocks are sorted and ordered by
/// their first edge.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EdgePartition {
    blocks: Vec<Vec<(usize, usize)>>,
}

impl EdgePartition {
    pub fn new(blocks: Vec<Vec<(usize, usize)>>) -> Self {
        let mut blocks: Vec<Vec<(usize, usize)>> = blocks
            .into_iter()
            .filter(|b| !b.is_empty())
            .map(|mut b| {
                b.sort_unstable();
                b
            })
            .collect();
        blocks.sort();
        EdgePartition { blocks }
    }

    pub fn blocks(&self) -> &[Vec<(usize, usize)>] {
        &self.blocks
    }

    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }
}

fn membership(n: usize, set: &[usize]) -> Vec<bool> {
    let mut m = vec![false; n];
    for &u in set {
        m[u] = true;
    }
    m
}

/// Splits `s` by the parity of `|N_T(u)|`; `(even, odd)`.
fn parity_split(g: &Graph, s: &[usize], t: &[usize]) -> (Vec<usize>, Vec<usize>) {
    let member = membership(g.n(), t);
    s.iter()
        .partition(|&&u| g.neighbors_in(u, &member).is_multiple_of(2))
}

/// Recursive degree-parity splitting of induced subgraphs.
pub fn split_vertices_internal(g: &Graph) -> VertexPartition {
    let mut out = Vec::new();
    internal_rec(g, (0..g.n()).collect(), &mut out);
    VertexPartition::new(out)
}

fn internal_rec(g: &Graph, set: Vec<usize>, out: &mut Vec<Vec<usize>>) {
    if set.is_empty() {
        return;
    }
    let (even, odd) = parity_split(g, &set, &set);
    if even.is_empty() || odd.is_empty() {
        out.push(set);
        return;
    }
    internal_rec(g, even, out);
    internal_rec(g, odd, out);
}

/// Blocks ordered by `(size, smallest member)`.
fn ordered_blocks(blocks: &mut [Vec<usize>]) {
    for b in blocks.iter_mut() {
        b.sort_unstable();
    }
    blocks.sort_by_key(|b| (b.len(), b[0]));
}

/// Splits blocks of `p` against other blocks until no pair separates any
/// block. Pairs are scanned lexicographically over blocks ordered by
/// `(size, smallest member)`, restarting after every split.
pub fn split_vertices_external(g: &Graph, p: &VertexPartition) -> VertexPartition {
    let mut blocks: Vec<Vec<usize>> = p.blocks().to_vec();
    'outer: loop {
        ordered_blocks(&mut blocks);
        for si in 0..blocks.len() {
            for ti in 0..blocks.len() {
                if si == ti || blocks[si].len() < 2 {
                    continue;
                }
                let (even, odd) = parity_split(g, &blocks[si], &blocks[ti]);
                if !even.is_empty() && !odd.is_empty() {
                    blocks[si] = even;
                    blocks.push(odd);
                    continue 'outer;
                }
            }
        }
        return VertexPartition::new(blocks);
    }
}

/// Terminal partition reached by applying uniformly random splitting steps
/// (internal when `S = T`) until none applies.
pub fn random_schedule_splitting<R: Rng + ?Sized>(g: &Graph, rng: &mut R) -> VertexPartition {
    if g.n() == 0 {
        return VertexPartition::new(Vec::new());
    }
    let mut blocks: Vec<Vec<usize>> = vec![(0..g.n()).collect()];
    loop {
        let mut moves = Vec::new();
        for si in 0..blocks.len() {
            if blocks[si].len() < 2 {
                continue;
            }
            for ti in 0..blocks.len() {
                let (even, odd) = parity_split(g, &blocks[si], &blocks[ti]);
                if !even.is_empty() && !odd.is_empty() {
                    moves.push((si, even, odd));
                }
            }
        }
        if moves.is_empty() {
            return VertexPartition::new(blocks);
        }
        let (si, even, odd) = moves.swap_remove(rng.gen_range(0..moves.len()));
        blocks[si] = even;
        blocks.push(odd);
    }
}

/// `E(S, T)` for every pair of distinct blocks plus the union of the
/// within-block edge sets; empty blocks are dropped.
pub fn split_edges(g: &Graph, p: &VertexPartition) -> EdgePartition {
    let block = p.block_of(g.n());
    let k = p.len();
    let mut cross: Vec<Vec<(usize, usize)>> = vec![Vec::new(); k * k];
    let mut within = Vec::new();
    for &(u, v) in g.edges() {
        let (a, b) = (block[u].min(block[v]), block[u].max(block[v]));
        if a == b {
            within.push((u, v));
        } else {
            cross[a * k + b].push((u, v));
        }
    }
    cross.push(within);
    EdgePartition::new(cross)
}

/// BFS partition together with the number of rounds that refined it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BfsSplitting {
    pub partition: VertexPartition,
    pub rounds: usize,
}

/// Simultaneous parity refinement iterated to its fixpoint (at most `n - 1`
/// rounds).
pub fn bfs_splitting(g: &Graph) -> VertexPartition {
    bfs_splitting_traced(g).partition
}

/// [`bfs_splitting`] with the round count.
///
/// Each round only recomputes parities against blocks created in the
/// previous round, skipping the largest child of every split block: parity
/// against older blocks is already constant on every current block, and
/// parity against the skipped child is the sum of the others'. The rounds
/// coincide with those of the plain refinement.
pub fn bfs_splitting_traced(g: &Graph) -> BfsSplitting {
    let n = g.n();
    if n == 0 {
        return BfsSplitting {
            partition: VertexPartition::new(Vec::new()),
            rounds: 0,
        };
    }
    let mut block_of = vec![0usize; n];
    let mut members: Vec<Vec<usize>> = vec![(0..n).collect()];
    let mut fresh: Vec<usize> = vec![0];
    let mut odd = vec![false; n];
    let mut touched: Vec<usize> = Vec::new();
    let mut sig: Vec<Vec<u32>> = vec![Vec::new(); n];
    let mut signed: Vec<usize> = Vec::new();
    let mut rounds = 0;

    for _ in 0..n - 1 {
        for &b in &fresh {
            for &u in &members[b] {
                for &w in g.neighbors(u) {
                    odd[w] = !odd[w];
                    touched.push(w);
                }
            }
            for w in touched.drain(..) {
                if odd[w] {
                    odd[w] = false;
                    if sig[w].is_empty() {
                        signed.push(w);
                    }
                    sig[w].push(b as u32);
                }
            }
        }

        signed.sort_by(|&a, &b| (block_of[a], &sig[a]).cmp(&(block_of[b], &sig[b])));
        let mut next_fresh = Vec::new();
        let mut i = 0;
        while i < signed.len() {
            let b = block_of[signed[i]];
            let mut j = i;
            while j < signed.len() && block_of[signed[j]] == b {
                j += 1;
            }
            let mut pieces: Vec<Vec<usize>> = Vec::new();
            let mut k = i;
            while k < j {
                let mut l = k;
                while l < j && sig[signed[l]] == sig[signed[k]] {
                    l += 1;
                }
                pieces.push(signed[k..l].to_vec());
                k = l;
            }
            let rest: Vec<usize> = members[b]
                .iter()
                .copied()
                .filter(|&u| sig[u].is_empty())
                .collect();
            if !rest.is_empty() {
                pieces.insert(0, rest);
            }
            if pieces.len() > 1 {
                let largest = (0..pieces.len())
                    .max_by_key(|&p| (pieces[p].len(), std::cmp::Reverse(p)))
                    .expect("non-empty");
                for (p, piece) in pieces.into_iter().enumerate() {
                    let id = if p == 0 {
                        b
                    } else {
                        members.push(Vec::new());
                        members.len() - 1
                    };
                    for &u in &piece {
                        block_of[u] = id;
                    }
                    members[id] = piece;
                    if p != largest {
                        next_fresh.push(id);
                    }
                }
            }
            i = j;
        }
        for &w in &signed {
            sig[w].clear();
        }
        signed.clear();
        if next_fresh.is_empty() {
            break;
        }
        rounds += 1;
        fresh = next_fresh;
    }
    BfsSplitting {
        partition: VertexPartition::new(members),
        rounds,
    }
}

/// Whether the BFS partition is discrete, together with the partition.
pub fn is_splittable(g: &Graph) -> (bool, VertexPartition) {
    let p = bfs_splitting(g);
    (p.is_discrete() && p.len() == g.n(), p)
}

/// Recursive freeness test: brute force at most `cap` vertices, otherwise
/// recurse into one degree-parity side and require the other side's
/// vertices to have pairwise distinct neighbourhoods in it. `true` means
/// free; `false` means undetermined.
pub fn check_free_recursive(g: &Graph, cap: usize) -> bool {
    if g.n() <= cap {
        return crate::classifier::brute_force_is_free(g, cap).unwrap_or(false);
    }
    let (vo, ve) = g.degree_parity_split();
    if vo.len() < 4 || ve.len() < 4 {
        return false;
    }
    if check_free_recursive(&g.induced_subgraph(&vo), cap) {
        distinct_neighbourhoods(g, &ve, &vo)
    } else if check_free_recursive(&g.induced_subgraph(&ve), cap) {
        distinct_neighbourhoods(g, &vo, &ve)
    } else {
        false
    }
}

/// True when no two vertices of `side` share their neighbourhood in `other`.
fn distinct_neighbourhoods(g: &Graph, side: &[usize], other: &[usize]) -> bool {
    let member = membership(g.n(), other);
    let mut seen: Vec<Vec<usize>> = side
        .iter()
        .map(|&u| {
            let mut nb: Vec<usize> = g
                .neighbors(u)
                .iter()
                .copied()
                .filter(|&v| member[v])
                .collect();
            nb.sort_unstable();
            nb
        })
        .collect();
    seen.sort();
    seen.windows(2).all(|w| w[0] != w[1])
}

/// For every ordered pair of blocks `(S, T)`, including `S = T`, all members
/// of `S` share the parity of their neighbour count in `T`.
pub fn is_parity_saturated(g: &Graph, p: &VertexPartition) -> bool {
    p.blocks().iter().all(|s| {
        p.blocks().iter().all(|t| {
            let (even, odd) = parity_split(g, s, t);
            even.is_empty() || odd.is_empty()
        })
    })
}
