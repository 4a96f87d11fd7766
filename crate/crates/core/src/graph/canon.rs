//! Canonical labelling, isomorphism-class enumeration and automorphisms for
//! small graphs.

use std::collections::HashSet;

use super::{Graph, GraphError};

/// Image of each vertex: vertex `u` maps to `perm[u]`.
pub type Permutation = Vec<usize>;

const CANON_LIMIT: usize = 10;
const ENUMERATION_LIMIT: usize = 7;

/// Iterated degree refinement; colours are isomorphism-invariant ranks.
fn refine_colors(g: &Graph) -> Vec<usize> {
    let n = g.n();
    let mut color: Vec<usize> = (0..n).map(|u| g.degree(u)).collect();
    let mut classes = count_distinct(&color);
    loop {
        let sigs: Vec<(usize, Vec<usize>)> = (0..n)
            .map(|u| {
                let mut nb: Vec<usize> = g.neighbors(u).iter().map(|&v| color[v]).collect();
                nb.sort_unstable();
                (color[u], nb)
            })
            .collect();
        let mut sorted = sigs.clone();
        sorted.sort();
        sorted.dedup();
        color = sigs
            .iter()
            .map(|s| sorted.binary_search(s).expect("present"))
            .collect();
        let next = sorted.len();
        if next == classes {
            return color;
        }
        classes = next;
    }
}

fn count_distinct(xs: &[usize]) -> usize {
    let mut v = xs.to_vec();
    v.sort_unstable();
    v.dedup();
    v.len()
}

/// Upper-triangle adjacency key under `pos` (vertex to position); the pair
/// `(0,1)` is the most significant bit.
fn adjacency_key(g: &Graph, pos: &[usize]) -> u64 {
    let n = g.n();
    let mut key = 0u64;
    for &(u, v) in g.edges() {
        let (i, j) = (pos[u].min(pos[v]), pos[u].max(pos[v]));
        let idx = i * n - i * (i + 1) / 2 + (j - i - 1);
        key |= 1u64 << (63 - idx);
    }
    key
}

fn cells_by_color(color: &[usize]) -> Vec<Vec<usize>> {
    let k = color.iter().max().map_or(0, |m| m + 1);
    let mut cells = vec![Vec::new(); k];
    for (u, &c) in color.iter().enumerate() {
        cells[c].push(u);
    }
    cells
}

/// Minimum adjacency key over all labellings that respect the refined
/// colour order, with one labelling achieving it.
fn canonical_labelling(g: &Graph) -> (u64, Vec<usize>) {
    let cells = cells_by_color(&refine_colors(g));
    let mut pos = vec![0usize; g.n()];
    let mut best = (u64::MAX, Vec::new());
    let mut order: Vec<Vec<usize>> = cells.clone();
    search_cells(g, &cells, &mut order, 0, &mut pos, &mut best);
    best
}

fn search_cells(
    g: &Graph,
    cells: &[Vec<usize>],
    order: &mut Vec<Vec<usize>>,
    ci: usize,
    pos: &mut Vec<usize>,
    best: &mut (u64, Vec<usize>),
) {
    if ci == cells.len() {
        let mut p = 0;
        for cell in order.iter() {
            for &u in cell {
                pos[u] = p;
                p += 1;
            }
        }
        let key = adjacency_key(g, pos);
        if key < best.0 {
            *best = (key, pos.clone());
        }
        return;
    }
    let mut cell = cells[ci].clone();
    permute_all(&mut cell, 0, &mut |perm| {
        order[ci] = perm.to_vec();
        search_cells(g, cells, order, ci + 1, pos, best);
    });
}

fn permute_all(xs: &mut Vec<usize>, k: usize, f: &mut dyn FnMut(&[usize])) {
    if k == xs.len() {
        f(xs);
        return;
    }
    for i in k..xs.len() {
        xs.swap(k, i);
        permute_all(xs, k + 1, f);
        xs.swap(k, i);
    }
}

fn check_limit(g: &Graph, what: &'static str, limit: usize) -> Result<(), GraphError> {
    if g.n() > limit {
        Err(GraphError::TooLarge {
            what,
            limit,
            n: g.n(),
        })
    } else {
        Ok(())
    }
}

/// Canonical representative of the isomorphism class (weights dropped).
pub fn canonical_form(g: &Graph) -> Result<Graph, GraphError> {
    check_limit(g, "canonical form", CANON_LIMIT)?;
    if g.n() == 0 {
        return Ok(g.unweighted());
    }
    let (_, pos) = canonical_labelling(g);
    Ok(g.unweighted().permuted(&pos))
}

/// One canonical representative per isomorphism class of graphs on `n`
/// vertices, in increasing canonical-key order.
pub fn enumerate_graphs(n: usize) -> Result<Vec<Graph>, GraphError> {
    if n > ENUMERATION_LIMIT {
        return Err(GraphError::TooLarge {
            what: "graph enumeration",
            limit: ENUMERATION_LIMIT,
            n,
        });
    }
    if n == 0 {
        return Ok(vec![Graph::new(0, []).unwrap()]);
    }
    let mut reps = vec![Graph::new(1, []).unwrap()];
    for k in 2..=n {
        let mut seen = HashSet::new();
        let mut next = Vec::new();
        for base in &reps {
            for mask in 0u32..(1 << (k - 1)) {
                let mut edges = base.edges().to_vec();
                edges.extend(
                    (0..k - 1)
                        .filter(|&i| mask >> i & 1 == 1)
                        .map(|i| (i, k - 1)),
                );
                let h = Graph::new(k, edges).expect("valid extension");
                let (key, pos) = canonical_labelling(&h);
                if seen.insert(key) {
                    next.push((key, h.permuted(&pos)));
                }
            }
        }
        next.sort_by_key(|e| e.0);
        reps = next.into_iter().map(|e| e.1).collect();
    }
    Ok(reps)
}

/// Connected graphs on `n` vertices up to isomorphism.
pub fn enumerate_connected(n: usize) -> Result<Vec<Graph>, GraphError> {
    Ok(enumerate_graphs(n)?
        .into_iter()
        .filter(Graph::is_connected)
        .collect())
}

/// All automorphisms, sorted lexicographically; the identity comes first.
pub fn automorphism_group(g: &Graph) -> Result<Vec<Permutation>, GraphError> {
    check_limit(g, "automorphism search", CANON_LIMIT)?;
    let mut out = Vec::new();
    search_automorphisms(g, &mut |p| {
        out.push(p.to_vec());
        true
    });
    out.sort();
    Ok(out)
}

/// True when the identity is the only automorphism.
pub fn has_trivial_automorphism_group(g: &Graph) -> Result<bool, GraphError> {
    check_limit(g, "automorphism search", CANON_LIMIT)?;
    let mut nontrivial = false;
    search_automorphisms(g, &mut |p| {
        if p.iter().enumerate().any(|(i, &j)| i != j) {
            nontrivial = true;
            return false;
        }
        true
    });
    Ok(!nontrivial)
}

/// Backtracking over colour-preserving maps; `visit` returns false to stop.
fn search_automorphisms(g: &Graph, visit: &mut dyn FnMut(&[usize]) -> bool) {
    let n = g.n();
    let color = refine_colors(g);
    let mut image = vec![usize::MAX; n];
    let mut used = vec![false; n];
    extend_automorphism(g, &color, 0, &mut image, &mut used, visit);
}

fn extend_automorphism(
    g: &Graph,
    color: &[usize],
    u: usize,
    image: &mut Vec<usize>,
    used: &mut Vec<bool>,
    visit: &mut dyn FnMut(&[usize]) -> bool,
) -> bool {
    let n = g.n();
    if u == n {
        return visit(image);
    }
    for t in 0..n {
        if used[t] || color[t] != color[u] {
            continue;
        }
        let consistent = (0..u).all(|w| g.has_edge(u, w) == g.has_edge(t, image[w]));
        if !consistent {
            continue;
        }
        image[u] = t;
        used[t] = true;
        let go_on = extend_automorphism(g, color, u + 1, image, used, visit);
        used[t] = false;
        image[u] = usize::MAX;
        if !go_on {
            return false;
        }
    }
    true
}

/// graph6 encoding for graphs on at most 62 vertices.
pub fn to_graph6(g: &Graph) -> Result<String, GraphError> {
    let n = g.n();
    if n > 62 {
        return Err(GraphError::TooLarge {
            what: "graph6",
            limit: 62,
            n,
        });
    }
    let mut bits = Vec::with_capacity(n * n.saturating_sub(1) / 2);
    for j in 1..n {
        for i in 0..j {
            bits.push(g.has_edge(i, j));
        }
    }
    let mut out = String::new();
    out.push((n as u8 + 63) as char);
    for chunk in bits.chunks(6) {
        let mut v = 0u8;
        for (k, &b) in chunk.iter().enumerate() {
            if b {
                v |= 1 << (5 - k);
            }
        }
        out.push((v + 63) as char);
    }
    Ok(out)
}

pub fn from_graph6(s: &str) -> Result<Graph, GraphError> {
    let bytes = s.trim().as_bytes();
    let bad = |msg: &str| GraphError::Graph6(format!("{s:?}: {msg}"));
    let (&first, rest) = bytes.split_first().ok_or_else(|| bad("empty"))?;
    if !(63..=125).contains(&first) {
        return Err(bad("unsupported size byte"));
    }
    let n = (first - 63) as usize;
    let total = n * n.saturating_sub(1) / 2;
    if rest.len() != total.div_ceil(6) {
        return Err(bad("wrong length"));
    }
    let mut edges = Vec::new();
    let mut idx = 0;
    for j in 1..n {
        for i in 0..j {
            let byte = rest[idx / 6];
            if !(63..=126).contains(&byte) {
                return Err(bad("byte out of range"));
            }
            if (byte - 63) >> (5 - idx % 6) & 1 == 1 {
                edges.push((i, j));
            }
            idx += 1;
        }
    }
    Graph::new(n, edges)
}
