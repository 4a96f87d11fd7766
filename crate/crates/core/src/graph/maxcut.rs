use serde::{Deserialize, Serialize};

use super::{Graph, GraphError};

/// Largest graph accepted by [`brute_maxcut`].
pub const BRUTE_MAXCUT_LIMIT: usize = 28;

/// Side of each vertex in a cut.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CutAssignment(pub Vec<bool>);

impl CutAssignment {
    pub fn value(&self, g: &Graph) -> f64 {
        g.edges()
            .iter()
            .enumerate()
            .filter(|(_, &(u, v))| self.0[u] != self.0[v])
            .map(|(i, _)| g.weight(i))
            .sum()
    }
}

/// Exhaustive MaxCut by Gray-code enumeration with vertex 0 pinned.
pub fn brute_maxcut(g: &Graph) -> Result<(f64, CutAssignment), GraphError> {
    let n = g.n();
    if n > BRUTE_MAXCUT_LIMIT {
        return Err(GraphError::TooLarge {
            what: "brute-force MaxCut",
            limit: BRUTE_MAXCUT_LIMIT,
            n,
        });
    }
    let mut side = vec![false; n];
    if n <= 1 {
        return Ok((0.0, CutAssignment(side)));
    }
    let mut best = 0.0;
    let mut best_code = 0u64;
    let mut current = 0.0;
    for step in 1u64..(1u64 << (n - 1)) {
        let flip = step.trailing_zeros() as usize + 1;
        let before = side[flip];
        let mut delta = 0.0;
        for &v in g.neighbors(flip) {
            let w = g.edge_weight(flip, v).unwrap();
            delta += if side[v] == before { w } else { -w };
        }
        side[flip] = !before;
        current += delta;
        if current > best {
            best = current;
            best_code = step ^ (step >> 1);
        }
    }
    let sides = (0..n)
        .map(|u| u > 0 && best_code >> (u - 1) & 1 == 1)
        .collect();
    Ok((best, CutAssignment(sides)))
}

struct Chain {
    ends: (usize, usize),
    inner: Vec<usize>,
    weights: Vec<f64>,
}

impl Chain {
    /// Best value of the chain and its interior sides for fixed end sides.
    fn best(&self, a: bool, b: bool) -> (f64, Vec<bool>) {
        // dp[s] = best value of the prefix ending with the current vertex on side s
        let k = self.inner.len();
        let mut dp = [f64::NEG_INFINITY; 2];
        dp[a as usize] = 0.0;
        let mut back: Vec<[usize; 2]> = Vec::with_capacity(k + 1);
        for step in 0..=k {
            let w = self.weights[step];
            let mut next = [f64::NEG_INFINITY; 2];
            let mut from = [0usize; 2];
            for (s, &prev) in dp.iter().enumerate() {
                for (t, slot) in next.iter_mut().enumerate() {
                    if step == k && t != b as usize {
                        continue;
                    }
                    let cand = prev + if s != t { w } else { 0.0 };
                    if cand > *slot {
                        *slot = cand;
                        from[t] = s;
                    }
                }
            }
            back.push(from);
            dp = next;
        }
        let value = dp[b as usize];
        let mut sides = vec![false; k];
        let mut cur = b as usize;
        for step in (0..=k).rev() {
            let prev = back[step][cur];
            if step > 0 {
                sides[step - 1] = prev == 1;
            }
            cur = prev;
        }
        (value, sides)
    }
}

/// Exact MaxCut that enumerates only vertices of degree other than 2 and
/// optimises each chain of degree-2 vertices by dynamic programming.
///
/// Suited to subdivisions, where almost every vertex lies on a chain.
pub fn exact_maxcut(g: &Graph) -> Result<(f64, CutAssignment), GraphError> {
    let n = g.n();
    let mut is_core: Vec<bool> = (0..n).map(|u| g.degree(u) != 2).collect();
    for comp in g.components() {
        if comp.iter().all(|&u| !is_core[u]) {
            is_core[comp[0]] = true;
        }
    }
    let core: Vec<usize> = (0..n).filter(|&u| is_core[u]).collect();
    if core.len() > BRUTE_MAXCUT_LIMIT {
        return Err(GraphError::TooLarge {
            what: "exact MaxCut core",
            limit: BRUTE_MAXCUT_LIMIT,
            n: core.len(),
        });
    }
    let mut core_index = vec![usize::MAX; n];
    for (i, &u) in core.iter().enumerate() {
        core_index[u] = i;
    }

    let mut chains = Vec::new();
    let mut seen_start = std::collections::HashSet::new();
    for &c in &core {
        for &first in g.neighbors(c) {
            if !seen_start.insert((c, first)) {
                continue;
            }
            let mut inner = Vec::new();
            let mut weights = vec![g.edge_weight(c, first).unwrap()];
            let (mut prev, mut cur) = (c, first);
            while !is_core[cur] {
                inner.push(cur);
                let next = *g.neighbors(cur).iter().find(|&&x| x != prev).unwrap();
                weights.push(g.edge_weight(cur, next).unwrap());
                prev = cur;
                cur = next;
            }
            seen_start.insert((cur, prev));
            chains.push(Chain {
                ends: (c, cur),
                inner,
                weights,
            });
        }
    }

    let tables: Vec<[[f64; 2]; 2]> = chains
        .iter()
        .map(|ch| {
            let mut t = [[0.0; 2]; 2];
            for (a, row) in t.iter_mut().enumerate() {
                for (b, cell) in row.iter_mut().enumerate() {
                    *cell = ch.best(a == 1, b == 1).0;
                }
            }
            t
        })
        .collect();

    let k = core.len();
    let mut best = (f64::NEG_INFINITY, 0u64);
    let total = if k == 0 { 1 } else { 1u64 << (k - 1) };
    for code in 0..total {
        let side = |u: usize| core_index[u] > 0 && code >> (core_index[u] - 1) & 1 == 1;
        let mut value = 0.0;
        for (ch, t) in chains.iter().zip(&tables) {
            let (a, b) = (side(ch.ends.0), side(ch.ends.1));
            value += t[a as usize][b as usize];
        }
        if value > best.0 {
            best = (value, code);
        }
    }
    let code = best.1;
    let mut sides = vec![false; n];
    for &u in &core {
        sides[u] = core_index[u] > 0 && code >> (core_index[u] - 1) & 1 == 1;
    }
    for ch in &chains {
        let (_, inner) = ch.best(sides[ch.ends.0], sides[ch.ends.1]);
        for (&u, s) in ch.inner.iter().zip(inner) {
            sides[u] = s;
        }
    }
    Ok((best.0.max(0.0), CutAssignment(sides)))
}
