use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{Graph, GraphError};

/// Identifier of the sampling stream recorded in reports: ChaCha8 seeded
/// with `seed_from_u64`, one `next_u64` per unordered pair in lexicographic
/// order, mapped to `[0, 1)` by its top 53 bits.
pub const PRNG_ID: &str = "chacha8/seed_from_u64/u53";

fn unit(rng: &mut ChaCha8Rng) -> f64 {
    (rng.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
}

/// Erdős–Rényi `G(n, p)`; the same `(n, p, seed)` always gives the same graph.
pub fn sample_er(n: usize, p: f64, seed: u64) -> Result<Graph, GraphError> {
    if !(0.0..=1.0).contains(&p) {
        return Err(GraphError::BadProbability(p));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if unit(&mut rng) < p {
                edges.push((u, v));
            }
        }
    }
    Graph::new(n, edges)
}

impl Graph {
    /// Same edges with i.i.d. weights drawn uniformly from `(0, 1]`.
    pub fn with_uniform_weights(&self, seed: u64) -> Graph {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let edges: Vec<_> = self
            .edges()
            .iter()
            .map(|&(u, v)| (u, v, 1.0 - unit(&mut rng)))
            .collect();
        Graph::weighted(self.n(), edges).expect("weights in (0, 1] are valid")
    }
}
