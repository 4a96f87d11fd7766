//! Brute-force closures of the QAOA and multi-angle generators.

use crate::graph::{has_trivial_automorphism_group, Graph};
use crate::pauli::{
    hamiltonians_for_graph, split_generators, Coeff, LieBasis, Mod61, PauliError, PauliSum,
    PauliTerm, Rational, ENGINE_QUBIT_LIMIT,
};
use crate::splitter::{bfs_splitting, is_splittable, split_edges};

use super::{classify_multiangle, ClassifierError};

/// Default qubit cap for brute-force stages.
pub const DEFAULT_QUBIT_CAP: usize = 8;

/// Rows processed between checks for single-term members of the span.
const ADOPT_INTERVAL: usize = 16;

fn check_size(g: &Graph, cap: usize) -> Result<(), ClassifierError> {
    let limit = cap.min(ENGINE_QUBIT_LIMIT);
    if g.n() > limit {
        return Err(PauliError::TooManyQubits { n: g.n(), limit }.into());
    }
    Ok(())
}

/// Generators whose closure is the QAOA algebra: the split generators
/// `X_S`, `ZZ_{E'}` for unweighted graphs, `H_m` and `H_p` otherwise.
pub fn qaoa_generators<C: Coeff>(g: &Graph) -> Vec<PauliSum<C>> {
    if g.is_weighted() {
        let (hm, hp) = hamiltonians_for_graph(g);
        return vec![hm, hp];
    }
    let p = bfs_splitting(g);
    let q = split_edges(g, &p);
    split_generators(g, p.blocks(), q.blocks())
}

/// Runs a closure to completion, promoting every single `X_u` or `Z_u Z_v`
/// that enters the span to a generator. Those elements already lie in the
/// algebra, so the closure is unchanged; bracketing with them directly just
/// reaches it in far fewer steps.
fn accelerated_closure<C: Coeff>(
    g: &Graph,
    gens: &[PauliSum<C>],
) -> Result<LieBasis<C>, ClassifierError> {
    let n = g.n();
    let mut basis = LieBasis::new(n, gens)?;
    let mut pending: Vec<PauliSum<C>> = (0..n)
        .map(|u| PauliSum::x_set(n, &[u]))
        .chain(g.edges().iter().map(|&e| PauliSum::zz_set(n, &[e])))
        .collect();
    let mut since = 0;
    while basis.step() {
        since += 1;
        if since < ADOPT_INTERVAL || pending.is_empty() {
            continue;
        }
        since = 0;
        let mut keep = Vec::with_capacity(pending.len());
        for p in pending {
            if basis.contains(&p) {
                basis.add_generator(&p);
            } else {
                keep.push(p);
            }
        }
        pending = keep;
    }
    Ok(basis)
}

/// Exact closure basis of the QAOA algebra over the rationals.
pub fn qaoa_closure(g: &Graph, cap: usize) -> Result<LieBasis<Rational>, ClassifierError> {
    check_size(g, cap)?;
    accelerated_closure(g, &qaoa_generators::<Rational>(g))
}

/// Exact dimension of the QAOA algebra. The closure is first computed
/// modulo a large prime, whose rank never exceeds the rational one; if it
/// falls short of the multi-angle dimension the rational closure decides.
pub fn qaoa_closure_dimension(g: &Graph, cap: usize) -> Result<usize, ClassifierError> {
    check_size(g, cap)?;
    let target = classify_multiangle(&g.unweighted())?
        .1
        .to_usize()
        .expect("small graph");
    let fast = accelerated_closure(g, &qaoa_generators::<Mod61>(g))?.dimension();
    if fast == target {
        return Ok(fast);
    }
    Ok(accelerated_closure(g, &qaoa_generators::<Rational>(g))?.dimension())
}

/// Closure of the individual terms `X_u` and `Z_u Z_v`; every row is a
/// single Pauli string.
pub fn multiangle_closure<C: Coeff>(g: &Graph, cap: usize) -> Result<LieBasis<C>, ClassifierError> {
    check_size(g, cap)?;
    let n = g.n();
    let gens: Vec<PauliSum<C>> =
        (0..n)
            .map(|u| PauliSum::single(n, PauliTerm::from_support(n, &[u], &[]), C::one()))
            .chain(g.edges().iter().map(|&(u, v)| {
                PauliSum::single(n, PauliTerm::from_support(n, &[], &[u, v]), C::one())
            }))
            .collect();
    let mut basis = LieBasis::new(n, &gens)?;
    while basis.step() {}
    Ok(basis)
}

/// Brute-force freeness on at most `cap` vertices. Splittable graphs are free
/// and unweighted graphs with a non-trivial automorphism are not; otherwise
/// the closure dimension is compared with the multi-angle dimension.
pub fn brute_force_is_free(g: &Graph, cap: usize) -> Result<bool, ClassifierError> {
    check_size(g, cap)?;
    if !g.is_weighted() {
        if is_splittable(g).0 {
            return Ok(true);
        }
        if !has_trivial_automorphism_group(g)? {
            return Ok(false);
        }
    }
    let target = classify_multiangle(&g.unweighted())?
        .1
        .to_usize()
        .expect("small graph");
    Ok(qaoa_closure_dimension(g, cap)? == target)
}
