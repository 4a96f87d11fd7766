//! Hamiltonians of a graph, the quadratic operator `f` and the XZ even star
//! spaces on which it acts diagonally by blocks.

use crate::graph::Graph;

use super::coeff::Coeff;
use super::sum::{PauliSum, PauliTerm};
use super::PauliError;

/// Largest vertex degree for which star spaces are materialised.
const STAR_DEGREE_LIMIT: usize = 24;

/// Mixer `sum_u X_u` and phase separator `sum r_uv Z_u Z_v`.
pub fn hamiltonians_for_graph<C: Coeff>(g: &Graph) -> (PauliSum<C>, PauliSum<C>) {
    let n = g.n();
    let hm = PauliSum::x_set(n, &(0..n).collect::<Vec<_>>());
    (hm, weighted_zz(g, g.edges()))
}

fn weighted_zz<C: Coeff>(g: &Graph, edges: &[(usize, usize)]) -> PauliSum<C> {
    PauliSum::from_terms(
        g.n(),
        edges.iter().map(|&(u, v)| {
            let w = g.edge_weight(u, v).expect("edge of the graph");
            (PauliTerm::from_support(g.n(), &[], &[u, v]), C::from_f64(w))
        }),
    )
}

/// `X_S` for every block and `sum r_e Z Z` for every edge class.
pub fn split_generators<C: Coeff>(
    g: &Graph,
    blocks: &[Vec<usize>],
    edge_classes: &[Vec<(usize, usize)>],
) -> Vec<PauliSum<C>> {
    let mut out: Vec<PauliSum<C>> = blocks.iter().map(|b| PauliSum::x_set(g.n(), b)).collect();
    out.extend(edge_classes.iter().map(|e| weighted_zz(g, e)));
    out
}

/// `f(a) = (1/4) [H_p, [H_p, a]]` for Hermitian `a`, which is
/// `-(1/4) [[h, [[h, a]]]]` in the bracket convention of [`PauliSum::bracket`].
pub fn f_apply<C: Coeff>(hp: &PauliSum<C>, a: &PauliSum<C>) -> PauliSum<C> {
    hp.bracket(&hp.bracket(a)).scale(&C::ratio(-1, 4))
}

/// Even-weight vectors in `F_2^d`, in increasing binary order with bit `i`
/// as coordinate `i`.
pub fn even_parity_vectors(d: usize) -> Vec<Vec<bool>> {
    (0u64..1 << d)
        .filter(|m| m.count_ones() % 2 == 0)
        .map(|m| (0..d).map(|i| m >> i & 1 == 1).collect())
        .collect()
}

/// `S^u_x = X_u prod_i Z_{v_i}^{x_i}` over the sorted neighbours `v_i` of `u`.
pub fn xz_star(g: &Graph, u: usize, x: &[bool]) -> PauliTerm {
    let zs: Vec<usize> = g
        .neighbors(u)
        .iter()
        .zip(x)
        .filter(|(_, &b)| b)
        .map(|(&v, _)| v)
        .collect();
    PauliTerm::from_support(g.n(), &[u], &zs)
}

/// Eigenvalues of `f` on the star space of `u`, one per even-parity vector:
/// `(sum_{i<d} (-1)^{x_i} r_i + r_d)^2`, sorted.
pub fn xz_star_spectrum(g: &Graph, u: usize) -> Result<Vec<f64>, PauliError> {
    let nb = g.neighbors(u);
    let d = nb.len();
    if d > STAR_DEGREE_LIMIT {
        return Err(PauliError::DegreeTooLarge {
            vertex: u,
            degree: d,
            limit: STAR_DEGREE_LIMIT,
        });
    }
    if d == 0 {
        return Err(PauliError::IsolatedVertex(u));
    }
    let r: Vec<f64> = nb.iter().map(|&v| g.edge_weight(u, v).unwrap()).collect();
    let mut out: Vec<f64> = even_parity_vectors(d)
        .iter()
        .map(|x| {
            let s: f64 = (0..d - 1)
                .map(|i| if x[i] { -r[i] } else { r[i] })
                .sum::<f64>()
                + r[d - 1];
            s * s
        })
        .collect();
    out.sort_by(f64::total_cmp);
    Ok(out)
}

/// `sum_{l in keep} prod_{m != l} (f - m) / (l - m)` applied to `v`; the
/// eigenvalues in `all` must be distinct and include `keep`.
pub fn lagrange_projection<C: Coeff>(
    hp: &PauliSum<C>,
    v: &PauliSum<C>,
    keep: &[C],
    all: &[C],
) -> PauliSum<C> {
    let mut total = PauliSum::zero(v.n());
    for lam in keep {
        let mut cur = v.clone();
        for mu in all {
            if mu == lam {
                continue;
            }
            let shifted = f_apply(hp, &cur).sub(&cur.scale(mu));
            cur = shifted.scale(&lam.sub(mu).inv());
        }
        total = total.add(&cur);
    }
    total
}

/// True when `target` lies in `span{ op^k(start) : k >= 0 }`; gives up after
/// `max_len` Krylov vectors.
pub fn krylov_contains<C: Coeff>(
    op: impl Fn(&PauliSum<C>) -> PauliSum<C>,
    start: &PauliSum<C>,
    target: &PauliSum<C>,
    max_len: usize,
) -> bool {
    let mut rows: Vec<(PauliTerm, PauliSum<C>)> = Vec::new();
    let reduce = |rows: &[(PauliTerm, PauliSum<C>)], v: &PauliSum<C>| {
        let mut v = v.clone();
        for (p, r) in rows {
            let c = v.coeff(p);
            if !c.is_zero() {
                v = v.sub(&r.scale(&c));
            }
        }
        v
    };
    let mut cur = start.clone();
    for _ in 0..max_len {
        let red = reduce(&rows, &cur);
        let Some((p, c)) = red.terms().next().map(|(p, c)| (p.clone(), c.clone())) else {
            break;
        };
        rows.push((p, red.scale(&c.inv())));
        cur = op(&cur);
    }
    reduce(&rows, target).is_zero()
}
