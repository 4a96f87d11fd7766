//! Derivations of every `X_u` and `Z_u Z_v` for asymmetric subdivisions of
//! odd graphs, with a replaying verifier.

use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::graph::Graph;
use crate::pauli::{f_apply, hamiltonians_for_graph, krylov_contains, Coeff, PauliSum, Rational};

/// An element of `i g`: a sum of `X_u` over a vertex set or of `Z_u Z_v`
/// over an edge set. Members are kept sorted.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Element {
    X(Vec<usize>),
    ZZ(Vec<(usize, usize)>),
}

impl Element {
    fn x(mut set: Vec<usize>) -> Self {
        set.sort_unstable();
        set.dedup();
        Element::X(set)
    }

    fn zz(mut edges: Vec<(usize, usize)>) -> Self {
        for e in edges.iter_mut() {
            if e.0 > e.1 {
                *e = (e.1, e.0);
            }
        }
        edges.sort_unstable();
        edges.dedup();
        Element::ZZ(edges)
    }

    fn x_members(&self) -> &[usize] {
        match self {
            Element::X(s) => s,
            Element::ZZ(_) => &[],
        }
    }

    fn to_sum(&self, n: usize) -> PauliSum<Rational> {
        match self {
            Element::X(s) => PauliSum::x_set(n, s),
            Element::ZZ(e) => PauliSum::zz_set(n, e),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Rule {
    Axiom,
    InternalSplit,
    ExternalSplit,
    EdgeSplit,
    PathPeel,
    CommutatorWalk,
}

impl Rule {
    fn name(self) -> &'static str {
        match self {
            Rule::Axiom => "Axiom",
            Rule::InternalSplit => "InternalSplit",
            Rule::ExternalSplit => "ExternalSplit",
            Rule::EdgeSplit => "EdgeSplit",
            Rule::PathPeel => "PathPeel",
            Rule::CommutatorWalk => "CommutatorWalk",
        }
    }
}

impl FromStr for Rule {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        Ok(match s {
            "Axiom" => Rule::Axiom,
            "InternalSplit" => Rule::InternalSplit,
            "ExternalSplit" => Rule::ExternalSplit,
            "EdgeSplit" => Rule::EdgeSplit,
            "PathPeel" => Rule::PathPeel,
            "CommutatorWalk" => Rule::CommutatorWalk,
            other => return Err(format!("unknown rule {other:?}")),
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CertificateEntry {
    pub element: Element,
    pub rule: Rule,
    pub premises: Vec<usize>,
}

/// Acyclic derivation; entry 0 is the mixer axiom `X_V`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Certificate {
    entries: Vec<CertificateEntry>,
}

impl Certificate {
    pub fn entries(&self) -> &[CertificateEntry] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// True when every `X_u` and every single-edge `Z_u Z_v` of `g` is certified.
    pub fn is_complete(&self, g: &Graph) -> bool {
        let have: BTreeSet<&Element> = self.entries.iter().map(|e| &e.element).collect();
        (0..g.n()).all(|u| have.contains(&Element::X(vec![u])))
            && g.edges()
                .iter()
                .all(|&e| have.contains(&Element::ZZ(vec![e])))
    }

    /// Certified single vertices and single edges.
    pub fn singletons(&self) -> (Vec<usize>, Vec<(usize, usize)>) {
        let mut xs = Vec::new();
        let mut zs = Vec::new();
        for e in &self.entries {
            match &e.element {
                Element::X(s) if s.len() == 1 => xs.push(s[0]),
                Element::ZZ(s) if s.len() == 1 => zs.push(s[0]),
                _ => {}
            }
        }
        xs.sort_unstable();
        zs.sort_unstable();
        (xs, zs)
    }
}

impl fmt::Display for Certificate {
    /// `<index> <rule> <premises...> X <vertices>` or `... ZZ <u-v ...>`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, e) in self.entries.iter().enumerate() {
            write!(f, "{i} {}", e.rule.name())?;
            for p in &e.premises {
                write!(f, " {p}")?;
            }
            match &e.element {
                Element::X(s) => {
                    write!(f, " X")?;
                    for u in s {
                        write!(f, " {u}")?;
                    }
                }
                Element::ZZ(s) => {
                    write!(f, " ZZ")?;
                    for (u, v) in s {
                        write!(f, " {u}-{v}")?;
                    }
                }
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

impl FromStr for Certificate {
    type Err = CertificateError;

    fn from_str(text: &str) -> Result<Self, CertificateError> {
        let mut entries = Vec::new();
        for (ln, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() {
                continue;
            }
            let bad = |reason: String| CertificateError::Parse {
                line: ln + 1,
                reason,
            };
            let toks: Vec<&str> = line.split_whitespace().collect();
            if toks.len() < 3 {
                return Err(bad("too few fields".into()));
            }
            let idx: usize = toks[0].parse().map_err(|_| bad("bad index".into()))?;
            if idx != entries.len() {
                return Err(bad(format!("index {idx} out of sequence")));
            }
            let rule: Rule = toks[1].parse().map_err(bad)?;
            let kind = toks
                .iter()
                .position(|&t| t == "X" || t == "ZZ")
                .ok_or_else(|| bad("missing X or ZZ".into()))?;
            let premises = toks[2..kind]
                .iter()
                .map(|t| {
                    t.parse::<usize>()
                        .map_err(|_| bad(format!("bad premise {t:?}")))
                })
                .collect::<Result<Vec<_>, _>>()?;
            let element = if toks[kind] == "X" {
                let set = toks[kind + 1..]
                    .iter()
                    .map(|t| {
                        t.parse::<usize>()
                            .map_err(|_| bad(format!("bad vertex {t:?}")))
                    })
                    .collect::<Result<Vec<_>, _>>()?;
                Element::x(set)
            } else {
                let edges = toks[kind + 1..]
                    .iter()
                    .map(|t| {
                        let (a, b) = t
                            .split_once('-')
                            .ok_or_else(|| bad(format!("bad edge {t:?}")))?;
                        let a = a
                            .parse::<usize>()
                            .map_err(|_| bad(format!("bad edge {t:?}")))?;
                        let b = b
                            .parse::<usize>()
                            .map_err(|_| bad(format!("bad edge {t:?}")))?;
                        Ok((a, b))
                    })
                    .collect::<Result<Vec<_>, CertificateError>>()?;
                Element::zz(edges)
            };
            entries.push(CertificateEntry {
                element,
                rule,
                premises,
            });
        }
        Ok(Certificate { entries })
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CertificateError {
    #[error("weighted graphs cannot be certified")]
    Weighted,
    #[error("graph is not connected")]
    NotConnected,
    #[error("{0} odd-degree vertices; the base graph needs at least 3")]
    TooFewBaseVertices(usize),
    #[error("even-degree vertex {vertex} has degree {degree}, inserted paths need degree 2")]
    EvenDegree { vertex: usize, degree: usize },
    #[error("even-degree vertices contain a cycle")]
    EvenCycle,
    #[error("an inserted path starts and ends at base vertex {0}")]
    ClosedPath(usize),
    #[error("base vertices {0} and {1} are joined by more than one path")]
    ParallelPaths(usize, usize),
    #[error("{0} base edges are left unsubdivided, at most one is allowed")]
    UnsubdividedEdges(usize),
    #[error("two inserted paths have the same size {0}")]
    DuplicatePathSize(usize),
    #[error("entry {index}: {reason}")]
    InvalidStep { index: usize, reason: String },
    #[error("certificate line {line}: {reason}")]
    Parse { line: usize, reason: String },
}

/// A base edge and the inserted vertices from `ends.0` to `ends.1`.
struct Chain {
    ends: (usize, usize),
    inner: Vec<usize>,
}

fn detect(g: &Graph) -> Result<Vec<Chain>, CertificateError> {
    if g.is_weighted() {
        return Err(CertificateError::Weighted);
    }
    if !g.is_connected() || g.n() == 0 {
        return Err(CertificateError::NotConnected);
    }
    let n = g.n();
    let base: Vec<bool> = (0..n).map(|u| g.degree(u) % 2 == 1).collect();
    let nbase = base.iter().filter(|&&b| b).count();
    if nbase < 3 {
        return Err(CertificateError::TooFewBaseVertices(nbase));
    }
    if let Some(u) = (0..n).find(|&u| !base[u] && g.degree(u) != 2) {
        return Err(CertificateError::EvenDegree {
            vertex: u,
            degree: g.degree(u),
        });
    }
    let mut chains = Vec::new();
    let mut seen = vec![false; n];
    for u in (0..n).filter(|&u| base[u]) {
        for &w in g.neighbors(u) {
            if base[w] {
                if u < w {
                    chains.push(Chain {
                        ends: (u, w),
                        inner: Vec::new(),
                    });
                }
                continue;
            }
            if seen[w] {
                continue;
            }
            let (mut prev, mut cur) = (u, w);
            let mut inner = Vec::new();
            while !base[cur] {
                seen[cur] = true;
                inner.push(cur);
                let next = g
                    .neighbors(cur)
                    .iter()
                    .copied()
                    .find(|&x| x != prev)
                    .expect("degree 2");
                prev = cur;
                cur = next;
            }
            if cur == u {
                return Err(CertificateError::ClosedPath(u));
            }
            chains.push(Chain {
                ends: (u, cur),
                inner,
            });
        }
    }
    if (0..n).any(|u| !base[u] && !seen[u]) {
        return Err(CertificateError::EvenCycle);
    }
    let mut pairs: Vec<(usize, usize)> = chains
        .iter()
        .map(|c| (c.ends.0.min(c.ends.1), c.ends.0.max(c.ends.1)))
        .collect();
    pairs.sort_unstable();
    if let Some(w) = pairs.windows(2).find(|w| w[0] == w[1]) {
        return Err(CertificateError::ParallelPaths(w[0].0, w[0].1));
    }
    let direct = chains.iter().filter(|c| c.inner.is_empty()).count();
    if direct > 1 {
        return Err(CertificateError::UnsubdividedEdges(direct));
    }
    let mut sizes: Vec<usize> = chains
        .iter()
        .map(|c| c.inner.len())
        .filter(|&s| s > 0)
        .collect();
    sizes.sort_unstable();
    if let Some(w) = sizes.windows(2).find(|w| w[0] == w[1]) {
        return Err(CertificateError::DuplicatePathSize(w[0]));
    }
    Ok(chains)
}

struct Builder {
    entries: Vec<CertificateEntry>,
    index: HashMap<Element, usize>,
}

/// Result of peeling a family of paths: the entry for `X_{V_0}` and, per
/// path, the entry for `X_{V_i}` when `V_i` is non-empty.
struct Peeled {
    v0: Option<usize>,
    parts: Vec<Option<usize>>,
}

impl Builder {
    fn add(&mut self, element: Element, rule: Rule, premises: Vec<usize>) -> usize {
        if let Some(&i) = self.index.get(&element) {
            return i;
        }
        let i = self.entries.len();
        self.index.insert(element.clone(), i);
        self.entries.push(CertificateEntry {
            element,
            rule,
            premises,
        });
        i
    }

    fn set_of(&self, i: usize) -> &[usize] {
        match &self.entries[i].element {
            Element::X(s) => s,
            Element::ZZ(_) => unreachable!("X entry expected"),
        }
    }

    /// `union` certifies the sum of X over all vertices of `paths`; the paths
    /// are trivial (one vertex) or of pairwise distinct sizes.
    fn peel(&mut self, paths: &[Vec<usize>], union: Option<usize>) -> Peeled {
        let mut nontrivial: Vec<usize> =
            (0..paths.len()).filter(|&i| paths[i].len() >= 2).collect();
        if nontrivial.is_empty() {
            return Peeled {
                v0: union,
                parts: vec![None; paths.len()],
            };
        }
        let union = union.expect("non-empty paths");
        let ends: Vec<usize> = nontrivial
            .iter()
            .flat_map(|&i| [paths[i][0], *paths[i].last().unwrap()])
            .collect();
        let ends_idx = self.add(Element::x(ends.clone()), Rule::InternalSplit, vec![union]);
        let trimmed: Vec<Vec<usize>> = paths
            .iter()
            .map(|p| {
                if p.len() >= 2 {
                    p[1..p.len() - 1].to_vec()
                } else {
                    p.clone()
                }
            })
            .collect();
        let inner: Vec<usize> = trimmed.iter().flatten().copied().collect();
        let inner_idx = (!inner.is_empty())
            .then(|| self.add(Element::x(inner), Rule::InternalSplit, vec![union]));
        let sub = self.peel(&trimmed, inner_idx);

        nontrivial.sort_by_key(|&i| std::cmp::Reverse(paths[i].len()));
        let mut pair: HashMap<usize, usize> = HashMap::new();
        let mut parts = vec![None; paths.len()];
        for (rank, &i) in nontrivial.iter().enumerate() {
            let p = &paths[i];
            let endpoints = vec![p[0], *p.last().unwrap()];
            let pi = if p.len() >= 4 {
                let t = sub.parts[i].expect("long paths keep inner vertices");
                self.add(
                    Element::x(endpoints.clone()),
                    Rule::ExternalSplit,
                    vec![ends_idx, t],
                )
            } else {
                let larger: Vec<usize> = nontrivial[..rank].iter().map(|j| pair[j]).collect();
                let rest_idx = if larger.is_empty() {
                    ends_idx
                } else {
                    let mut rest: BTreeSet<usize> = ends.iter().copied().collect();
                    for &j in &larger {
                        for u in self.set_of(j).to_vec() {
                            rest.remove(&u);
                        }
                    }
                    let mut premises = vec![ends_idx];
                    premises.extend(larger);
                    self.add(
                        Element::x(rest.into_iter().collect()),
                        Rule::PathPeel,
                        premises,
                    )
                };
                let mut sorted_ends = endpoints.clone();
                sorted_ends.sort_unstable();
                if self.set_of(rest_idx) == sorted_ends.as_slice() {
                    rest_idx
                } else {
                    let v0 = sub.v0.expect("a 3-vertex path has a middle");
                    self.add(
                        Element::x(endpoints.clone()),
                        Rule::ExternalSplit,
                        vec![rest_idx, v0],
                    )
                }
            };
            pair.insert(i, pi);
            parts[i] = Some(match sub.parts[i] {
                Some(t) => {
                    let mut set = self.set_of(t).to_vec();
                    set.extend(endpoints);
                    self.add(Element::x(set), Rule::PathPeel, vec![t, pi])
                }
                None => pi,
            });
        }
        Peeled { v0: sub.v0, parts }
    }
}

/// Derives every `X_u` and `Z_u Z_v` of an asymmetric subdivision of a
/// connected odd graph from the two Hamiltonians.
pub fn certify_asym_subdivision(g: &Graph) -> Result<Certificate, CertificateError> {
    let chains = detect(g)?;
    let n = g.n();
    let mut b = Builder {
        entries: Vec::new(),
        index: HashMap::new(),
    };
    let all = b.add(Element::x((0..n).collect()), Rule::Axiom, vec![]);
    b.add(Element::zz(g.edges().to_vec()), Rule::Axiom, vec![]);
    let (vo, ve) = g.degree_parity_split();
    let vo_idx = b.add(Element::x(vo), Rule::InternalSplit, vec![all]);

    let paths: Vec<usize> = (0..chains.len())
        .filter(|&c| !chains[c].inner.is_empty())
        .collect();
    let peeled = if paths.is_empty() {
        None
    } else {
        let ve_idx = b.add(Element::x(ve), Rule::InternalSplit, vec![all]);
        let lists: Vec<Vec<usize>> = paths.iter().map(|&c| chains[c].inner.clone()).collect();
        Some(b.peel(&lists, Some(ve_idx)))
    };
    // X over the inserted-path part attached to each chain.
    let mut part: Vec<Option<usize>> = vec![None; chains.len()];
    if let Some(pe) = &peeled {
        for (k, &c) in paths.iter().enumerate() {
            part[c] = if chains[c].inner.len() == 1 {
                pe.v0
            } else {
                pe.parts[k]
            };
        }
    }

    let mut pair = vec![0usize; chains.len()];
    for (c, ch) in chains.iter().enumerate() {
        let ends = vec![ch.ends.0, ch.ends.1];
        pair[c] = match part[c] {
            None => b.add(Element::x(ends), Rule::InternalSplit, vec![vo_idx]),
            Some(t) => b.add(Element::x(ends), Rule::ExternalSplit, vec![vo_idx, t]),
        };
    }

    let mut x_of: HashMap<usize, usize> = HashMap::new();
    for (c, ch) in chains.iter().enumerate() {
        let (u, v) = ch.ends;
        let centre = if g.degree(u) >= 3 { u } else { v };
        let other = if centre == u { v } else { u };
        let via = chains
            .iter()
            .enumerate()
            .find(|&(c2, ch2)| {
                c2 != c && part[c2].is_some() && (ch2.ends.0 == centre || ch2.ends.1 == centre)
            })
            .map(|(c2, _)| part[c2].unwrap())
            .expect("a base vertex of degree at least 3 has a subdivided edge");
        let xc = b.add(
            Element::X(vec![centre]),
            Rule::ExternalSplit,
            vec![pair[c], via],
        );
        let xo = b.add(
            Element::X(vec![other]),
            Rule::ExternalSplit,
            vec![pair[c], via],
        );
        x_of.insert(centre, xc);
        x_of.insert(other, xo);
    }

    for (c, ch) in chains.iter().enumerate() {
        let (u, v) = ch.ends;
        if ch.inner.is_empty() {
            b.add(
                Element::zz(vec![(u, v)]),
                Rule::EdgeSplit,
                vec![x_of[&u], x_of[&v]],
            );
            continue;
        }
        let t = part[c].expect("subdivided");
        let mut zz_prev = b.add(
            Element::zz(vec![(u, ch.inner[0])]),
            Rule::EdgeSplit,
            vec![x_of[&u], t],
        );
        let mut x_prev = x_of[&u];
        let mut seq = vec![u];
        seq.extend(&ch.inner);
        seq.push(v);
        for i in 1..seq.len() - 1 {
            let xi = b.add(
                Element::X(vec![seq[i]]),
                Rule::CommutatorWalk,
                vec![zz_prev, x_prev],
            );
            let zi = b.add(
                Element::zz(vec![(seq[i], seq[i + 1])]),
                Rule::CommutatorWalk,
                vec![xi, zz_prev],
            );
            x_prev = xi;
            zz_prev = zi;
        }
    }
    Ok(Certificate { entries: b.entries })
}

fn induced_neighbour_parity(g: &Graph, s: &[usize], t: &[usize]) -> (Vec<usize>, Vec<usize>) {
    let mut member = vec![false; g.n()];
    for &u in t {
        member[u] = true;
    }
    let (even, odd): (Vec<usize>, Vec<usize>) = s
        .iter()
        .partition(|&&u| g.neighbors_in(u, &member).is_multiple_of(2));
    (even, odd)
}

fn cross_edges(g: &Graph, s: &[usize], t: &[usize]) -> Vec<(usize, usize)> {
    let mut side = vec![0u8; g.n()];
    for &u in s {
        side[u] = 1;
    }
    for &u in t {
        side[u] = 2;
    }
    g.edges()
        .iter()
        .copied()
        .filter(|&(u, v)| side[u] * side[v] == 2)
        .collect()
}

/// `(1/16) [[X_S, [[X_S, [[X_T, [[X_T, H_p]]]]]]]]`.
fn edge_split_sum(
    hp: &PauliSum<Rational>,
    xs: &PauliSum<Rational>,
    xt: &PauliSum<Rational>,
) -> PauliSum<Rational> {
    let inner = xt.bracket(&xt.bracket(hp));
    xs.bracket(&xs.bracket(&inner))
        .scale(&Rational::ratio(1, 16))
}

/// Replays every step: each rule's structural hypothesis is checked on the
/// graph and its defining commutator identity is evaluated exactly.
pub fn verify_certificate(g: &Graph, cert: &Certificate) -> Result<(), CertificateError> {
    let n = g.n();
    let (hm, hp) = hamiltonians_for_graph::<Rational>(&g.unweighted());
    let fail = |index: usize, reason: &str| CertificateError::InvalidStep {
        index,
        reason: reason.to_string(),
    };
    let entries = cert.entries();
    match entries.first() {
        Some(e) if e.rule == Rule::Axiom && e.element == Element::x((0..n).collect()) => {}
        _ => return Err(fail(0, "entry 0 must be the axiom X_V")),
    }
    let zz_all = Element::zz(g.edges().to_vec());
    if !entries
        .iter()
        .any(|e| e.rule == Rule::Axiom && e.element == zz_all)
    {
        return Err(fail(0, "missing the axiom ZZ_E"));
    }
    let krylov_len = 2 * g.max_degree() + 4;
    for (i, e) in entries.iter().enumerate() {
        if e.premises.iter().any(|&p| p >= i) {
            return Err(fail(i, "premise does not precede the entry"));
        }
        let prem: Vec<&Element> = e.premises.iter().map(|&p| &entries[p].element).collect();
        let xset = |k: usize| match prem.get(k) {
            Some(Element::X(s)) => Ok(s.clone()),
            _ => Err(fail(i, "expected an X premise")),
        };
        let target = e.element.to_sum(n);
        if target.is_zero() && e.rule != Rule::Axiom {
            return Err(fail(i, "empty element"));
        }
        match e.rule {
            Rule::Axiom => {
                if e.element != Element::x((0..n).collect()) && e.element != zz_all {
                    return Err(fail(i, "not an axiom"));
                }
            }
            Rule::InternalSplit => {
                if prem.len() != 1 {
                    return Err(fail(i, "internal split takes one premise"));
                }
                let s = xset(0)?;
                let (even, odd) = induced_neighbour_parity(g, &s, &s);
                let got = e.element.x_members();
                if got != Element::x(even).x_members() && got != Element::x(odd).x_members() {
                    return Err(fail(i, "not a degree-parity part of the premise"));
                }
                let rest: Vec<usize> = {
                    let mut m = vec![true; n];
                    for &u in &s {
                        m[u] = false;
                    }
                    (0..n).filter(|&u| m[u]).collect()
                };
                let xs = PauliSum::x_set(n, &s);
                let xr = hm.sub(&xs);
                let cut = edge_split_sum(&hp, &xs, &xr);
                if cut != PauliSum::zz_set(n, &cross_edges(g, &s, &rest)) {
                    return Err(fail(i, "edge-splitting identity failed"));
                }
                let h = hp.sub(&cut);
                if !krylov_contains(|a| f_apply(&h, a), &xs, &target, krylov_len) {
                    return Err(fail(i, "element outside the f-Krylov space of the premise"));
                }
            }
            Rule::ExternalSplit | Rule::EdgeSplit => {
                if prem.len() != 2 {
                    return Err(fail(i, "split takes two premises"));
                }
                let (s, t) = (xset(0)?, xset(1)?);
                if s.iter().any(|u| t.binary_search(u).is_ok()) {
                    return Err(fail(i, "premises are not disjoint"));
                }
                let (xs, xt) = (PauliSum::x_set(n, &s), PauliSum::x_set(n, &t));
                let cut = edge_split_sum(&hp, &xs, &xt);
                if cut != PauliSum::zz_set(n, &cross_edges(g, &s, &t)) {
                    return Err(fail(i, "edge-splitting identity failed"));
                }
                if e.rule == Rule::EdgeSplit {
                    if cut != target {
                        return Err(fail(i, "element is not E(S, T)"));
                    }
                } else {
                    let (even, odd) = induced_neighbour_parity(g, &s, &t);
                    let got = e.element.x_members();
                    if got != Element::x(even).x_members() && got != Element::x(odd).x_members() {
                        return Err(fail(i, "not a neighbour-parity part of the premise"));
                    }
                    if !krylov_contains(|a| f_apply(&cut, a), &xs, &target, krylov_len) {
                        return Err(fail(i, "element outside the f-Krylov space of the premise"));
                    }
                }
            }
            Rule::PathPeel => {
                let sets = (0..prem.len()).map(xset).collect::<Result<Vec<_>, _>>()?;
                if sets.is_empty() {
                    return Err(fail(i, "path peel needs premises"));
                }
                let sums: Vec<PauliSum<Rational>> =
                    sets.iter().map(|s| PauliSum::x_set(n, s)).collect();
                let union = sums.iter().fold(PauliSum::zero(n), |a, b| a.add(b));
                let diff = sums[1..].iter().fold(sums[0].clone(), |a, b| a.sub(b));
                if union != target && diff != target {
                    return Err(fail(i, "not a sum or difference of the premises"));
                }
            }
            Rule::CommutatorWalk => {
                if prem.len() != 2 {
                    return Err(fail(i, "walk takes two premises"));
                }
                let a = prem[0].to_sum(n);
                let base = match prem[0] {
                    Element::X(_) => &hp,
                    Element::ZZ(_) => &hm,
                };
                let got = f_apply(&a, base).sub(&prem[1].to_sum(n));
                if got != target {
                    return Err(fail(i, "commutator identity failed"));
                }
            }
        }
    }
    Ok(())
}
