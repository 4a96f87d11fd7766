use std::collections::HashSet;

use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use qaoa_dla::classifier::{classify_multiangle, qaoa_closure_dimension};
use qaoa_dla::graph::{
    enumerate_connected, named_family, reduce_to_subdivision, sample_er, Family, Graph,
    VertexPartition,
};
use qaoa_dla::pauli::{hamiltonians_for_graph, lie_closure, ClosureOptions, Mod61, PauliSum};
use qaoa_dla::splitter::{
    bfs_splitting, bfs_splitting_traced, certify_asym_subdivision, check_free_recursive,
    is_parity_saturated, is_splittable, random_schedule_splitting, split_edges,
    split_vertices_external, split_vertices_internal, verify_certificate, CertificateError,
    Element, Rule,
};

/// Vertices 1..7 of the seven-vertex free example, relabelled 0..6.
fn counter_example() -> Graph {
    Graph::new(
        7,
        [
            (0, 1),
            (1, 2),
            (2, 3),
            (3, 4),
            (4, 5),
            (5, 0),
            (6, 1),
            (1, 3),
        ],
    )
    .unwrap()
}

fn blocks(p: &VertexPartition) -> Vec<Vec<usize>> {
    p.blocks().to_vec()
}

fn parity_in(g: &Graph, u: usize, set: &[usize]) -> usize {
    set.iter().filter(|&&v| g.has_edge(u, v)).count() % 2
}

#[test]
fn internal_examples() {
    let p3 = named_family(&Family::Path(3)).unwrap();
    assert_eq!(
        blocks(&split_vertices_internal(&p3)),
        vec![vec![0, 2], vec![1]]
    );
    let c4 = named_family(&Family::Cycle(4)).unwrap();
    assert_eq!(
        blocks(&split_vertices_internal(&c4)),
        vec![vec![0, 1, 2, 3]]
    );
    assert!(split_vertices_internal(&Graph::new(0, []).unwrap()).is_empty());
}

#[test]
fn external_examples() {
    let p3 = named_family(&Family::Path(3)).unwrap();
    let p = VertexPartition::new(vec![vec![0, 2], vec![1]]);
    assert_eq!(split_vertices_external(&p3, &p), p);
    let g = counter_example();
    let d = VertexPartition::discrete(7);
    assert_eq!(split_vertices_external(&g, &d), d);
    let two_stage = split_vertices_external(&g, &split_vertices_internal(&g));
    assert_eq!(
        blocks(&two_stage),
        vec![vec![0], vec![1, 5], vec![2, 4], vec![3, 6]]
    );
}

#[test]
fn edge_partition_examples() {
    let p3 = named_family(&Family::Path(3)).unwrap();
    let q = split_edges(&p3, &VertexPartition::new(vec![vec![0, 2], vec![1]]));
    assert_eq!(q.blocks(), &[vec![(0, 1), (1, 2)]]);
    let k4 = named_family(&Family::Complete(4)).unwrap();
    assert_eq!(
        split_edges(&k4, &VertexPartition::trivial(4)).blocks(),
        &[k4.edges().to_vec()]
    );
    let k3 = named_family(&Family::Complete(3)).unwrap();
    let singles = split_edges(&k3, &VertexPartition::discrete(3));
    assert_eq!(singles.len(), 3);
    assert!(singles.blocks().iter().all(|b| b.len() == 1));
}

#[test]
fn bfs_examples() {
    for n in 3..=12 {
        let c = named_family(&Family::Cycle(n)).unwrap();
        assert_eq!(bfs_splitting(&c), VertexPartition::trivial(n));
    }
    let g = counter_example();
    assert_eq!(
        blocks(&bfs_splitting(&g)),
        vec![vec![0], vec![1, 5], vec![2, 4], vec![3, 6]]
    );
    let (free, p) = is_splittable(&g);
    assert!(!free);
    assert_eq!(p.len(), 4);
    let spider = named_family(&Family::Spider(vec![1, 2, 3])).unwrap();
    assert!(is_splittable(&spider).0);
}

#[test]
fn no_small_connected_graph_splits() {
    for n in 2..=5 {
        for g in enumerate_connected(n).unwrap() {
            assert!(!is_splittable(&g).0, "{:?}", g.edges());
        }
    }
}

#[test]
fn splittable_small_graphs_match_oracle() {
    for n in 2..=6 {
        for g in enumerate_connected(n).unwrap() {
            if is_splittable(&g).0 {
                let ma = classify_multiangle(&g).unwrap().1.to_usize().unwrap();
                assert_eq!(qaoa_closure_dimension(&g, 6).unwrap(), ma);
            }
        }
    }
}

#[test]
fn recursive_check_examples() {
    assert!(check_free_recursive(&counter_example(), 7));
    assert!(!check_free_recursive(
        &named_family(&Family::Cycle(12)).unwrap(),
        7
    ));
    assert!(!check_free_recursive(
        &named_family(&Family::Cycle(5)).unwrap(),
        7
    ));
}

#[test]
fn recursive_check_agrees_with_splitting() {
    for seed in 0..100 {
        let g = sample_er(24, 0.5, seed).unwrap();
        if check_free_recursive(&g, 7) {
            assert!(is_splittable(&g).0, "seed {seed}");
        }
    }
}

#[test]
fn certificate_examples() {
    let spider = named_family(&Family::Spider(vec![1, 2, 3])).unwrap();
    let cert = certify_asym_subdivision(&spider).unwrap();
    let (xs, zs) = cert.singletons();
    assert_eq!(xs.len(), 7);
    assert_eq!(zs.len(), 6);
    assert!(cert.is_complete(&spider));
    verify_certificate(&spider, &cert).unwrap();

    let first = &cert.entries()[0];
    assert_eq!(first.rule, Rule::Axiom);
    assert_eq!(first.element, Element::X((0..7).collect()));
    assert!(cert
        .entries()
        .iter()
        .any(|e| e.rule == Rule::Axiom && e.element == Element::ZZ(spider.edges().to_vec())));
    for (i, e) in cert.entries().iter().enumerate() {
        assert!(e.premises.iter().all(|&p| p < i));
        assert_eq!(e.rule == Rule::Axiom, e.premises.is_empty() && i < 2);
    }

    let k3 = named_family(&Family::Complete(3)).unwrap();
    let reduced = reduce_to_subdivision(&k3).unwrap();
    let cert = certify_asym_subdivision(&reduced.graph).unwrap();
    assert!(cert.is_complete(&reduced.graph));
    verify_certificate(&reduced.graph, &cert).unwrap();
}

#[test]
fn certificate_structural_errors() {
    let mut edges = Vec::new();
    let mut next = 3;
    for (a, b, k) in [(0, 1, 2), (1, 2, 2), (2, 0, 4)] {
        let mut prev = a;
        for _ in 0..k {
            edges.push((prev, next));
            prev = next;
            next += 1;
        }
        edges.push((prev, b));
    }
    let triangle = Graph::new(next, edges).unwrap();
    assert!(certify_asym_subdivision(&triangle).is_err());
    assert_eq!(
        certify_asym_subdivision(&named_family(&Family::Spider(vec![2, 2, 1])).unwrap())
            .unwrap_err(),
        CertificateError::DuplicatePathSize(1)
    );
    assert_eq!(
        certify_asym_subdivision(&named_family(&Family::Cycle(5)).unwrap()).unwrap_err(),
        CertificateError::TooFewBaseVertices(0)
    );
    let two = Graph::new(4, [(0, 1), (2, 3)]).unwrap();
    assert_eq!(
        certify_asym_subdivision(&two).unwrap_err(),
        CertificateError::NotConnected
    );
}

#[test]
fn certified_elements_lie_in_the_closure() {
    let spider = named_family(&Family::Spider(vec![1, 2, 3])).unwrap();
    let cert = certify_asym_subdivision(&spider).unwrap();
    let (hm, hp) = hamiltonians_for_graph::<Mod61>(&spider);
    let mut basis = lie_closure(7, &[hm, hp], &ClosureOptions::default()).unwrap();
    for e in cert.entries() {
        let sum = match &e.element {
            Element::X(s) => PauliSum::<Mod61>::x_set(7, s),
            Element::ZZ(es) => PauliSum::<Mod61>::zz_set(7, es),
        };
        assert!(basis.contains(&sum), "{:?}", e.element);
    }
}

#[test]
fn schedules_agree_on_small_random_graphs() {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    for seed in 0..20 {
        let g = sample_er(10, 0.4, seed).unwrap();
        let target = bfs_splitting(&g);
        for _ in 0..20 {
            assert_eq!(random_schedule_splitting(&g, &mut rng), target);
        }
    }
}

fn graph_strategy() -> impl Strategy<Value = Graph> {
    (1usize..=14).prop_flat_map(|n| {
        proptest::collection::vec(any::<bool>(), n * (n - 1) / 2).prop_map(move |mask| {
            let pairs = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)));
            let edges: Vec<_> = pairs
                .zip(mask)
                .filter(|(_, b)| *b)
                .map(|(e, _)| e)
                .collect();
            Graph::new(n, edges).unwrap()
        })
    })
}

fn graph_and_partition() -> impl Strategy<Value = (Graph, VertexPartition)> {
    graph_strategy().prop_flat_map(|g| {
        let n = g.n();
        proptest::collection::vec(0..3usize, n).prop_map(move |labels| {
            let mut parts = vec![Vec::new(); 3];
            for (u, l) in labels.into_iter().enumerate() {
                parts[l].push(u);
            }
            (g.clone(), VertexPartition::new(parts))
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn external_refines_its_input((g, p) in graph_and_partition()) {
        let out = split_vertices_external(&g, &p);
        prop_assert!(out.refines(&p));
        prop_assert_eq!(out.vertex_count(), g.n());
    }

    #[test]
    fn internal_blocks_are_parity_uniform(g in graph_strategy()) {
        let p = split_vertices_internal(&g);
        prop_assert_eq!(p.vertex_count(), g.n());
        for b in p.blocks() {
            let first = parity_in(&g, b[0], b);
            prop_assert!(b.iter().all(|&u| parity_in(&g, u, b) == first));
        }
    }

    #[test]
    fn bfs_is_the_two_stage_fixpoint(g in graph_strategy()) {
        let internal = split_vertices_internal(&g);
        let traced = bfs_splitting_traced(&g);
        prop_assert!(traced.partition.refines(&internal));
        prop_assert_eq!(&traced.partition, &split_vertices_external(&g, &internal));
        prop_assert!(traced.rounds < g.n().max(1));
    }

    #[test]
    fn bfs_partition_is_parity_saturated(g in graph_strategy()) {
        let p = bfs_splitting(&g);
        prop_assert!(is_parity_saturated(&g, &p));
        for s in p.blocks() {
            for t in p.blocks() {
                let first = parity_in(&g, s[0], t);
                prop_assert!(s.iter().all(|&u| parity_in(&g, u, t) == first));
            }
        }
    }

    #[test]
    fn edge_blocks_partition_the_edges((g, p) in graph_and_partition()) {
        let q = split_edges(&g, &p);
        let mut seen = HashSet::new();
        for b in q.blocks() {
            prop_assert!(!b.is_empty());
            for e in b {
                prop_assert!(g.has_edge(e.0, e.1));
                prop_assert!(seen.insert(*e));
            }
        }
        prop_assert_eq!(seen.len(), g.m());
    }
}
