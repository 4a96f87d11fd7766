//! Acceptance suite: one PASS/FAIL line per criterion. Criterion 12 needs an
//! MQLib snapshot in `$MQLIB_DIR` and is skipped otherwise.

use std::collections::HashSet;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use nalgebra::DMatrix;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use qaoa_dla::classifier::{
    analyze, classify_multiangle, dimension_lower_bound, multiangle_closure,
    qaoa_closure_dimension, weighted_freeness_check, AnalysisOptions, Freeness,
};
use qaoa_dla::graph::{
    brute_maxcut, enumerate_connected, exact_maxcut, has_trivial_automorphism_group, named_family,
    reduce_to_subdivision, sample_er, Family, Graph, VertexPartition,
};
use qaoa_dla::io::{collect_inputs, run_batch, BatchOptions, InputFormat};
use qaoa_dla::pauli::{
    even_parity_vectors, f_apply, hamiltonians_for_graph, lie_closure, xz_star, xz_star_spectrum,
    ClosureOptions, Mod61, PauliSum,
};
use qaoa_dla::splitter::{
    bfs_splitting, certify_asym_subdivision, random_schedule_splitting, verify_certificate,
};

/// Outcome of one criterion: `Ok(detail)` passes, `Err(detail)` fails,
/// `None` is a skip.
type Outcome = Option<Result<String, String>>;
type Criterion = (&'static str, fn() -> Outcome);

fn check(ok: bool, detail: String) -> Outcome {
    Some(if ok { Ok(detail) } else { Err(detail) })
}

fn ma_dim(g: &Graph) -> usize {
    classify_multiangle(&g.unweighted())
        .unwrap()
        .1
        .to_usize()
        .unwrap()
}

fn connected_between(lo: usize, hi: usize) -> Vec<Graph> {
    (lo..=hi)
        .flat_map(|k| enumerate_connected(k).unwrap())
        .collect()
}

fn c1_enumeration() -> Outcome {
    let counts: Vec<usize> = (4..=7)
        .map(|n| enumerate_connected(n).unwrap().len())
        .collect();
    check(
        counts == [6, 21, 112, 853],
        format!("counts n=4..7: {counts:?}"),
    )
}

fn c2_multiangle_oracle() -> Outcome {
    let graphs = connected_between(4, 6);
    let bad: Vec<String> = graphs
        .iter()
        .filter_map(|g| {
            let closed = multiangle_closure::<Mod61>(g, 6).unwrap().dimension();
            (closed != ma_dim(g)).then(|| format!("{:?}: {closed} vs {}", g.edges(), ma_dim(g)))
        })
        .collect();
    check(
        graphs.len() == 139 && bad.is_empty(),
        format!(
            "{} graphs, {} mismatches {:?}",
            graphs.len(),
            bad.len(),
            bad.first()
        ),
    )
}

fn c3_standard_dlas() -> Outcome {
    let mut got = Vec::new();
    let mut ok = true;
    for n in 3..=6 {
        for (family, want) in [(Family::Path(n), n * n), (Family::Cycle(n), 3 * n - 1)] {
            let g = named_family(&family).unwrap();
            let (hm, hp) = hamiltonians_for_graph::<Mod61>(&g);
            let raw = lie_closure(n, &[hm, hp], &ClosureOptions::default())
                .unwrap()
                .dimension();
            let fast = qaoa_closure_dimension(&g, 8).unwrap();
            ok &= raw == want && fast == want;
            got.push(format!("{family}={raw}"));
        }
    }
    check(ok, got.join(" "))
}

fn c4_no_small_free_graphs() -> Outcome {
    let opts = AnalysisOptions::default();
    let mut free_small = 0;
    for n in 2..=5 {
        for g in enumerate_connected(n).unwrap() {
            free_small += usize::from(analyze(&g, &opts).is_free());
        }
    }
    let six = enumerate_connected(6).unwrap();
    let reports: Vec<_> = six.iter().map(|g| analyze(g, &opts)).collect();
    let free_six = reports.iter().filter(|r| r.is_free()).count();
    let undecided = reports.iter().filter(|r| !r.freeness.is_decided()).count();
    let rigid = six
        .iter()
        .filter(|g| has_trivial_automorphism_group(g).unwrap())
        .count();
    check(
        free_small == 0 && free_six == 0 && rigid == 8 && undecided == 0,
        format!("free n<=5: {free_small}, free n=6: {free_six}, trivial Aut n=6: {rigid}, undecided: {undecided}"),
    )
}

fn counter_example() -> Graph {
    // Vertices 1..7 of the figure relabelled 0..6.
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

fn c5_counter_example() -> Outcome {
    let g = counter_example();
    let p = bfs_splitting(&g);
    let want = VertexPartition::new(vec![vec![0], vec![1, 5], vec![2, 4], vec![3, 6]]);
    let r = analyze(&g, &AnalysisOptions::default());
    let dim = r.dimension.as_ref().and_then(|d| d.to_usize());
    check(
        p == want
            && r.freeness == Freeness::BruteForcedFree
            && dim == Some(ma_dim(&g))
            && dim == Some(8190),
        format!(
            "partition {:?}, verdict {}, dimension {dim:?}",
            p.blocks(),
            r.freeness
        ),
    )
}

fn c6_order_independence() -> Outcome {
    let mut mismatches = 0;
    for i in 0..50u64 {
        let g = sample_er(12, 0.5, 1000 + i).unwrap();
        let target = bfs_splitting(&g);
        let mut rng = ChaCha8Rng::seed_from_u64(i);
        for _ in 0..100 {
            mismatches += usize::from(random_schedule_splitting(&g, &mut rng) != target);
        }
    }
    check(
        mismatches == 0,
        format!("5000 schedules, {mismatches} mismatches"),
    )
}

fn c7_subdivision_certificates() -> Outcome {
    let spider = named_family(&Family::Spider(vec![1, 2, 3])).unwrap();
    let spider_ok = certify_asym_subdivision(&spider)
        .and_then(|c| verify_certificate(&spider, &c))
        .is_ok();
    let mut cases = 0;
    let mut failures = Vec::new();
    for n in 2..=5 {
        for g in enumerate_connected(n).unwrap() {
            cases += 1;
            let red = reduce_to_subdivision(&g).unwrap();
            let h = &red.graph;
            let cert_ok = certify_asym_subdivision(h)
                .and_then(|c| verify_certificate(h, &c))
                .is_ok();
            let base = brute_maxcut(&g).unwrap().0;
            let reduced = exact_maxcut(h).unwrap().0;
            let delta_ok = reduced - base == red.added_vertices(&g) as f64;
            if !(cert_ok && delta_ok) {
                failures.push(format!("{:?} cert={cert_ok} delta={delta_ok}", g.edges()));
            }
        }
    }
    check(
        spider_ok && failures.is_empty() && cases == 30,
        format!("spider certified: {spider_ok}; {cases} reductions, failures {failures:?}"),
    )
}

fn random_connected(rng: &mut ChaCha8Rng, n: usize) -> Graph {
    loop {
        let p = rng.gen_range(0.3..0.9);
        let g = sample_er(n, p, rng.gen()).unwrap();
        if g.is_connected() && !g.is_path() && !g.is_cycle() {
            return g;
        }
    }
}

fn c8_weighted_theorem() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let mut passing = 0;
    let mut closure_mismatch = Vec::new();
    for i in 0..50 {
        let n = rng.gen_range(4..=6);
        let g = random_connected(&mut rng, n).with_uniform_weights(800 + i);
        if weighted_freeness_check(&g).unwrap() {
            passing += 1;
            let dim = qaoa_closure_dimension(&g, 6).unwrap();
            if dim != ma_dim(&g) {
                closure_mismatch.push((g.edges().to_vec(), dim));
            }
        }
    }
    check(
        passing >= 49 && closure_mismatch.is_empty(),
        format!("{passing}/50 pass the condition, closure mismatches {closure_mismatch:?}"),
    )
}

fn c9_random_freeness_rate() -> Outcome {
    let split = (0..200u64)
        .filter(|&s| bfs_splitting(&sample_er(30, 0.5, 9000 + s).unwrap()).is_discrete())
        .count();
    check(split >= 190, format!("{split}/200 splittable"))
}

/// `f` restricted to the star space of `u`, in the star-string basis.
fn star_matrix(g: &Graph, u: usize) -> DMatrix<f64> {
    let (_, hp) = hamiltonians_for_graph::<f64>(g);
    let xs = even_parity_vectors(g.degree(u));
    let basis: Vec<_> = xs.iter().map(|x| xz_star(g, u, x)).collect();
    DMatrix::from_fn(basis.len(), basis.len(), |i, j| {
        let img = f_apply(&hp, &PauliSum::single(g.n(), basis[j].clone(), 1.0));
        img.coeff(&basis[i])
    })
}

fn c10_spectrum() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    let mut worst = 0.0f64;
    for i in 0..50 {
        let d = rng.gen_range(1..=6);
        let g = named_family(&Family::Star(d))
            .unwrap()
            .with_uniform_weights(100 + i);
        let mut numeric: Vec<f64> = star_matrix(&g, 0)
            .symmetric_eigen()
            .eigenvalues
            .iter()
            .copied()
            .collect();
        numeric.sort_by(f64::total_cmp);
        let formula = xz_star_spectrum(&g, 0).unwrap();
        for (a, b) in numeric.iter().zip(&formula) {
            worst = worst.max((a - b).abs());
        }
    }
    let mut unit_ok = true;
    for d in 1..=6usize {
        let g = named_family(&Family::Star(d)).unwrap();
        let mut want = Vec::new();
        let mut binom = 1usize;
        for k in 0..d {
            let value = (d as f64 - 2.0 * k as f64).powi(2);
            want.extend(std::iter::repeat_n(value, binom));
            binom = binom * (d - 1 - k) / (k + 1);
        }
        want.sort_by(f64::total_cmp);
        unit_ok &= xz_star_spectrum(&g, 0).unwrap() == want;
    }
    check(
        worst <= 1e-9 && unit_ok,
        format!("max deviation {worst:.2e} on 50 weighted stars; unit spectra (d-2k)^2: {unit_ok}"),
    )
}

fn sparse_graph(n: usize, avg_degree: usize, seed: u64) -> Graph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut seen = HashSet::new();
    let target = n * avg_degree / 2;
    while seen.len() < target {
        let u = rng.gen_range(0..n);
        let v = rng.gen_range(0..n);
        if u != v {
            seen.insert((u.min(v), u.max(v)));
        }
    }
    Graph::new(n, seen).unwrap()
}

fn c11_throughput() -> Outcome {
    let g = sparse_graph(50_000, 6, 11);
    let start = Instant::now();
    let p = bfs_splitting(&g);
    let bound = dimension_lower_bound(&g, &p);
    let elapsed = start.elapsed();
    check(
        elapsed < Duration::from_secs(10),
        format!(
            "n=50000 m={}: {} blocks, bound 2^{:.1}, {:.2}s",
            g.m(),
            p.len(),
            bound.log2,
            elapsed.as_secs_f64()
        ),
    )
}

fn c12_mqlib() -> Outcome {
    let dir = PathBuf::from(std::env::var_os("MQLIB_DIR")?);
    let files = match collect_inputs(&[dir]) {
        Ok(f) => f,
        Err(e) => return check(false, e.to_string()),
    };
    let opts = BatchOptions {
        format: InputFormat::Mqlib,
        ..BatchOptions::default()
    };
    let outcome = run_batch(&files, &opts);
    let s = &outcome.summary;
    let frac128 = s
        .lower_bound_at_least
        .iter()
        .find(|(k, _)| *k == 128)
        .map_or(0.0, |&(_, c)| c as f64 / s.analyzed.max(1) as f64);
    check(
        (s.free_fraction - 0.57).abs() <= 0.02 && frac128 >= 0.73,
        format!(
            "{} instances ({} errors): free {:.1}%, >=2^128 {:.1}%",
            s.total,
            s.errors,
            100.0 * s.free_fraction,
            100.0 * frac128
        ),
    )
}

fn main() -> ExitCode {
    let criteria: [Criterion; 12] = [
        ("enumeration counts", c1_enumeration),
        (
            "multi-angle closure vs classification",
            c2_multiangle_oracle,
        ),
        ("standard path and cycle DLAs", c3_standard_dlas),
        ("no small free graphs", c4_no_small_free_graphs),
        (
            "counter-example partition and dimension",
            c5_counter_example,
        ),
        ("splitting order independence", c6_order_independence),
        (
            "subdivision certificates and MaxCut delta",
            c7_subdivision_certificates,
        ),
        ("weighted freeness condition", c8_weighted_theorem),
        ("random-graph splitting rate", c9_random_freeness_rate),
        ("star spectrum formula", c10_spectrum),
        ("splitter throughput", c11_throughput),
        ("MQLib summary", c12_mqlib),
    ];
    let filter: Vec<String> = std::env::args()
        .skip(1)
        .filter(|a| !a.starts_with('-'))
        .collect();
    let results: Vec<(usize, Outcome, Duration)> = std::thread::scope(|s| {
        let handles: Vec<_> = criteria
            .iter()
            .enumerate()
            .filter(|(i, (name, _))| {
                filter.is_empty()
                    || filter
                        .iter()
                        .any(|f| name.contains(f.as_str()) || *f == (i + 1).to_string())
            })
            .map(|(i, &(_, f))| {
                s.spawn(move || {
                    let t = Instant::now();
                    let out = f();
                    (i, out, t.elapsed())
                })
            })
            .collect();
        handles.into_iter().map(|h| h.join().unwrap()).collect()
    });
    let mut failed = 0;
    for (i, outcome, took) in results {
        let name = criteria[i].0;
        let secs = took.as_secs_f64();
        match outcome {
            Some(Ok(d)) => println!("criterion {:>2} PASS  {name} ({secs:.1}s): {d}", i + 1),
            Some(Err(d)) => {
                failed += 1;
                println!("criterion {:>2} FAIL  {name} ({secs:.1}s): {d}", i + 1);
            }
            None => println!("criterion {:>2} SKIP  {name}: MQLIB_DIR not set", i + 1),
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
