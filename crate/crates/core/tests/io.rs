use std::fs;

use proptest::prelude::*;
use tempfile::TempDir;

use qaoa_dla::graph::{named_family, Family, Graph};
use qaoa_dla::io::{
    collect_inputs, emit_edgelist, emit_mqlib, load_instance, parse_edgelist, parse_mqlib,
    report_json, run_batch, write_csv, BatchOptions, BatchSummary, InputFormat, IoError,
    BOUND_EXPONENTS,
};

fn parse_line(e: IoError) -> usize {
    match e {
        IoError::Parse { line, .. } => line,
        IoError::InFile { source, .. } => parse_line(*source),
        other => panic!("unexpected error {other}"),
    }
}

#[test]
fn mqlib_examples() {
    let g = parse_mqlib("3 2\n1 2 1.5\n2 3 1.5\n", false).unwrap();
    assert!(g.is_weighted());
    assert_eq!(g.edges(), &[(0, 1), (1, 2)]);
    assert_eq!(g.weight(1), 1.5);

    let iso = parse_mqlib("4 1\n1 2 1\n", false).unwrap();
    assert_eq!(iso.n(), 4);
    assert_eq!(iso.degree(3), 0);

    let err = parse_mqlib("3 3\n1 2 1\n2 3 1\n2 1 1\n", false).unwrap_err();
    assert_eq!(parse_line(err), 4);
    let err = parse_mqlib("4 2\n1 2 1\n1 2 2\n", false).unwrap_err();
    assert_eq!(parse_line(err), 3);
    assert!(parse_mqlib("", false).is_err());
    assert!(parse_mqlib("2 1 7\n1 2 1\n", false).is_err());
    assert!(parse_mqlib("2 1\n1 2 0\n", false).is_err());
    assert!(parse_mqlib("2 1\n1 2 0\n", true).unwrap().m() == 1);
    assert!(parse_mqlib("2 1\n1 2 inf\n", false).is_err());
}

#[test]
fn edgelist_examples() {
    let g = parse_edgelist("# a comment\n0 1\n\n1 2\n").unwrap();
    assert_eq!(g, named_family(&Family::Path(3)).unwrap());
    let padded = parse_edgelist("# vertices 5\n0 1\n").unwrap();
    assert_eq!((padded.n(), padded.m()), (5, 1));
    assert_eq!(parse_line(parse_edgelist("0 1\n1 1\n").unwrap_err()), 2);
    assert_eq!(
        parse_line(parse_edgelist("# vertices 2\n0 2\n").unwrap_err()),
        2
    );
    assert_eq!(parse_line(parse_edgelist("0 1 2\n").unwrap_err()), 1);
    assert_eq!(parse_edgelist("").unwrap().n(), 0);
}

#[test]
fn load_names_instances_by_file_stem() {
    let dir = TempDir::new().unwrap();
    let p = dir.path().join("triangle.txt");
    fs::write(&p, "3 3\n1 2 1\n2 3 1\n1 3 1\n").unwrap();
    let rec = load_instance(&p, InputFormat::Mqlib, true).unwrap();
    assert_eq!(rec.id, "triangle");
    assert!(rec.ignored_weights);
    assert_eq!(rec.graph, named_family(&Family::Complete(3)).unwrap());

    let err = load_instance(&dir.path().join("missing.txt"), InputFormat::Mqlib, false);
    assert!(matches!(err, Err(IoError::Read { .. })));
    fs::write(&p, "3 3\n1 2 1\n").unwrap();
    let err = load_instance(&p, InputFormat::Mqlib, false).unwrap_err();
    assert!(err.to_string().contains("triangle.txt"));
}

#[test]
fn inputs_expand_directories_in_name_order() {
    let dir = TempDir::new().unwrap();
    for name in ["b.txt", "a.txt", "c.txt"] {
        fs::write(dir.path().join(name), "1 0\n").unwrap();
    }
    fs::create_dir(dir.path().join("nested")).unwrap();
    let extra = dir.path().join("nested").join("z.txt");
    fs::write(&extra, "1 0\n").unwrap();
    let files = collect_inputs(&[extra.clone(), dir.path().to_path_buf()]).unwrap();
    let names: Vec<_> = files
        .iter()
        .map(|f| f.file_name().unwrap().to_str().unwrap().to_string())
        .collect();
    assert_eq!(names, ["z.txt", "a.txt", "b.txt", "c.txt"]);
}

#[test]
fn batch_summary_matches_its_reports() {
    let dir = TempDir::new().unwrap();
    let mut paths = Vec::new();
    for (i, f) in [
        Family::Spider(vec![1, 2, 3]),
        Family::Cycle(5),
        Family::Path(6),
        Family::Spider(vec![1, 2, 4]),
        Family::Complete(4),
    ]
    .iter()
    .enumerate()
    {
        let p = dir.path().join(format!("{i}.txt"));
        fs::write(&p, emit_mqlib(&named_family(f).unwrap())).unwrap();
        paths.push(p);
    }
    let broken = dir.path().join("broken.txt");
    fs::write(&broken, "2 1\n1 3 1\n").unwrap();
    paths.insert(2, broken.clone());

    let out = run_batch(&paths, &BatchOptions::default());
    assert_eq!(out.results.len(), paths.len());
    assert!(out.results[2].is_err());
    assert_eq!(out.errors().next().unwrap().path, broken);

    let reports: Vec<_> = out.reports().collect();
    let free = reports.iter().filter(|r| r.is_free()).count();
    assert_eq!(free, 2);
    let s = &out.summary;
    assert_eq!((s.total, s.analyzed, s.errors, s.free), (6, 5, 1, free));
    assert!((s.free_fraction - free as f64 / 5.0).abs() < 1e-15);
    for (i, &(k, count)) in s.lower_bound_at_least.iter().enumerate() {
        assert_eq!(k, BOUND_EXPONENTS[i]);
        let want = reports
            .iter()
            .filter(|r| r.lower_bound.log2 >= k as f64)
            .count();
        assert_eq!(count, want);
    }
    assert_eq!(&BatchSummary::from_reports(out.reports(), 1), s);
}

#[test]
fn batch_without_timings_is_reproducible() {
    let dir = TempDir::new().unwrap();
    let paths: Vec<_> = (0..12)
        .map(|seed| {
            let g = qaoa_dla::graph::sample_er(9, 0.45, seed).unwrap();
            let p = dir.path().join(format!("g{seed:02}.txt"));
            fs::write(&p, emit_mqlib(&g)).unwrap();
            p
        })
        .collect();
    let run = |threads| {
        let opts = BatchOptions {
            threads,
            timings: false,
            ..BatchOptions::default()
        };
        run_batch(&paths, &opts)
            .reports()
            .map(|r| report_json(r, Some(256)).to_string())
            .collect::<Vec<_>>()
    };
    assert_eq!(run(1), run(3));
}

#[test]
fn long_exact_dimensions_are_elided() {
    let g = named_family(&Family::Complete(200)).unwrap();
    let report = qaoa_dla::classifier::analyze(
        &g,
        &qaoa_dla::classifier::AnalysisOptions {
            brute_force: false,
            ..Default::default()
        },
    );
    assert!(report_json(&report, Some(256))["ma_dim_exact"].is_null());
    let full = report_json(&report, None);
    let text = full["ma_dim_exact"].as_str().unwrap();
    assert_eq!(text, report.ma_dimension.exact.to_string());
    assert!((full["ma_dim_log2"].as_f64().unwrap() - 399.0).abs() < 1e-9);
}

#[test]
fn csv_rows() {
    let g = named_family(&Family::Spider(vec![1, 2, 3])).unwrap();
    let r = qaoa_dla::classifier::analyze(&g, &Default::default());
    let mut buf = Vec::new();
    write_csv(&mut buf, &[&r]).unwrap();
    let mut rdr = csv::Reader::from_reader(buf.as_slice());
    let header = rdr.headers().unwrap().clone();
    let row = rdr.records().next().unwrap().unwrap();
    let cell = |k: &str| row[header.iter().position(|h| h == k).unwrap()].to_string();
    assert_eq!(cell("n"), "7");
    assert_eq!(cell("free"), "true");
    assert_eq!(cell("blocks"), "7");
    assert_eq!(cell("ma_dim_log2"), format!("{:.6}", 4095f64.log2()));
}

fn weighted_graph() -> impl Strategy<Value = Graph> {
    (1usize..=12).prop_flat_map(|n| {
        proptest::collection::vec(
            prop_oneof![Just(None), (-1e6f64..1e6).prop_map(Some)],
            n * (n - 1) / 2,
        )
        .prop_map(move |slots| {
            let pairs = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)));
            let edges: Vec<_> = pairs
                .zip(slots)
                .filter_map(|((u, v), w)| w.filter(|w| *w != 0.0).map(|w| (u, v, w)))
                .collect();
            Graph::weighted(n, edges).unwrap()
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn mqlib_round_trip(g in weighted_graph()) {
        prop_assert_eq!(parse_mqlib(&emit_mqlib(&g), false).unwrap(), g);
    }

    #[test]
    fn edgelist_round_trip(g in weighted_graph()) {
        let plain = g.unweighted();
        prop_assert_eq!(parse_edgelist(&emit_edgelist(&plain)).unwrap(), plain);
    }

    #[test]
    fn ignoring_weights_drops_them(g in weighted_graph()) {
        let parsed = parse_mqlib(&emit_mqlib(&g), true).unwrap();
        prop_assert!(!parsed.is_weighted());
        prop_assert_eq!(parsed, g.unweighted());
    }
}
