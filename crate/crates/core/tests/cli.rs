use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use qaoa_dla::io::parse_mqlib;
use serde_json::Value;
use tempfile::TempDir;

const BIN: &str = env!("CARGO_BIN_EXE_qaoa-dla");

const SPIDER: &str = "7 6\n1 2 1\n1 3 1\n3 4 1\n1 5 1\n5 6 1\n6 7 1\n";
const C5: &str = "5 5\n1 2 1\n2 3 1\n3 4 1\n4 5 1\n1 5 1\n";
const C4: &str = "4 4\n1 2 1\n2 3 1\n3 4 1\n1 4 1\n";

fn run(args: &[&str]) -> Output {
    Command::new(BIN)
        .args(args)
        .env_remove("DLA_MAX_CLOSURE_QUBITS")
        .output()
        .unwrap()
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn json_lines(out: &Output) -> Vec<Value> {
    stdout(out)
        .lines()
        .map(|l| serde_json::from_str(l).unwrap())
        .collect()
}

fn write(dir: &Path, name: &str, text: &str) -> PathBuf {
    let p = dir.join(name);
    fs::write(&p, text).unwrap();
    p
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn analyze_spider() {
    let dir = TempDir::new().unwrap();
    let f = write(dir.path(), "spider.txt", SPIDER);
    let out = run(&["analyze", s(&f), "--no-timings"]);
    assert!(out.status.success());
    let r = &json_lines(&out)[0];
    assert_eq!(r["id"], "spider");
    assert_eq!(r["ma_dim_exact"], "4095");
    assert_eq!(r["free"], true);
    assert_eq!(r["n"], 7);
}

#[test]
fn closure_of_c4() {
    let dir = TempDir::new().unwrap();
    let f = write(dir.path(), "c4.txt", C4);
    let out = run(&["closure", s(&f)]);
    assert!(out.status.success());
    let r = &json_lines(&out)[0];
    assert_eq!(r["dimension"], 11);
    assert_eq!(r["free"], false);
}

#[test]
fn enumerate_five_vertices() {
    let out = run(&["enumerate", "--n", "5"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out).lines().count(), 21);
    let all = run(&["enumerate", "--n", "4", "--all"]);
    assert_eq!(stdout(&all).lines().count(), 11);
}

#[test]
fn families_round_trip_through_analyze() {
    let out = run(&["families", "--spec", "spider:1,2,3"]);
    assert!(out.status.success());
    assert_eq!(
        parse_mqlib(&stdout(&out), false).unwrap(),
        parse_mqlib(SPIDER, false).unwrap()
    );
    let report = run(&["families", "--spec", "cycle:5", "--analyze", "--no-timings"]);
    assert_eq!(json_lines(&report)[0]["freeness"], "BruteForcedNotFree");
}

#[test]
fn batch_counts_free_instances() {
    let dir = TempDir::new().unwrap();
    write(dir.path(), "a_spider.txt", SPIDER);
    write(dir.path(), "b_c5.txt", C5);
    let summary = dir.path().join("summary.json");
    let out = run(&[
        "batch",
        s(dir.path().join("a_spider.txt").as_path()),
        s(dir.path().join("b_c5.txt").as_path()),
        "--summary",
        s(&summary),
        "--no-timings",
    ]);
    assert!(out.status.success());
    let reports = json_lines(&out);
    let ids: Vec<_> = reports.iter().map(|r| r["id"].as_str().unwrap()).collect();
    assert_eq!(ids, ["a_spider", "b_c5"]);
    let sum: Value = serde_json::from_str(&fs::read_to_string(&summary).unwrap()).unwrap();
    assert_eq!(sum["total"], 2);
    assert_eq!(sum["free"], 1);
    assert_eq!(sum["free_fraction"], 0.5);
}

#[test]
fn empty_batch_succeeds() {
    let dir = TempDir::new().unwrap();
    let out = run(&["batch", s(dir.path())]);
    assert!(out.status.success());
    assert!(stdout(&out).is_empty());
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("\"total\":0"), "{err}");
}

#[test]
fn batch_output_is_deterministic_across_thread_counts() {
    let dir = TempDir::new().unwrap();
    let emit = dir.path().join("graphs");
    let made = run(&[
        "sample-er",
        "--n",
        "9",
        "--p",
        "0.5",
        "--count",
        "24",
        "--seed",
        "3",
        "--emit-dir",
        s(&emit),
    ]);
    assert!(made.status.success());
    let outputs: Vec<_> = ["1", "2", "4"]
        .iter()
        .map(|t| {
            let out = run(&[
                "batch",
                s(&emit),
                "--out",
                "jsonl",
                "--no-timings",
                "--threads",
                t,
            ]);
            assert!(out.status.success());
            out.stdout
        })
        .collect();
    assert_eq!(String::from_utf8_lossy(&outputs[0]).lines().count(), 24);
    assert!(outputs.iter().all(|o| o == &outputs[0]));
}

#[test]
fn exit_codes() {
    assert_eq!(run(&["bogus"]).status.code(), Some(2));
    assert_eq!(run(&["enumerate"]).status.code(), Some(2));
    assert_eq!(
        run(&["analyze", "x.txt", "--format", "nope"]).status.code(),
        Some(2)
    );

    let dir = TempDir::new().unwrap();
    let good = write(dir.path(), "good.txt", C5);
    let bad = write(dir.path(), "bad.txt", "3 2\n1 2 1\n1 2 1\n");
    let lenient = run(&["batch", s(&good), s(&bad)]);
    assert_eq!(lenient.status.code(), Some(0));
    assert_eq!(json_lines(&lenient).len(), 1);
    let err = String::from_utf8(lenient.stderr).unwrap();
    assert!(err.contains("line 3"), "{err}");
    assert_eq!(
        run(&["batch", s(&good), s(&bad), "--strict"]).status.code(),
        Some(1)
    );
    assert_eq!(run(&["analyze", s(&bad)]).status.code(), Some(1));
}

#[test]
fn closure_cap_from_the_environment() {
    let dir = TempDir::new().unwrap();
    let f = write(dir.path(), "c5.txt", C5);
    let capped = Command::new(BIN)
        .args(["analyze", s(&f), "--no-timings"])
        .env("DLA_MAX_CLOSURE_QUBITS", "4")
        .output()
        .unwrap();
    assert_eq!(json_lines(&capped)[0]["freeness"], "Undetermined");
    let flag_wins = Command::new(BIN)
        .args([
            "analyze",
            s(&f),
            "--no-timings",
            "--max-closure-qubits",
            "6",
        ])
        .env("DLA_MAX_CLOSURE_QUBITS", "4")
        .output()
        .unwrap();
    let r = &json_lines(&flag_wins)[0];
    assert_eq!(r["freeness"], "BruteForcedNotFree");
    assert_eq!(r["dimension_exact"], "14");
}

#[test]
fn csv_output_has_a_header_and_a_row_per_report() {
    let dir = TempDir::new().unwrap();
    let f = write(dir.path(), "spider.txt", SPIDER);
    let out = run(&["batch", s(&f), "--out", "csv"]);
    let text = stdout(&out);
    let mut lines = text.lines();
    assert!(lines.next().unwrap().starts_with("id,n,m,"));
    assert!(lines.next().unwrap().starts_with("spider,7,6,"));
    assert!(lines.next().is_none());
}

#[test]
fn reduce_and_certify() {
    let dir = TempDir::new().unwrap();
    let f = write(dir.path(), "p2.txt", "2 1\n1 2 1\n");
    let emitted = dir.path().join("reduced.txt");
    let out = run(&["reduce", s(&f), "--emit", s(&emitted)]);
    assert!(out.status.success());
    let r = &json_lines(&out)[0];
    assert_eq!(r["n_reduced"], 10);
    assert_eq!(r["added_vertices"], 8);
    assert_eq!(r["certificate_verified"], true);
    assert_eq!(r["delta_verified"], true);
    let cert = run(&["certify", s(&emitted)]);
    assert!(cert.status.success());
    assert!(!stdout(&cert).is_empty());
    let c5 = write(dir.path(), "c5.txt", C5);
    assert_eq!(run(&["certify", s(&c5)]).status.code(), Some(1));
}
