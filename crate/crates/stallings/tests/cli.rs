//! End-to-end tests of the command-line surface: formats, exit codes,
//! and report determinism.

use std::path::PathBuf;
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_stallings"))
}

fn tmp(name: &str) -> PathBuf {
    let mut p = std::env::temp_dir();
    p.push(format!("stallings-cli-{}-{name}", std::process::id()));
    p
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

#[test]
fn build_emits_the_fixed_json_format() {
    let out = run(&["build", "--gens", "a,b", "--alphabet", "a,b", "--quiet", "--json"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(
        text.trim(),
        r#"{"alphabet":["a","b"],"base":0,"vertices":[0],"edges":[{"id":0,"from":0,"to":0,"label":0},{"id":1,"from":0,"to":0,"label":1}]}"#
    );
}

#[test]
fn build_analyze_and_export_round_trip() {
    let graph = tmp("g.json");
    let dot = tmp("g.dot");
    let out = run(&[
        "build",
        "--gens",
        "abAB,ABab",
        "--alphabet",
        "a,b",
        "--json",
        graph.to_str().unwrap(),
        "--dot",
        dot.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let stdout = String::from_utf8(out.stdout).unwrap();
    assert!(stdout.contains("rank 2"), "{stdout}");

    let out = run(&["analyze", "--h", graph.to_str().unwrap()]);
    assert!(out.status.success());
    let stdout = String::from_utf8(out.stdout).unwrap();
    assert!(stdout.contains("chi -1"), "{stdout}");

    let out = run(&["export-dot", "--h", graph.to_str().unwrap()]);
    assert!(out.status.success());
    let stdout = String::from_utf8(out.stdout).unwrap();
    assert_eq!(stdout.matches("->").count(), 8);
    assert_eq!(stdout, std::fs::read_to_string(&dot).unwrap());

    let _ = std::fs::remove_file(graph);
    let _ = std::fs::remove_file(dot);
}

#[test]
fn intersect_writes_a_report() {
    let h = tmp("h.json");
    let k = tmp("k.json");
    let report = tmp("report.json");
    assert!(run(&["build", "--gens", "a", "--alphabet", "a,b", "--json", h.to_str().unwrap()])
        .status
        .success());
    assert!(run(&["build", "--gens", "aa", "--alphabet", "a,b", "--json", k.to_str().unwrap()])
        .status
        .success());
    let out = run(&[
        "intersect",
        "--h",
        h.to_str().unwrap(),
        "--k",
        k.to_str().unwrap(),
        "--report",
        report.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let doc: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&report).unwrap()).unwrap();
    assert_eq!(doc["actual_rank"], 1);
    assert_eq!(doc["all_satisfied"], true);
    for p in [h, k, report] {
        let _ = std::fs::remove_file(p);
    }
}

#[test]
fn check_echelon_golden() {
    let out = run(&["check-echelon", "--gens", "ab,aacb,ce", "--basis", "a,b,c,d,e"]);
    assert!(out.status.success());
    let stdout = String::from_utf8(out.stdout).unwrap();
    assert!(stdout.contains("echelon form: true"), "{stdout}");

    let out = run(&["check-echelon", "--gens", "ab,ba", "--basis", "a,b"]);
    assert!(out.status.success());
    assert!(String::from_utf8(out.stdout).unwrap().contains("echelon form: false"));
}

#[test]
fn bridge_line_verdicts() {
    let line = tmp("line.json");
    std::fs::write(&line, r#"{"left":"a","mid":"bbab","marked":1,"right":"a"}"#).unwrap();
    let out = run(&[
        "bridge-line",
        "--line",
        line.to_str().unwrap(),
        "--alphabet",
        "a,b",
        "--order",
        "a,b",
        "--ranking",
        "3,2,0,1",
    ]);
    assert!(out.status.success());
    assert!(String::from_utf8(out.stdout).unwrap().contains("bridge at marked middle position 1"));

    std::fs::write(&line, r#"{"left":"b","mid":"ab","marked":0,"right":"a"}"#).unwrap();
    let out = run(&["bridge-line", "--line", line.to_str().unwrap(), "--alphabet", "a,b"]);
    assert!(out.status.success());
    assert!(String::from_utf8(out.stdout).unwrap().contains("no maximum"));
    let _ = std::fs::remove_file(line);
}

#[test]
fn harness_reports_are_byte_identical_across_runs() {
    let r1 = tmp("report1.json");
    let r2 = tmp("report2.json");
    for r in [&r1, &r2] {
        let out = run(&[
            "harness",
            "--seed",
            "11",
            "--trials",
            "12",
            "--report",
            r.to_str().unwrap(),
            "--quiet",
        ]);
        assert!(out.status.success(), "harness run failed");
    }
    let a = std::fs::read(&r1).unwrap();
    let b = std::fs::read(&r2).unwrap();
    assert_eq!(a, b, "fixed-seed reports must be byte-identical");
    let _ = std::fs::remove_file(r1);
    let _ = std::fs::remove_file(r2);
}

#[test]
fn usage_errors_exit_one() {
    let out = run(&["build", "--gens", "a"]); // missing --alphabet
    assert_eq!(out.status.code(), Some(1));

    let out = run(&["no-such-command"]);
    assert_eq!(out.status.code(), Some(1));

    let out = run(&["analyze", "--h", "/nonexistent/graph.json"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8(out.stderr).unwrap().contains("error"));
}

#[test]
fn help_exits_zero() {
    let out = run(&["--help"]);
    assert_eq!(out.status.code(), Some(0));
    let stdout = String::from_utf8(out.stdout).unwrap();
    for sub in [
        "build",
        "intersect",
        "analyze",
        "check-inert",
        "check-compressed",
        "deflate",
        "inflate",
        "essential",
        "check-echelon",
        "check-generalized-echelon",
        "bridge-line",
        "harness",
        "export-dot",
    ] {
        assert!(stdout.contains(sub), "missing subcommand {sub} in help");
    }
}

#[test]
fn check_inert_refutes_and_reports_json() {
    let h = tmp("h3.json");
    assert!(run(&[
        "build",
        "--gens",
        "aa,ab,bb",
        "--alphabet",
        "a,b",
        "--json",
        h.to_str().unwrap(),
        "--quiet"
    ])
    .status
    .success());
    let out = bin()
        .args(["check-inert", "--h", h.to_str().unwrap(), "--budget-edges", "3", "--trials", "0"])
        .args(["--quiet", "--json"])
        .output()
        .unwrap();
    assert!(out.status.success());
    let doc: serde_json::Value =
        serde_json::from_str(String::from_utf8(out.stdout).unwrap().trim()).unwrap();
    assert_eq!(doc["verdict"], "refuted");
    assert_eq!(doc["witness_rank"], 2);
    assert_eq!(doc["intersection_rank"], 3);
    let _ = std::fs::remove_file(h);
}
