use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use limid_cli::{DiagramDocument, ResultDocument};

fn data(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/data").join(name)
}

fn limid(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_limid")).args(args).output().expect("binary runs")
}

fn path_str(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn result(out: &Output) -> ResultDocument {
    serde_json::from_slice(&out.stdout).expect("result document")
}

#[test]
fn trivial_solve_prints_result_and_exits_zero() {
    let out = limid(&["solve", path_str(&data("trivial.json"))]);
    assert_eq!(out.status.code(), Some(0));
    let r = result(&out);
    assert_eq!(r.eu, 5.0);
    assert_eq!(r.status, "proven");
    assert_eq!(r.strategy["d"][""], 0);
}

#[test]
fn exit_code_matrix() {
    let dir = tempfile::tempdir().unwrap();
    let bad_json = dir.path().join("bad.json");
    std::fs::write(&bad_json, "{ not json").unwrap();
    let unknown_key = dir.path().join("unknown.json");
    std::fs::write(&unknown_key, r#"{"nodes": [], "cpts": {}, "utilities": {}, "colour": 1}"#).unwrap();
    let bad_row = dir.path().join("row.json");
    std::fs::write(
        &bad_row,
        r#"{"nodes": [{"name": "c", "kind": "chance", "domain": 2},
                      {"name": "u", "kind": "utility", "parents": ["c"]}],
            "cpts": {"c": [0.7, 0.7]}, "utilities": {"u": [1, 2]}}"#,
    )
    .unwrap();

    for (path, key) in [(&bad_json, "line"), (&unknown_key, "colour"), (&bad_row, "`c`")] {
        let out = limid(&["solve", path_str(path)]);
        assert_eq!(out.status.code(), Some(1), "{path:?}");
        let err = String::from_utf8_lossy(&out.stderr);
        assert!(err.contains("error:") && err.contains(key), "{err}");
        assert!(out.stdout.is_empty());
    }
    let missing = limid(&["solve", "/nonexistent/diagram.json"]);
    assert_eq!(missing.status.code(), Some(1));
    let bad_flag = limid(&["solve", path_str(&data("bridge_attack.json")), "--search", "sideways"]);
    assert_eq!(bad_flag.status.code(), Some(1));

    let ebo = dir.path().join("ebo.json");
    assert_eq!(limid(&["ebo", "-o", path_str(&ebo)]).status.code(), Some(0));
    let stopped = limid(&["solve", path_str(&ebo), "--node-limit", "3", "--no-timing"]);
    assert_eq!(stopped.status.code(), Some(2));
    let r = result(&stopped);
    assert_eq!(r.status, "stopped");
    assert!(r.eu <= r.upper_bound.unwrap() + 1e-9);
    assert!(r.gap_percent.unwrap() > 0.0);

    let spu_stopped = limid(&["spu", path_str(&data("coordination.json")), "--max-sweeps", "0"]);
    assert_eq!(spu_stopped.status.code(), Some(2));
}

#[test]
fn solve_output_reevaluates_to_same_eu() {
    let dir = tempfile::tempdir().unwrap();
    for name in ["bridge_attack.json", "separable.json", "coordination.json"] {
        let out = limid(&["solve", path_str(&data(name)), "--no-timing"]);
        assert_eq!(out.status.code(), Some(0));
        let saved = dir.path().join("result.json");
        std::fs::write(&saved, &out.stdout).unwrap();
        let eu = limid(&["eu", path_str(&data(name)), path_str(&saved)]);
        assert_eq!(eu.status.code(), Some(0));
        let v: serde_json::Value = serde_json::from_slice(&eu.stdout).unwrap();
        assert!((v["eu"].as_f64().unwrap() - result(&out).eu).abs() < 1e-6, "{name}");

        let brute = result(&limid(&["brute", path_str(&data(name))]));
        assert!((brute.eu - result(&out).eu).abs() < 1e-6, "{name}");
    }
}

#[test]
fn separable_spu_matches_solve() {
    let spu = result(&limid(&["spu", path_str(&data("separable.json"))]));
    let exact = result(&limid(&["solve", path_str(&data("separable.json"))]));
    assert!((spu.eu - exact.eu).abs() < 1e-9);
    assert_eq!(spu.upper_bound, None);
    assert_eq!(spu.status, "converged");
}

#[test]
fn export_lp_lists_four_binaries_for_bridge_attack() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("bridge_attack.lp");
    assert_eq!(limid(&["export-lp", path_str(&data("bridge_attack.json")), "-o", path_str(&out)]).status.code(), Some(0));
    let text = std::fs::read_to_string(&out).unwrap();
    let binaries: Vec<&str> = text.split("Binaries\n").nth(1).unwrap().lines().take_while(|l| *l != "End").collect();
    assert_eq!(binaries.len(), 4, "{binaries:?}");
    assert!(!text.contains("-0.0000000000000000e0"));
    let trivial = limid(&["export-lp", path_str(&data("trivial.json"))]);
    assert_eq!(trivial.status.code(), Some(0));
}

#[test]
fn generated_files_are_identical_and_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.json");
    let b = dir.path().join("b.json");
    for p in [&a, &b] {
        let out = limid(&["gen-random", "--total", "10", "--decisions", "3", "--seed", "1", "-o", path_str(p)]);
        assert_eq!(out.status.code(), Some(0));
    }
    let text = std::fs::read_to_string(&a).unwrap();
    assert_eq!(text, std::fs::read_to_string(&b).unwrap());
    let doc = DiagramDocument::parse(&text).unwrap();
    let diagram = doc.to_diagram().unwrap();
    assert_eq!(DiagramDocument::from_diagram(&diagram), doc);

    let infeasible = limid(&["gen-random", "--total", "3", "--decisions", "2"]);
    assert_eq!(infeasible.status.code(), Some(1));
}

#[test]
fn bench_writes_named_reports() {
    let dir = tempfile::tempdir().unwrap();
    let args = ["bench", "--spec", "8x2", "--trials", "2", "--seed", "4", "--no-timing", "-o", path_str(dir.path())];
    let first = limid(&args);
    assert_eq!(first.status.code(), Some(0));
    let tsv = dir.path().join("bench_t8d2u2s4_n2.tsv");
    let json = dir.path().join("bench_t8d2u2s4_n2.json");
    assert_eq!(std::fs::read_to_string(&tsv).unwrap().as_bytes(), first.stdout.as_slice());
    let report: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&json).unwrap()).unwrap();
    assert_eq!(report["rows"].as_array().unwrap().len(), 2);
    assert_eq!(limid(&args).stdout, first.stdout);
}

#[test]
fn unknown_mapping_is_an_input_error() {
    let out = limid(&["ebo", "--mapping", "nope"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("default"));
}
