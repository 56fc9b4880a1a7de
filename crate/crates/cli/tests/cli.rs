use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn fixture(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures").join(name).display().to_string()
}

fn pi1(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_pi1")).args(args).output().expect("runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&out.stdout)))
}

#[test]
fn validate_reports_violations() {
    let ok = pi1(&["validate", &fixture("nodal_p1.json")]);
    assert_eq!(ok.status.code(), Some(0));
    assert_eq!(json(&ok)["valid"], true);
    let bad = pi1(&["validate", &fixture("invalid.json")]);
    assert_eq!(bad.status.code(), Some(1));
    let codes: Vec<String> = json(&bad)["violations"].as_array().unwrap().iter().map(|v| v["code"].as_str().unwrap().to_string()).collect();
    assert!(codes.contains(&"BAD_CHARACTERISTIC".to_string()), "{codes:?}");
}

#[test]
fn invariants_of_theta_graph() {
    let out = pi1(&["invariants", &fixture("theta.json")]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!((v["delta"].as_u64(), v["affine_delta"].as_u64(), v["pro_p_rank"].as_u64()), (Some(2), Some(3), Some(2)));
}

#[test]
fn realizable_modes() {
    let out = pi1(&["realizable", &fixture("nodal_affine.json"), "--group", "C3", "--char", "2"]);
    assert_eq!(
        String::from_utf8(out.stdout).unwrap().trim(),
        r#"{"verdict":"Yes","evidence":{"p_part_order":1,"quotient_d":1,"bound":1},"rule":"abhyankar-affine"}"#
    );
    let out = pi1(&["realizable", &fixture("theta.json"), "--group", &fixture("c3_cubed.json"), "--char", "3"]);
    assert_eq!(json(&out)["verdict"], "No");
    let tame = pi1(&["realizable", &fixture("nodal_affine.json"), "--group", "C3", "--char", "2", "--mode", "tame"]);
    assert_eq!(tame.status.code(), Some(0));
    assert_eq!(json(&tame)["rule"], "tame");
    let mismatch = pi1(&["realizable", &fixture("theta.json"), "--group", "C2", "--char", "5"]);
    assert_eq!(mismatch.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&mismatch.stderr).contains("CHARACTERISTIC_MISMATCH"));
}

#[test]
fn glue_script_builds_s3_cover() {
    let out = pi1(&["glue", &fixture("glue_s3.json")]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let v = json(&out);
    assert_eq!((v["connected"].as_bool(), v["galois"].as_bool()), (Some(true), Some(true)));
    assert_eq!(v["cover"]["ramification"][0]["inertia"], serde_json::json!([[2, 1, 3]]));
    assert_eq!(v["cover"]["config"]["identifications"].as_array().unwrap().len(), 2);
}

#[test]
fn enumerate_and_census() {
    let out = pi1(&["enumerate", &fixture("theta.json"), "--group", "S3"]);
    let v = json(&out);
    assert_eq!((v["tuples"].as_u64(), v["connected"].as_u64()), (Some(36), Some(18)));
    let census = pi1(&["enumerate", &fixture("nodal_p1.json"), "--max-order", "6"]);
    let v = json(&census);
    let names: Vec<&str> = v.as_array().unwrap().iter().map(|e| e["name"].as_str().unwrap()).collect();
    assert_eq!(names, ["C1", "C2", "C3", "C4", "C5", "C6"]);
}

#[test]
fn dot_output() {
    let out = pi1(&["export-dot", &fixture("theta.json")]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("graph configuration {"));
    assert_eq!(text.matches(" -- ").count(), 3);
    let cover = pi1(&["export-dot", &fixture("transposition.cover.json")]);
    assert!(String::from_utf8(cover.stdout).unwrap().starts_with("graph cover {"));
}

#[test]
fn selftest_is_seeded_and_thread_independent() {
    let a = pi1(&["selftest", "--seed", "5", "--max-order", "6", "--configs", "20"]);
    let b = pi1(&["selftest", "--seed", "5", "--max-order", "6", "--configs", "20", "--jobs", "1"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(json(&a)["passed"], true);
}

#[test]
fn exit_codes() {
    assert_eq!(pi1(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(pi1(&["realizable", &fixture("theta.json")]).status.code(), Some(2));
    let missing = pi1(&["invariants", "/nonexistent/config.json"]);
    assert_eq!(missing.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&missing.stderr).starts_with("error[IO_ERROR]"));
    let unknown = pi1(&["enumerate", &fixture("nodal_p1.json"), "--group", "NoSuchGroup"]);
    assert!(String::from_utf8_lossy(&unknown.stderr).contains("UNKNOWN_GROUP"));
}
