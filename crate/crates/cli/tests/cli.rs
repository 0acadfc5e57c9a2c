use std::process::{Command, Output};

use renner::PartialPerm;
use serde_json::Value;

fn renner(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_renner")).args(args).output().expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = renner(args);
    assert_eq!(out.status.code(), Some(0), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

fn code(args: &[&str]) -> Option<i32> {
    renner(args).status.code()
}

fn fixture(name: &str) -> String {
    std::fs::read_to_string(format!("{}/tests/fixtures/{name}", env!("CARGO_MANIFEST_DIR"))).unwrap()
}

#[test]
fn descent_table_matches_fixture() {
    assert_eq!(stdout(&["table", "descents"]), fixture("descents.tsv"));
    assert_eq!(stdout(&["table", "descents", "--format", "tsv"]), fixture("descents.tsv"));
}

#[test]
fn length2_table_matches_fixture() {
    assert_eq!(stdout(&["table", "length2"]), fixture("length2.tsv"));
}

#[test]
fn table_json_has_one_record_per_row() {
    let v: Value = serde_json::from_str(&stdout(&["table", "descents", "--format", "json"])).unwrap();
    assert_eq!(v.as_array().unwrap().len(), 5);
    let v: Value = serde_json::from_str(&stdout(&["table", "length2", "--format", "json"])).unwrap();
    assert_eq!(v[0]["shape"], "linear");
    assert_eq!(v[1]["rpoly"], "(q-1)^2");
}

#[test]
fn unknown_table_is_a_usage_error() {
    assert_eq!(code(&["table", "bogus"]), Some(2));
}

#[test]
fn rpoly_examples() {
    let out = stdout(&["rpoly", "0001", "0003"]);
    assert!(out.starts_with("R = q^2 - q\n"), "{out}");
    assert!(out.contains("mu = 0\n") && out.contains("shape = linear\n"));
    let out = stdout(&["rpoly", "0012", "0023"]);
    assert!(out.starts_with("R = q^2 - 2q + 1\n"), "{out}");
    assert!(out.contains("mu = 1\n") && out.contains("shape = diamond\n"));
    let out = stdout(&["rpoly", "[0,4,2,0]", "(0420)"]);
    assert!(out.starts_with("R = 1\n") && out.contains("mu = 1\n"), "{out}");
}

#[test]
fn rpoly_of_incomparable_pair_is_zero() {
    let out = stdout(&["rpoly", "0023", "0012"]);
    assert!(out.starts_with("R = 0\n") && out.contains("shape = incomparable\n"), "{out}");
}

#[test]
fn rpoly_across_orbits_is_a_usage_error() {
    assert_eq!(code(&["rpoly", "0001", "0012"]), Some(2));
    assert_eq!(code(&["rpoly", "0001", "00012"]), Some(2));
    assert_eq!(code(&["rpoly", "0001", "0003", "--n", "3"]), Some(2));
    assert_eq!(code(&["rpoly", "0011", "0003"]), Some(2));
}

#[test]
fn rpoly_json_round_trips() {
    let v: Value = serde_json::from_str(&stdout(&["rpoly", "0001", "0003", "--format", "json"])).unwrap();
    let theta: PartialPerm = serde_json::from_value(v["theta"].clone()).unwrap();
    assert_eq!(theta.to_string(), "0001");
    assert_eq!(v["rpoly"]["coeffs"], serde_json::json!([0, -1, 1]));
    assert_eq!(v["mobius"], 0);
}

#[test]
fn mobius_command_reports_both_computations() {
    assert_eq!(stdout(&["mobius", "0012", "0023"]), "mu = 1\nR(0) = 1\n");
    assert_eq!(stdout(&["mobius", "0001", "0003"]), "mu = 0\nR(0) = 0\n");
}

#[test]
fn descents_command() {
    let out = stdout(&["descents", "3002"]);
    assert_eq!(out, "length = 5\nstandard form = (3214)e(1342)\nDes_L = {s1,s2}\nDes_R = {s1}\n");
}

#[test]
fn order_command() {
    assert_eq!(stdout(&["order", "0001", "0003"]), "0001 < 0003\n");
    assert_eq!(stdout(&["order", "0003", "0001"]), "0003 > 0001\n");
    assert_eq!(stdout(&["order", "0012", "1234"]), "0012 < 1234\n");
    assert_eq!(stdout(&["order", "0023", "1200"]), "0023 and 1200 are incomparable\n");
}

fn dot_counts(dot: &str) -> (usize, usize) {
    let nodes = dot.lines().filter(|l| l.contains("[label=")).count();
    let edges = dot.lines().filter(|l| l.contains("->")).count();
    (nodes, edges)
}

#[test]
fn hasse_examples() {
    assert_eq!(dot_counts(&stdout(&["hasse", "0001", "0003"])), (3, 2));
    assert_eq!(dot_counts(&stdout(&["hasse", "0012", "0023", "--format", "dot"])), (4, 4));
    assert_eq!(dot_counts(&stdout(&["hasse", "0012", "0012"])), (1, 0));
    assert_eq!(dot_counts(&stdout(&["hasse", "--n", "2", "--k", "1"])), (4, 4));
    assert_eq!(code(&["hasse", "0012"]), Some(2));
}

#[test]
fn orbit_listing() {
    assert_eq!(stdout(&["orbit", "--n", "2", "--k", "1"]).lines().count(), 4);
    assert_eq!(stdout(&["orbit", "--n", "4", "--k", "0"]).lines().count(), 1);
    let v: Value = serde_json::from_str(&stdout(&["orbit", "--n", "4", "--k", "2", "--format", "json"])).unwrap();
    let rows = v.as_array().unwrap();
    assert_eq!(rows.len(), 72);
    assert_eq!(rows[0]["element"]["one_line"], serde_json::json!([0, 0, 1, 2]));
    for r in rows {
        let p: PartialPerm = serde_json::from_value(r["element"].clone()).unwrap();
        assert_eq!(p.rank(), 2);
    }
    let tsv = stdout(&["orbit", "--n", "3", "--k", "2", "--format", "tsv"]);
    assert_eq!(tsv.lines().count(), 19);
    assert_eq!(code(&["orbit", "--n", "3"]), Some(2));
    assert_eq!(code(&["orbit", "--n", "3", "--k", "4"]), Some(2));
    assert_eq!(code(&["orbit", "--n", "9", "--k", "1"]), Some(2));
}

#[test]
fn output_is_deterministic() {
    for args in [
        &["orbit", "--n", "4", "--k", "2", "--format", "json"][..],
        &["hasse", "--n", "3", "--k", "2"],
        &["verify", "putcha", "--n", "3"],
        &["table", "length2"],
    ] {
        assert_eq!(stdout(args), stdout(args), "{args:?}");
    }
}

#[test]
fn out_flag_writes_a_file() {
    let path = std::env::temp_dir().join(format!("renner-cli-test-{}.tsv", std::process::id()));
    let out = renner(&["table", "descents", "--out", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    assert_eq!(std::fs::read_to_string(&path).unwrap(), fixture("descents.tsv"));
    std::fs::remove_file(path).unwrap();
}

#[test]
fn verify_exit_codes() {
    assert_eq!(code(&["verify", "putcha", "--n", "4"]), Some(0));
    assert_eq!(code(&["verify", "delta", "--n", "3"]), Some(0));
    assert_eq!(code(&["verify", "all", "--n", "9"]), Some(2));
    assert_eq!(code(&["verify", "all", "--n", "5"]), Some(2));
    assert_eq!(code(&["verify", "nothing"]), Some(2));
}

#[test]
fn verify_json_reports() {
    let v: Value = serde_json::from_str(&stdout(&["verify", "lifting", "--n", "3", "--format", "json"])).unwrap();
    let r = &v[0];
    assert_eq!(r["suite"], "lifting");
    assert!(r["checked"].as_u64().unwrap() > 0);
    assert_eq!(r["violations"], serde_json::json!([]));
    assert!(r["runtime_ms"].is_u64());
}
