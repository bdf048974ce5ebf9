use std::process::{Command, Output};

use freecurve_core::syzygy::CertificateJson;
use freecurve_core::{fixture, verify_syzygy, Field, SyzygyTriple};
use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_freecurve"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn json(args: &[&str]) -> Value {
    let mut all = vec!["--json"];
    all.extend_from_slice(args);
    let out = run(&all);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("valid json")
}

#[test]
fn analyze_reports_a_free_arrangement() {
    let v = json(&["analyze", "ex1"]);
    assert_eq!(v["class"], "free");
    assert_eq!(v["d"], 6);
    assert_eq!(v["mdr"], 2);
    assert_eq!(v["tau"], 19);
    assert_eq!(v["exponents"], serde_json::json!([2, 3]));
    assert_eq!(v["primes"].as_array().unwrap().len(), 3);
}

#[test]
fn certificate_survives_a_round_trip() {
    let v = json(&["analyze", "ex1"]);
    let cert: CertificateJson = serde_json::from_value(v["certificate"].clone()).unwrap();
    let f = fixture("ex1").unwrap().f;
    let s = SyzygyTriple::from_json(&cert, Field::Rational, f.degree()).unwrap();
    assert!(verify_syzygy(&f, &s).unwrap());
    // A damaged certificate must not verify.
    let mut bad = cert.clone();
    bad.a = format!("{} + y^2", cert.a);
    let s = SyzygyTriple::from_json(&bad, Field::Rational, f.degree()).unwrap();
    assert!(!verify_syzygy(&f, &s).unwrap());
}

#[test]
fn output_is_deterministic_for_a_seed() {
    let a = run(&["--json", "--seed", "7", "analyze", "ex14ii:5"]);
    let b = run(&["--json", "--seed", "7", "analyze", "ex14ii:5"]);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn bad_input_exits_with_one() {
    let out = run(&["analyze", "nope"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("nope"));
    let out = run(&["analyze", "x*y + z"]);
    assert_eq!(out.status.code(), Some(1));
    let out = run(&["arrangement", "lattice", "smooth-quartic"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn lattice_of_the_fermat_arrangement() {
    let v = json(&["arrangement", "lattice", "ex5"]);
    assert_eq!(v["counts"]["3"], 12);
    assert_eq!(v["counts"].as_object().unwrap().len(), 1);
    assert_eq!(v["max_multiplicity"], 3);
}

#[test]
fn wedge_syzygy_of_a_fermat_pencil() {
    let v = json(&["pencil", "syzygy", "fermat:5"]);
    assert_eq!(v["certificate"]["degree"], 8);
    assert_eq!(v["verified"], true);
    assert_eq!(v["primitive"], true);
}

#[test]
fn suite_filter_selects_by_id() {
    let v = json(&["suite", "--filter", "1"]);
    let ids: Vec<u64> = v["criteria"]
        .as_array()
        .unwrap()
        .iter()
        .map(|r| r["id"].as_u64().unwrap())
        .collect();
    assert_eq!(ids, vec![1]);
}

#[test]
fn corrupted_criterion_is_named_in_the_failure() {
    let out = run(&["suite", "--filter", "4", "--corrupt", "4"]);
    assert_eq!(out.status.code(), Some(1));
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.lines().any(|l| l.starts_with("FAIL [ 4]")), "{text}");
}

#[test]
fn fixtures_are_listed() {
    let out = run(&["fixtures"]);
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.lines().any(|l| l == "ex12ii"));
}
