//! End-to-end tests of the qtknots binary: golden output, exit codes,
//! deterministic JSON reports, and cache transparency.

use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn qtknots(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qtknots"))
        .args(args)
        .output()
        .unwrap()
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

/// Parses a JSON run report and blanks the wall-clock field, the one part of
/// the report that may vary between runs.
fn report_sans_timing(out: &Output) -> Value {
    let mut v: Value = serde_json::from_str(&stdout(out)).unwrap();
    v["meta"]["elapsed_ms"] = Value::from(0);
    v
}

#[test]
fn qtcatalan_golden_output() {
    let out = qtknots(&["qtcatalan", "--m", "3", "--n", "4", "--method", "shuffle"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out), "t^3 + q*t + q*t^2 + q^2*t + q^3\n");
}

#[test]
fn hhh_normalized_json_a0() {
    let out = qtknots(&["hhh", "--m", "3", "--n", "2", "--normalize", "--json"]);
    assert!(out.status.success());
    let v = report_sans_timing(&out);
    assert_eq!(v["command"], "hhh");
    assert_eq!(v["result"]["a0"], "t + q^2");
    assert_eq!(v["result"]["superpolynomial"], "t + q^2 + a*q");
    assert_eq!(v["meta"]["seed"], 0);
}

#[test]
fn json_reports_are_deterministic() {
    for args in [
        vec!["coeffs", "--m", "3", "--n", "2", "--json"],
        vec!["macdonald", "--n", "3", "--json"],
        vec!["verify", "--suite", "appendix", "--json"],
        vec!["syt", "--shape", "2,1", "--json"],
    ] {
        let a = qtknots(&args);
        let b = qtknots(&args);
        assert!(a.status.success(), "{args:?}");
        assert_eq!(
            report_sans_timing(&a),
            report_sans_timing(&b),
            "{args:?} not deterministic"
        );
    }
}

#[test]
fn exit_codes() {
    assert_eq!(qtknots(&["qtcatalan", "--m", "3", "--n", "4"]).status.code(), Some(0));
    // usage errors: missing flag, unknown flag, non-coprime slope
    assert_eq!(qtknots(&["qtcatalan", "--m", "3"]).status.code(), Some(2));
    assert_eq!(qtknots(&["qtcatalan", "--frob", "1"]).status.code(), Some(2));
    assert_eq!(qtknots(&["hhh", "--m", "4", "--n", "2"]).status.code(), Some(2));
    assert_eq!(qtknots(&["--help"]).status.code(), Some(0));
}

#[test]
fn verify_prints_seed() {
    let out = qtknots(&["verify", "--suite", "appendix", "--seed", "7"]);
    assert!(out.status.success());
    assert!(stdout(&out).starts_with("seed: 7\n"));
}

#[test]
fn tableaux_counts() {
    let out = qtknots(&["syt", "--shape", "2,1", "--json"]);
    let v = report_sans_timing(&out);
    assert_eq!(v["result"]["count"], 2);
    let out = qtknots(&["asyt", "--shape", "2,1", "--json"]);
    let v = report_sans_timing(&out);
    assert_eq!(v["result"]["count"], 3);
}

#[test]
fn cache_is_semantically_invisible() {
    let dir = tempfile::tempdir().unwrap();
    let cache = dir.path().to_str().unwrap();
    let cold = qtknots(&["hhh", "--m", "4", "--n", "3", "--json"]);
    let writing = qtknots(&["hhh", "--m", "4", "--n", "3", "--json", "--cache-dir", cache]);
    assert!(Path::new(cache).join("macdonald_n3.json").exists());
    let warm = qtknots(&["hhh", "--m", "4", "--n", "3", "--json", "--cache-dir", cache]);
    let strip = |o: &Output| {
        let mut v = report_sans_timing(o);
        v["params"] = Value::Null; // cache-dir is the one expected difference
        v
    };
    assert_eq!(strip(&cold)["result"], strip(&writing)["result"]);
    assert_eq!(strip(&cold), strip(&warm));

    // a corrupt cache file behaves like a miss
    std::fs::write(Path::new(cache).join("macdonald_n3.json"), b"{not json").unwrap();
    let corrupt = qtknots(&["hhh", "--m", "4", "--n", "3", "--json", "--cache-dir", cache]);
    assert_eq!(strip(&cold)["result"], strip(&corrupt)["result"]);
}
