//! Acceptance gate: one pass/fail line per criterion, with timings.
//! Run with `cargo test --test acceptance -- --nocapture` to see the report.

use std::process::Command;
use std::time::{Duration, Instant};

use qtknots::cli;
use qtknots::shuffle::{sym_presentation_check, SlopeData};

fn args(rest: &[&str]) -> Vec<String> {
    std::iter::once("qtknots")
        .chain(rest.iter().copied())
        .map(String::from)
        .collect()
}

fn report(name: &str, limit: Duration, f: impl FnOnce() -> bool) {
    let start = Instant::now();
    let ok = f();
    let elapsed = start.elapsed();
    let within = elapsed <= limit;
    println!(
        "{}: {name} ({elapsed:.2?})",
        if ok && within { "PASS" } else { "FAIL" }
    );
    assert!(ok, "{name}: checks failed");
    assert!(within, "{name}: {elapsed:?} exceeded the {limit:?} budget");
}

#[test]
fn criterion_1_appendix_golden_suite() {
    report(
        "criterion 1: appendix golden sums",
        Duration::from_secs(5),
        || cli::run(args(&["verify", "--suite", "appendix"])) == 0,
    );
}

#[test]
fn criterion_2_dual_formula_agreement() {
    report(
        "criterion 2: dual-formula agreement and catalan-cuspidal relation (n<=4, m<=9)",
        Duration::from_secs(60),
        || {
            cli::run(args(&[
                "verify",
                "--suite",
                "prop-pa",
                "--max-n",
                "4",
                "--max-m",
                "9",
            ])) == 0
        },
    );
}

#[test]
fn criterion_3_prefix_identity() {
    report(
        "criterion 3: theta-xi prefix identity for all tableaux (n<=6)",
        Duration::from_secs(30),
        || {
            cli::run(args(&[
                "verify",
                "--suite",
                "prefix-identity",
                "--max-n",
                "6",
            ])) == 0
        },
    );
}

#[test]
fn criterion_4_macdonald_suite() {
    report(
        "criterion 4: macdonald conditions, positivity, conjugation (n<=5)",
        Duration::from_secs(20),
        || cli::run(args(&["verify", "--suite", "macdonald", "--max-n", "5"])) == 0,
    );
}

#[test]
fn criterion_5_catalan_identities() {
    report(
        "criterion 5: q,t-catalan identities (n<=4, m<=7)",
        Duration::from_secs(60),
        || {
            cli::run(args(&[
                "verify",
                "--suite",
                "catalan",
                "--max-n",
                "4",
                "--max-m",
                "7",
            ])) == 0
        },
    );
}

#[test]
fn criterion_6_knot_suite() {
    report(
        "criterion 6: superpolynomial positivity, mn-symmetry, catalan consistency",
        Duration::from_secs(120),
        || cli::run(args(&["verify", "--suite", "symmetry"])) == 0,
    );
}

#[test]
fn criterion_7_presentation_equality() {
    report(
        "criterion 7: randomized presentation equality (20 trials, seed 0)",
        Duration::from_secs(30),
        || {
            let mut ok = true;
            for n in [2u64, 3] {
                for m in 1..=7u64 {
                    if num::integer::gcd(m, n) != 1 {
                        continue;
                    }
                    let s = SlopeData::new(m, n).unwrap();
                    ok &= sym_presentation_check(s, 20, 0).unwrap();
                }
            }
            ok
        },
    );
}

#[test]
fn criterion_8_performance_gate() {
    let dir = tempfile::tempdir().unwrap();
    let hhh = |timed: bool| {
        let out = Command::new(env!("CARGO_BIN_EXE_qtknots"))
            .args(["hhh", "--m", "6", "--n", "5", "--cache-dir"])
            .arg(dir.path())
            .output()
            .unwrap();
        assert!(out.status.success() || !timed);
        out.status.success()
    };
    hhh(false); // warm the on-disk cache
    report(
        "criterion 8: hhh --m 6 --n 5 with a warm cache",
        Duration::from_secs(60),
        || hhh(true),
    );
}
