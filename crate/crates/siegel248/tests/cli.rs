//! Exit-code and robustness contract of the command-line front end:
//! 0 success, 1 verification failure, 2 usage/input error, never a
//! panic on malformed input.

use std::path::Path;
use std::process::Command;

fn run(dir: &Path, args: &[&str]) -> std::process::Output {
    Command::new(env!("CARGO_BIN_EXE_siegel248"))
        .args(args)
        .current_dir(dir)
        .output()
        .unwrap()
}

#[test]
fn expand_writes_file_and_exits_zero() {
    let dir = tempfile::tempdir().unwrap();
    let out = run(dir.path(), &["expand", "--form", "g4", "--prec", "24", "--out", "t"]);
    assert_eq!(out.status.code(), Some(0));
    let text = std::fs::read_to_string(dir.path().join("t.g4.expansion.json")).unwrap();
    assert!(text.contains("\"scale\": 4"));
    assert!(out.stdout.is_empty(), "expand stdout must stay machine-usable");
}

#[test]
fn expand_negative_prec_is_usage_error() {
    let dir = tempfile::tempdir().unwrap();
    let out = run(dir.path(), &["expand", "--form", "g4", "--prec=-5", "--out", "t"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn expand_custom_without_factors_is_usage_error() {
    let dir = tempfile::tempdir().unwrap();
    let out = run(dir.path(), &["expand", "--form", "custom", "--prec", "24", "--out", "t"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn expand_malformed_factor_file_is_usage_error_not_panic() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(dir.path().join("bad.factors"), "8:not,a,characteristic\n").unwrap();
    let out = run(
        dir.path(),
        &["expand", "--form", "custom", "--factors", "bad.factors", "--prec", "24", "--out", "t"],
    );
    assert_eq!(out.status.code(), Some(2));
    assert!(!String::from_utf8_lossy(&out.stderr).contains("panicked"));
}

#[test]
fn expand_odd_characteristic_gives_empty_term_list() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(dir.path().join("odd.factors"), "# odd characteristic\n1:1,0,1,0\n").unwrap();
    let out = run(
        dir.path(),
        &["expand", "--form", "custom", "--factors", "odd.factors", "--prec", "24", "--out", "t"],
    );
    assert_eq!(out.status.code(), Some(0));
    let text = std::fs::read_to_string(dir.path().join("t.custom.expansion.json")).unwrap();
    assert!(text.contains("\"terms\": []"));
}

#[test]
fn hecke_insufficient_precision_is_exit_two_naming_bound() {
    let dir = tempfile::tempdir().unwrap();
    let out = run(
        dir.path(),
        &["hecke", "--form", "g4", "--prec", "12", "--primes", "3", "--out", "t"],
    );
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("need at least"), "stderr: {err}");
}

#[test]
fn hecke_even_prime_is_usage_error() {
    let dir = tempfile::tempdir().unwrap();
    let out = run(
        dir.path(),
        &["hecke", "--form", "g4", "--prec", "72", "--primes", "4", "--out", "t"],
    );
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn hecke_g4_p3_consistent_report() {
    let dir = tempfile::tempdir().unwrap();
    let out = run(
        dir.path(),
        &["hecke", "--form", "g4", "--prec", "72", "--primes", "3", "--out", "t"],
    );
    assert_eq!(out.status.code(), Some(0));
    let text = std::fs::read_to_string(dir.path().join("t.g4.hecke.p3.json")).unwrap();
    assert!(text.contains("\"consistent\": true"));
    assert!(text.contains("\"eigenvalue\": \"216\""));
    assert!(text.contains("\"rep_normalization\""));
}

#[test]
fn hecke_g1_p3_zero_eigenvalue() {
    let dir = tempfile::tempdir().unwrap();
    let out = run(
        dir.path(),
        &["hecke", "--form", "g1", "--prec", "72", "--primes", "3", "--out", "t"],
    );
    assert_eq!(out.status.code(), Some(0));
    let text = std::fs::read_to_string(dir.path().join("t.g1.hecke.p3.json")).unwrap();
    assert!(text.contains("\"consistent\": true"));
    assert!(text.contains("\"eigenvalue\": \"0\""));
}

#[test]
fn predict_csv_has_table_header() {
    let dir = tempfile::tempdir().unwrap();
    let out = run(
        dir.path(),
        &["predict", "--primes", "3,5", "--format", "csv", "--out", "t"],
    );
    assert_eq!(out.status.code(), Some(0));
    let text = std::fs::read_to_string(dir.path().join("t.predict.csv")).unwrap();
    assert!(text.starts_with("form,p,coefficient,calibration\n"));
    assert!(text.contains("uncalibrated"));
}

#[test]
fn verify_without_calibration_primes_is_usage_error() {
    let dir = tempfile::tempdir().unwrap();
    let out = run(
        dir.path(),
        &["verify", "--form", "g4", "--prec", "200", "--primes", "7", "--out", "t"],
    );
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn verify_small_sweep_matches() {
    let dir = tempfile::tempdir().unwrap();
    let out = run(
        dir.path(),
        &["verify", "--form", "g4", "--prec", "200", "--primes", "3,5", "--out", "t"],
    );
    assert_eq!(out.status.code(), Some(0));
    let text = std::fs::read_to_string(dir.path().join("t.verify.json")).unwrap();
    assert!(text.contains("\"all_match\": true"));
    let cal = std::fs::read_to_string(dir.path().join("t.calibration.txt")).unwrap();
    assert!(cal.contains("nu 3"));
    let table = String::from_utf8_lossy(&out.stdout);
    assert!(table.contains("g4 p=3: measured 216 predicted 216 -> match"));
}

#[test]
fn selftest_passes() {
    let dir = tempfile::tempdir().unwrap();
    let out = run(dir.path(), &["selftest"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.contains("T(3) g4 eigenform: ok"));
}
