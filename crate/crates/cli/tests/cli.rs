use std::fs;
use std::path::{Path, PathBuf};

use psd_approx_cli::mm::{read_matrix_market, MmMatrix};
use psd_approx_cli::run;
use serde_json::Value;
use tempfile::TempDir;

struct Out {
    code: i32,
    stdout: String,
    stderr: String,
}

fn cli(args: &[&str]) -> Out {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let code = run(std::iter::once("psd-approx").chain(args.iter().copied()), &mut out, &mut err);
    Out {
        code,
        stdout: String::from_utf8(out).unwrap(),
        stderr: String::from_utf8(err).unwrap(),
    }
}

fn write(dir: &Path, name: &str, text: &str) -> PathBuf {
    let p = dir.join(name);
    fs::write(&p, text).unwrap();
    p
}

const ID3: &str = "%%MatrixMarket matrix array real symmetric\n3 3\n1\n0\n0\n1\n0\n1\n";
const INDEF2: &str = "%%MatrixMarket matrix coordinate real symmetric\n2 2 3\n1 1 1\n2 1 2\n2 2 1\n";

fn real(text: &str) -> psd_approx::HermitianMatrix<f64> {
    match read_matrix_market(text.as_bytes()).unwrap() {
        MmMatrix::Real(a) => a,
        MmMatrix::Complex(_) => panic!("complex output"),
    }
}

fn json(path: &Path) -> Value {
    serde_json::from_str(&fs::read_to_string(path).unwrap()).unwrap()
}

#[test]
fn approx_identity_is_unchanged() {
    let dir = TempDir::new().unwrap();
    let input = write(dir.path(), "id3.mtx", ID3);
    let report = dir.path().join("r.json");
    let o = cli(&["approx", "--input", input.to_str().unwrap(), "--pivot-min", "1e-8", "--json", report.to_str().unwrap()]);
    assert_eq!(o.code, 0, "{}", o.stderr);
    assert_eq!(real(&o.stdout), psd_approx::HermitianMatrix::identity(3));
    let r = json(&report);
    assert_eq!(r["schema"], 1);
    assert_eq!(r["err_fro"], 0.0);
    assert_eq!(r["strategy"], "max-d");
    assert_eq!(r["definiteness"], "positive-definite");
    assert_eq!(r["bounds"]["pivot_max"], "inf");
    assert_eq!(r["bounds"]["diag_min"][0], "-inf");
}

#[test]
fn approx_correlation_repair() {
    let dir = TempDir::new().unwrap();
    let input = write(dir.path(), "indef2.mtx", INDEF2);
    let out = dir.path().join("b.mtx");
    let report = dir.path().join("r.json");
    let o = cli(&[
        "approx", "--input", input.to_str().unwrap(), "--diag-fixed", "1", "--pivot-min", "1e-6",
        "--output", out.to_str().unwrap(), "--json", report.to_str().unwrap(), "--oracle",
    ]);
    assert_eq!(o.code, 0, "{}", o.stderr);
    let b = real(&fs::read_to_string(&out).unwrap());
    for i in 0..2 {
        for j in 0..2 {
            assert!((b[(i, j)] - 1.0).abs() < 1e-6);
        }
    }
    let r = json(&report);
    assert_eq!(r["definiteness"], "positive-definite");
    assert!((r["oracle_error"].as_f64().unwrap() - 1.0).abs() < 1e-12);
}

#[test]
fn approx_writes_factor_files() {
    let dir = TempDir::new().unwrap();
    let input = write(dir.path(), "indef2.mtx", INDEF2);
    let prefix = dir.path().join("f");
    let o = cli(&["approx", "--input", input.to_str().unwrap(), "--factors", prefix.to_str().unwrap(), "--strategy", "natural"]);
    assert_eq!(o.code, 0, "{}", o.stderr);
    assert!(o.stderr.contains("err_fro"));
    assert_eq!(fs::read_to_string(dir.path().join("f.p.txt")).unwrap(), "1\n2\n");
    let l = fs::read_to_string(dir.path().join("f.L.mtx")).unwrap();
    assert!(l.starts_with("%%MatrixMarket matrix array real general\n2 2\n"));
    for suffix in ["d", "omega", "delta"] {
        assert!(dir.path().join(format!("f.{suffix}.txt")).exists());
    }
}

#[test]
fn diagonal_bounds_from_file() {
    let dir = TempDir::new().unwrap();
    let input = write(dir.path(), "id3.mtx", ID3);
    let lo = write(dir.path(), "lo.txt", "2\n2\n2\n");
    let o = cli(&["approx", "--input", input.to_str().unwrap(), "--diag-min", lo.to_str().unwrap()]);
    assert_eq!(o.code, 0, "{}", o.stderr);
    let b = real(&o.stdout);
    assert!((0..3).all(|i| b[(i, i)] >= 2.0));
    let short = write(dir.path(), "short.txt", "2\n");
    let o = cli(&["approx", "--input", input.to_str().unwrap(), "--diag-min", short.to_str().unwrap()]);
    assert_eq!(o.code, 2);
}

#[test]
fn infeasible_bounds_exit_two() {
    let dir = TempDir::new().unwrap();
    let input = write(dir.path(), "id3.mtx", ID3);
    let o = cli(&["approx", "--input", input.to_str().unwrap(), "--diag-min", "2", "--diag-max", "1"]);
    assert_eq!(o.code, 2);
    assert!(o.stderr.contains("infeasible"), "{}", o.stderr);
}

#[test]
fn exit_codes_per_error_class() {
    let dir = TempDir::new().unwrap();
    let missing = dir.path().join("missing.mtx");
    assert_eq!(cli(&["approx", "--input", missing.to_str().unwrap()]).code, 1);
    let bad = write(dir.path(), "bad.mtx", "%%MatrixMarket matrix coordinate real general\n2 2 1\n1 3 5.0\n");
    let o = cli(&["approx", "--input", bad.to_str().unwrap()]);
    assert_eq!(o.code, 2);
    assert!(o.stderr.contains("line 3"));
    let nonherm = write(dir.path(), "nh.mtx", "%%MatrixMarket matrix array real general\n2 2\n1\n2\n3\n1\n");
    assert_eq!(cli(&["certify", "--input", nonherm.to_str().unwrap()]).code, 2);
    let input = write(dir.path(), "id3.mtx", ID3);
    assert_eq!(cli(&["approx", "--input", input.to_str().unwrap(), "--strategy", "fastest"]).code, 2);
    assert_eq!(cli(&["approx", "--input", input.to_str().unwrap(), "--epsilon", "0"]).code, 2);
    assert_eq!(cli(&["frobnicate"]).code, 2);
    assert_eq!(cli(&["--help"]).code, 0);
    // overflowing entries break the elimination
    let huge = write(
        dir.path(),
        "huge.mtx",
        "%%MatrixMarket matrix array real symmetric\n3 3\n1e-300\n1e300\n1e300\n1e-300\n1e300\n1e-300\n",
    );
    let o = cli(&["approx", "--input", huge.to_str().unwrap(), "--strategy", "natural", "--epsilon", "1e-310"]);
    assert_eq!(o.code, 3, "{}", o.stderr);
}

#[test]
fn certify_reports_definiteness() {
    let dir = TempDir::new().unwrap();
    let neg = write(dir.path(), "neg.mtx", "%%MatrixMarket matrix coordinate real symmetric\n2 2 2\n1 1 -1\n2 2 -1\n");
    let o = cli(&["certify", "--input", neg.to_str().unwrap()]);
    assert_eq!(o.code, 0);
    assert!(o.stdout.starts_with("positive-semidefinite"), "{}", o.stdout);
    let input = write(dir.path(), "indef2.mtx", INDEF2);
    let o = cli(&["certify", "--input", input.to_str().unwrap(), "--pivot-min", "0.1"]);
    assert!(o.stdout.starts_with("positive-definite"), "{}", o.stdout);
}

#[test]
fn decompose_prints_factors() {
    let dir = TempDir::new().unwrap();
    let input = write(dir.path(), "indef2.mtx", INDEF2);
    let o = cli(&["decompose", "--input", input.to_str().unwrap(), "--strategy", "natural"]);
    assert_eq!(o.code, 0, "{}", o.stderr);
    let v: Value = serde_json::from_str(&o.stdout).unwrap();
    assert_eq!(v["p"], serde_json::json!([1, 2]));
    assert_eq!(v["l"][0], serde_json::json!([1.0]));
    assert_eq!(v["l"][1][1], 1.0);
    assert_eq!(v["d"][0], 1.0);
}

#[test]
fn complex_input_round_trip() {
    let dir = TempDir::new().unwrap();
    let input = write(
        dir.path(),
        "c.mtx",
        "%%MatrixMarket matrix coordinate complex hermitian\n2 2 3\n1 1 2 0\n2 1 1 1\n2 2 3 0\n",
    );
    let o = cli(&["approx", "--input", input.to_str().unwrap()]);
    assert_eq!(o.code, 0, "{}", o.stderr);
    assert!(o.stdout.starts_with("%%MatrixMarket matrix array complex hermitian"));
    let MmMatrix::Complex(b) = read_matrix_market(o.stdout.as_bytes()).unwrap() else { panic!() };
    assert_eq!(b[(1, 0)], num_complex::Complex64::new(1.0, 1.0));
}

#[test]
fn generate_is_deterministic() {
    let a = cli(&["generate", "--kind", "eig", "--n", "6", "--lambda-min", "-1", "--lambda-max", "1e4", "--seed", "7"]);
    let b = cli(&["generate", "--kind", "eig", "--n", "6", "--lambda-min", "-1", "--lambda-max", "1e4", "--seed", "7"]);
    assert_eq!(a.code, 0);
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(real(&a.stdout).n(), 6);
    assert_eq!(cli(&["generate", "--kind", "eig", "--n", "6", "--lambda-min", "1"]).code, 2);
    assert_eq!(cli(&["generate", "--kind", "corr", "--n", "1"]).code, 2);
}

#[test]
fn compare_eigen_scenario() {
    let dir = TempDir::new().unwrap();
    let csv = dir.path().join("t.csv");
    let o = cli(&["compare", "--scenario", "eig:-1e4:1e4", "--n", "10", "--seeds", "5", "--strategy", "max-d", "--csv", csv.to_str().unwrap()]);
    assert_eq!(o.code, 0, "{}", o.stderr);
    let v: Value = serde_json::from_str(&o.stdout).unwrap();
    let rows = v["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 5);
    for r in rows {
        let err = r["err_fro"].as_f64().unwrap();
        assert!(err >= r["oracle_error"].as_f64().unwrap() - 1e-9);
        assert!(r.get("oracle_note").is_none());
    }
    assert_eq!(v["summary"][0]["count"], 5);
    let table = fs::read_to_string(csv).unwrap();
    assert_eq!(table.lines().count(), 6);
}

#[test]
fn compare_clean_correlation_is_unchanged() {
    let o = cli(&["compare", "--scenario", "corr:0", "--n", "8", "--seeds", "4", "--lower-bound", "both"]);
    assert_eq!(o.code, 0, "{}", o.stderr);
    let v: Value = serde_json::from_str(&o.stdout).unwrap();
    assert_eq!(v["rows"].as_array().unwrap().len(), 4 * 3 * 2);
    assert_eq!(v["rows"][0]["oracle_note"], "lower bound, not attainable under unit-diagonal constraint");
    for s in v["summary"].as_array().unwrap() {
        if s["lower_bound"] == "fixed" {
            assert!(s["median_err_fro"].as_f64().unwrap() <= 1e-8);
        }
    }
}

#[test]
fn compare_rejects_bad_arguments() {
    assert_eq!(cli(&["compare", "--scenario", "eig:-1", "--n", "5"]).code, 2);
    assert_eq!(cli(&["compare", "--scenario", "eig:1:2", "--n", "5"]).code, 2);
    assert_eq!(cli(&["compare", "--scenario", "standard", "--strategy", "best"]).code, 2);
    assert_eq!(cli(&["compare"]).code, 2);
}

#[test]
fn compare_input_files() {
    let dir = TempDir::new().unwrap();
    let input = write(dir.path(), "indef2.mtx", INDEF2);
    let o = cli(&["compare", "--inputs", input.to_str().unwrap()]);
    assert_eq!(o.code, 0, "{}", o.stderr);
    let v: Value = serde_json::from_str(&o.stdout).unwrap();
    assert!((v["rows"][0]["oracle_error"].as_f64().unwrap() - 1.0).abs() < 1e-12);
}

#[test]
fn compare_records_breakdowns() {
    let o = cli(&["compare", "--scenario", "corr:0.1", "--n", "50", "--seed", "1010", "--seeds", "1", "--strategy", "natural", "--strategy", "max-d"]);
    assert_eq!(o.code, 0, "{}", o.stderr);
    let v: Value = serde_json::from_str(&o.stdout).unwrap();
    let rows = v["rows"].as_array().unwrap();
    assert!(rows[0]["error"].as_str().unwrap().contains("breakdown"));
    assert_eq!(rows[0]["err_fro"], "nan");
    assert!(rows[1].get("error").is_none());
    let natural = v["summary"].as_array().unwrap().iter().find(|s| s["strategy"] == "natural").unwrap();
    assert_eq!((natural["count"].as_u64(), natural["failures"].as_u64()), (Some(0), Some(1)));
}

#[test]
fn approx_breakdown_exit_three() {
    let dir = TempDir::new().unwrap();
    let path = dir.path().join("c.mtx");
    let g = cli(&["generate", "--kind", "corr", "--n", "50", "--sigma", "0.1", "--seed", "1010", "--output", path.to_str().unwrap()]);
    assert_eq!(g.code, 0);
    let o = cli(&["approx", "--input", path.to_str().unwrap(), "--strategy", "natural", "--diag-fixed", "1", "--pivot-min", "1e-8"]);
    assert_eq!(o.code, 3, "{}", o.stderr);
}
