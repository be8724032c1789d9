use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use tempfile::TempDir;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_ofdmim-slm"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn ccdf(dir: &Path, name: &str, extra: &[&str]) -> (Output, String) {
    let out = dir.join(name);
    let mut args = vec!["ccdf", "--trials", "9000", "--seed", "42", "--out", out.to_str().unwrap()];
    args.extend_from_slice(extra);
    let result = run(&args);
    let csv = fs::read_to_string(&out).unwrap_or_default();
    (result, csv)
}

#[test]
fn version_flag() {
    let out = run(&["--version"]);
    assert!(out.status.success());
    assert!(String::from_utf8_lossy(&out.stdout).starts_with("ofdmim-slm "));
}

#[test]
fn same_seed_gives_identical_files() {
    let dir = TempDir::new().unwrap();
    let flags = ["--u", "4", "--pss", "random", "--perm", "random"];
    let (a, csv_a) = ccdf(dir.path(), "a.csv", &flags);
    let (b, csv_b) = ccdf(dir.path(), "b.csv", &flags);
    assert!(a.status.success() && b.status.success());
    assert_eq!(csv_a, csv_b);
    assert!(csv_a.starts_with("gamma_db,ccdf,count,trials\n"));
    assert_eq!(csv_a.lines().count(), 92);
    let json_a = fs::read_to_string(dir.path().join("a.json")).unwrap();
    let json_b = fs::read_to_string(dir.path().join("b.json")).unwrap();
    assert_eq!(json_a, json_b);
    let echo: serde_json::Value = serde_json::from_str(&json_a).unwrap();
    assert_eq!(echo["seed"], 42);
    assert_eq!(echo["trials"], 9000);
    assert_eq!(echo["gamma_step_db"], 0.1);
}

#[test]
fn worker_count_does_not_change_output() {
    let dir = TempDir::new().unwrap();
    let outputs: Vec<String> = ["1", "2", "8"]
        .iter()
        .map(|w| ccdf(dir.path(), &format!("w{w}.csv"), &["--perm", "random", "--workers", w]).1)
        .collect();
    assert!(!outputs[0].is_empty());
    assert_eq!(outputs[0], outputs[1]);
    assert_eq!(outputs[0], outputs[2]);
}

#[test]
fn different_seeds_differ() {
    let dir = TempDir::new().unwrap();
    let (_, a) = ccdf(dir.path(), "a.csv", &[]);
    let out = dir.path().join("b.csv");
    run(&["ccdf", "--trials", "9000", "--seed", "43", "--out", out.to_str().unwrap()]);
    assert_ne!(a, fs::read_to_string(out).unwrap());
}

#[test]
fn original_scheme_rejects_slm_flags() {
    let dir = TempDir::new().unwrap();
    for flags in [&["--u", "2"][..], &["--pss", "random"], &["--perm", "identity"]] {
        let mut args = vec!["--scheme", "original"];
        args.extend_from_slice(flags);
        let (out, _) = ccdf(dir.path(), "o.csv", &args);
        assert_eq!(out.status.code(), Some(2), "{flags:?}");
    }
    let (out, csv) = ccdf(dir.path(), "o.csv", &["--scheme", "original"]);
    assert!(out.status.success());
    let echo: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(dir.path().join("o.json")).unwrap()).unwrap();
    assert_eq!(echo["u"], 1);
    assert_eq!(echo["perm"], "identity");
    assert!(!csv.is_empty());
}

#[test]
fn invalid_configuration_exits_2() {
    let dir = TempDir::new().unwrap();
    for flags in [
        &["--n-fft", "48"][..],
        &["--active", "16"],
        &["--group-size", "5"],
        &["--mod-order", "3"],
        &["--gamma-min", "9", "--gamma-max", "4"],
        &["--oversample", "3"],
        &["--pss", "pinned"],
    ] {
        let (out, _) = ccdf(dir.path(), "x.csv", flags);
        assert_eq!(out.status.code(), Some(2), "{flags:?}");
        assert!(!out.stderr.is_empty());
    }
}

#[test]
fn unwritable_output_exits_3() {
    let dir = TempDir::new().unwrap();
    let out = dir.path().join("missing").join("x.csv");
    let result = run(&["ccdf", "--trials", "10", "--out", out.to_str().unwrap()]);
    assert_eq!(result.status.code(), Some(3));
}

#[test]
fn pinned_sets_reproduce_generated_ones() {
    let dir = TempDir::new().unwrap();
    let pss = dir.path().join("pss.json");
    let perm = dir.path().join("perm.json");
    assert!(run(&["gen-pss", "--pss", "hadamard", "--u", "4", "--out", pss.to_str().unwrap()]).status.success());
    assert!(run(&["gen-perm", "--perm", "identity", "--u", "4", "--out", perm.to_str().unwrap()]).status.success());
    let (_, generated) = ccdf(dir.path(), "g.csv", &["--pss", "hadamard"]);
    let (out, pinned) = ccdf(
        dir.path(),
        "p.csv",
        &["--pss", "pinned", "--pss-file", pss.to_str().unwrap(), "--perm", "pinned", "--perm-file", perm.to_str().unwrap()],
    );
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    assert_eq!(generated, pinned);
}

#[test]
fn analyze_perm_identity_is_n_minus_one() {
    let out = run(&["analyze-perm", "--perm", "identity", "--u", "3"]);
    assert!(out.status.success());
    let report: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(report["pairs"].as_array().unwrap().len(), 3);
    assert!((report["mean_mu"].as_f64().unwrap() - 63.0).abs() < 1e-9);
}

#[test]
fn analyze_perm_random_is_below_identity() {
    let out = run(&["analyze-perm", "--perm", "random", "--u", "2", "--seed", "7"]);
    let report: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert!(report["max_mu"].as_f64().unwrap() < 63.0);
}

#[test]
fn analyze_perm_rejects_malformed_files() {
    let dir = TempDir::new().unwrap();
    let bad = dir.path().join("bad.json");
    let mut map: Vec<usize> = (0..64).collect();
    map[1] = 0;
    let doc = serde_json::json!({"kind": "explicit", "n_fft": 64, "groups": 4, "perms": [map, (0..64).collect::<Vec<_>>()]});
    fs::write(&bad, doc.to_string()).unwrap();
    assert_eq!(run(&["analyze-perm", "--perm-file", bad.to_str().unwrap()]).status.code(), Some(2));
    fs::write(&bad, "not json").unwrap();
    assert_eq!(run(&["analyze-perm", "--perm-file", bad.to_str().unwrap()]).status.code(), Some(2));
}

fn spectrum_rows(stdout: &[u8]) -> Vec<Vec<f64>> {
    String::from_utf8_lossy(stdout)
        .lines()
        .skip(1)
        .map(|l| l.split(',').map(|f| f.parse().unwrap()).collect())
        .collect()
}

#[test]
fn analyze_pss_identical_pair_is_a_delta() {
    let out = run(&["analyze-pss", "--pss", "random", "--pair", "1,1"]);
    assert!(out.status.success());
    let rows = spectrum_rows(&out.stdout);
    assert_eq!(rows.len(), 64);
    assert!((rows[0][1] - 1.0).abs() < 1e-12);
    assert!(rows[1..].iter().all(|r| r[1].abs() < 1e-12));
}

#[test]
fn analyze_pss_punctured_random_pair_is_bounded() {
    let out = run(&["analyze-pss", "--pss", "random", "--pair", "0,1", "--random-sap", "--seed", "3"]);
    assert!(out.status.success());
    assert!(String::from_utf8_lossy(&out.stderr).contains("c = "));
    for r in spectrum_rows(&out.stdout) {
        assert!(r[1] <= 1.0 && r[2] <= 1.0);
        assert!(r[2] <= r[3] + 1e-12);
    }
}

#[test]
fn analyze_pss_length_mismatch_exits_2() {
    let dir = TempDir::new().unwrap();
    let pss = dir.path().join("pss.json");
    run(&["gen-pss", "--n-fft", "32", "--group-size", "8", "--u", "3", "--out", pss.to_str().unwrap()]);
    let out = run(&["analyze-pss", "--pss", "pinned", "--pss-file", pss.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn verify_var_rho_table() {
    let out = run(&["verify-var-rho", "--trials", "100000", "--lags", "1,16"]);
    assert!(out.status.success());
    let text = String::from_utf8_lossy(&out.stdout);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "m,analytic,empirical,rel_error");
    let first: Vec<&str> = lines[1].split(',').collect();
    assert_eq!(first[1], "1.16666667e-1");
    assert!(first[3].parse::<f64>().unwrap() < 0.05);
    assert_eq!(lines[2], "16,0.00000000e0,0.00000000e0,nan");
}
