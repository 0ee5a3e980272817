use std::process::{Command, Output};

use serde_json::Value;

fn horadam(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_horadam")).args(args).output().unwrap()
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

#[test]
fn poly_at_zero_with_oracle() {
    let out = horadam(&["poly", "--family", "chebyshev2", "--x", "0", "--n", "3", "--oracle"]);
    assert!(out.status.success());
    let text = stdout(&out);
    let rows: Vec<Vec<&str>> = text.lines().skip(1).map(|l| l.split('\t').collect()).collect();
    let values: Vec<f64> = rows.iter().map(|r| r[1].parse().unwrap()).collect();
    assert_eq!(values, [1.0, 0.0, -1.0]);
    for r in &rows {
        assert_eq!(r[1].parse::<f64>().unwrap(), r[2].parse::<f64>().unwrap());
        assert_eq!(r[3].parse::<f64>().unwrap(), 0.0);
    }
}

#[test]
fn poly_fibonacci_numbers() {
    let out = horadam(&["poly", "--params", "1,1,1,1", "--x", "1", "--n", "8"]);
    let values: Vec<f64> = stdout(&out).lines().skip(1).map(|l| l.split('\t').nth(1).unwrap().parse().unwrap()).collect();
    assert_eq!(values, [1.0, 1.0, 2.0, 3.0, 5.0, 8.0, 13.0, 21.0]);
}

#[test]
fn bounds_reports_vacuous_denominator() {
    let out = horadam(&["bounds", "--class", "sstar", "--alpha", "0", "--params", "3,1.5,1.5,0", "--x", "0.5", "--nu", "0"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("|a2| <= unbounded (vacuous)"), "{text}");
    assert!(text.contains("|a3| <= 0.9375"), "{text}");
}

#[test]
fn bounds_json_has_one_report_per_nu() {
    let out = horadam(&["bounds", "--class", "mocanu", "--alpha", "0.5", "--family", "fibonacci", "--x", "0.5", "--nu", "0,1,3", "--json"]);
    assert!(out.status.success());
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    let reports = v["reports"].as_array().unwrap();
    assert_eq!(reports.len(), 3);
    assert_eq!(v["spec"]["kind"], "mocanu");
    for r in reports {
        assert_eq!(r["a2_bound"], reports[0]["a2_bound"]);
        assert!(r["fs_bound"].as_f64().unwrap() > 0.0);
    }
}

#[test]
fn bounds_rejects_alpha_out_of_range() {
    let out = horadam(&["bounds", "--class", "mocanu", "--alpha", "1.5", "--family", "pell", "--x", "0.2"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("alpha"));
}

#[test]
fn verify_rejects_zero_trials() {
    let out = horadam(&["verify", "--class", "sstar", "--family", "lucas", "--x", "0.3", "--trials", "0"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn verify_writes_report() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("report.json");
    let out = horadam(&[
        "verify",
        "--class",
        "alpha-blend",
        "--alpha",
        "0.3",
        "--family",
        "pell",
        "--x",
        "0.25",
        "--trials",
        "3000",
        "--seed",
        "5",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let report: horadam_core::VerifyReport = serde_json::from_slice(&std::fs::read(&path).unwrap()).unwrap();
    assert_eq!(report.trials, 3000);
    assert_eq!(report.seed, 5);
    assert!(report.certified());
}

#[test]
fn reduce_passes_and_lists_every_corollary() {
    let out = horadam(&["reduce", "--grid-size", "6"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("Mocanu α=1 vs bi-convex (Horadam)"));
    assert_eq!(text.lines().count(), 8);

    let out = horadam(&["reduce", "--grid-size", "6", "--json"]);
    let rows: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert!(rows.to_string().contains("alpha-blend-t"));
}

#[test]
fn sweep_csv_round_trips() {
    let out = horadam(&[
        "sweep",
        "--class",
        "alpha-blend",
        "--family",
        "chebyshev2",
        "--x",
        "0.4",
        "--var",
        "alpha",
        "--lo",
        "0",
        "--hi",
        "1",
        "--steps",
        "5",
    ]);
    assert!(out.status.success());
    let mut reader = csv::Reader::from_reader(out.stdout.as_slice());
    let headers: Vec<String> = reader.headers().unwrap().iter().map(str::to_string).collect();
    assert_eq!(headers, ["sweep_var", "value", "a2_bound", "a3_bound", "nu", "fs_bound", "fs_branch", "denom"]);
    let rows: Vec<csv::StringRecord> = reader.records().map(Result::unwrap).collect();
    assert_eq!(rows.len(), 5);
    let alphas: Vec<f64> = rows.iter().map(|r| r[1].parse().unwrap()).collect();
    assert_eq!(alphas, [0.0, 0.25, 0.5, 0.75, 1.0]);
    // a₂ grows monotonically towards the starlike end
    let a2: Vec<f64> = rows.iter().map(|r| r[2].parse().unwrap()).collect();
    assert!(a2.windows(2).all(|w| w[0] < w[1]));
}

#[test]
fn sweep_json_to_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("sweep.json");
    let out = horadam(&[
        "sweep",
        "--class",
        "sstar",
        "--family",
        "fibonacci",
        "--var",
        "nu",
        "--lo",
        "-1",
        "--hi",
        "3",
        "--steps",
        "9",
        "--format",
        "json",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let rows: Value = serde_json::from_slice(&std::fs::read(&path).unwrap()).unwrap();
    let rows = rows.as_array().unwrap();
    assert_eq!(rows.len(), 9);
    assert_eq!(rows[4]["value"], 1.0);
    assert_eq!(rows[4]["fs_branch"], "inner");
}
