use std::path::Path;
use std::process::{Command, Output};

fn wbasis(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_wbasis")).args(args).output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    assert!(out.status.success(), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn read_csv_matrix(path: &Path) -> Vec<Vec<f64>> {
    std::fs::read_to_string(path)
        .unwrap()
        .lines()
        .map(|l| l.split(',').map(|v| v.parse().unwrap()).collect())
        .collect()
}

#[test]
fn dmat_bounded_laguerre_square() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("d2.csv");
    let out = wbasis(&["dmat", "--family", "laguerre", "--alpha", "2", "--s", "2", "--out", csv.to_str().unwrap()]);
    stdout(&out);
    let m = read_csv_matrix(&csv);
    assert_eq!(m.len(), 100);
    assert!(m.iter().all(|r| r.len() == 100));
    let meta: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(csv.with_extension("json")).unwrap()).unwrap();
    let max_abs = meta["max_abs"].as_f64().unwrap();
    assert!(max_abs.is_finite() && max_abs > 0.0);
    assert_eq!(meta["s"], 2);
    assert_eq!(meta["family"]["kind"], "laguerre");
}

#[test]
fn dmat_verify_skew() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("d1.csv");
    let out = wbasis(&["dmat", "--family", "ultraspherical", "--alpha", "1", "--s", "1", "--verify", "--out", csv.to_str().unwrap()]);
    stdout(&out);
    let m = read_csv_matrix(&csv);
    for i in 0..m.len() {
        for j in 0..m.len() {
            assert_eq!(m[i][j], -m[j][i]);
        }
    }
}

#[test]
fn config_errors_exit_2() {
    let out = wbasis(&["dmat", "--family", "laguerre", "--alpha", "2", "--s", "0"]);
    assert_eq!(out.status.code(), Some(2));
    let out = wbasis(&["dmat", "--family", "laguerre", "--alpha", "-3"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("-1"));
    let out = wbasis(&["expand", "--family", "laguerre", "--alpha", "2", "--func", "us1"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn matvec_zero_size() {
    let text = stdout(&wbasis(&["matvec", "--family", "laguerre", "--alpha", "2", "--M", "0", "--N", "0"]));
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines, ["index,h", "0,0.0000000000000000e0"]);
}

#[test]
fn matvec_is_deterministic_and_verified() {
    let args = ["matvec", "--family", "laguerre", "--alpha", "2", "--M", "32", "--N", "64", "--seed", "7", "--verify"];
    let a = stdout(&wbasis(&args));
    let b = stdout(&wbasis(&args));
    assert_eq!(a, b);
    assert_eq!(a.lines().count(), 34);
}

#[test]
fn separability_konoplev() {
    let text = stdout(&wbasis(&["separability", "--family", "konoplev", "--alpha", "1", "--gamma", "0", "--format", "json"]));
    let v: serde_json::Value = serde_json::from_str(&text).unwrap();
    assert_eq!(v["verdict"], "non-separable");
    let iota = v["iota_check_3_0"].as_f64().unwrap();
    assert!((iota - 5.91608).abs() < 1e-5, "{iota}");
}

#[test]
fn errplot_us1_decreases_to_floor() {
    let text = stdout(&wbasis(&["errplot", "--family", "ultraspherical", "--alpha", "2", "--func", "us1", "--N", "4,6,8,10,12"]));
    let logs: Vec<f64> = text.lines().skip(1).map(|l| l.split(',').nth(7).unwrap().parse().unwrap()).collect();
    assert_eq!(logs.len(), 5);
    assert!(logs.windows(2).all(|w| w[1] < w[0]), "{logs:?}");
}

#[test]
fn table45_shape() {
    let text = stdout(&wbasis(&["table45", "--format", "json"]));
    let v: serde_json::Value = serde_json::from_str(&text).unwrap();
    let errors = v["errors"].as_array().unwrap();
    assert_eq!(errors.len(), 3);
    let big = errors[2][0].as_f64().unwrap();
    assert!((big / 5.319e11 - 1.0).abs() < 1e-3, "{big}");
}
