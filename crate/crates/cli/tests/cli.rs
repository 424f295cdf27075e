use std::path::Path;
use std::process::Command;

use normgrid::format::{get_f64, points_from_json};
use serde_json::Value;

fn run_in(dir: &Path, args: &[&str]) -> i32 {
    let mut argv = vec!["normgrid".to_string(), "--out".into(), dir.display().to_string()];
    argv.extend(args.iter().map(|s| s.to_string()));
    normgrid::run(argv)
}

fn read(dir: &Path, name: &str) -> Value {
    serde_json::from_str(&std::fs::read_to_string(dir.join(name)).unwrap()).unwrap()
}

fn bin(args: &[&str], threads: &str) -> (i32, Vec<u8>) {
    let out = Command::new(env!("CARGO_BIN_EXE_normgrid"))
        .args(args)
        .env("NORMGRID_THREADS", threads)
        .output()
        .unwrap();
    (out.status.code().unwrap_or(-1), out.stdout)
}

#[test]
fn l2_on_canonical_grid_is_exact() {
    let dir = tempfile::tempdir().unwrap();
    assert_eq!(run_in(dir.path(), &["certify", "l2", "--space", "box:2", "--points", "grid"]), 0);
    let c = read(dir.path(), "certificate.json");
    assert!((get_f64(&c["C1"]).unwrap() - 1.0).abs() <= 1e-12);
    assert!((get_f64(&c["C2"]).unwrap() - 1.0).abs() <= 1e-12);
    assert_eq!(c["method"], "eigen_exact");
    assert_eq!(c["config"]["command"], "certify l2");
}

#[test]
fn empty_set_has_dispersion_one() {
    let dir = tempfile::tempdir().unwrap();
    let empty = dir.path().join("empty.json");
    std::fs::write(&empty, r#"{"dim": 2, "frame": "cube", "points": []}"#).unwrap();
    let code = run_in(dir.path(), &["universal", "dispersion", "--points", empty.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert_eq!(get_f64(&read(dir.path(), "dispersion_report.json")["dispersion"]).unwrap(), 1.0);
}

#[test]
fn tchakaloff_sincos() {
    let dir = tempfile::tempdir().unwrap();
    let code = run_in(dir.path(), &["exact", "tchakaloff", "--space", "trig:1:sincos", "--grid", "64"]);
    assert_eq!(code, 0);
    let p = points_from_json(&read(dir.path(), "points.json")).unwrap();
    let w = p.weights.unwrap();
    assert!(p.points.len() <= 2);
    assert!(w.iter().all(|&x| x > 0.0));
    // Both functions have zero mean, so the residual is the weighted sum itself.
    let m = read(dir.path(), "points.json")["meta"]["moment_residual"].clone();
    assert!(get_f64(&m).unwrap() <= 1e-8);
}

#[test]
fn tchakaloff_probability_rule() {
    let dir = tempfile::tempdir().unwrap();
    let code = run_in(dir.path(), &["exact", "tchakaloff", "--space", "box:2", "--probability"]);
    assert_eq!(code, 0);
    let p = points_from_json(&read(dir.path(), "points.json")).unwrap();
    let w = p.weights.unwrap();
    assert!(w.len() <= 6);
    assert!(w.iter().all(|&x| x >= -1e-12));
    assert!((w.iter().sum::<f64>() - 1.0).abs() <= 1e-10);
}

#[test]
fn unknown_subcommand_exits_one() {
    assert_eq!(normgrid::run(["normgrid", "frobnicate"]), 1);
    assert_eq!(normgrid::run(["normgrid", "certify", "l2", "--space", "ball:3", "--points", "grid"]), 1);
    assert_eq!(normgrid::run(["normgrid", "--help"]), 0);
}

#[test]
fn below_threshold_exits_two() {
    let dir = tempfile::tempdir().unwrap();
    // Three points cannot norm a five-dimensional space.
    assert_eq!(run_in(dir.path(), &["certify", "l2", "--space", "box:2", "--points", "random:3"]), 2);
    let code = run_in(
        dir.path(),
        &["random", "sample", "--space", "box:2", "--m", "8", "--eps", "0.01"],
    );
    assert_eq!(code, 2);
}

#[test]
fn greedy_output_round_trips_into_certify() {
    let dir = tempfile::tempdir().unwrap();
    assert_eq!(run_in(dir.path(), &["greedy", "oga", "--space", "box:1,1"]), 0);
    let trace = read(dir.path(), "greedy_trace.json");
    let it = trace["iterations"].as_u64().unwrap();
    assert!(it <= 45);
    let pts = dir.path().join("points.json");
    let sub = dir.path().join("cert");
    let code = run_in(&sub, &["certify", "l2", "--space", "box:1,1", "--points", pts.to_str().unwrap(), "--eps", "1e-6"]);
    assert_eq!(code, 0);
    let c = read(&sub, "certificate.json");
    assert!((get_f64(&c["C1"]).unwrap() - 1.0).abs() <= 1e-6);
}

#[test]
fn points_file_round_trips_bitwise() {
    let dir = tempfile::tempdir().unwrap();
    assert_eq!(run_in(dir.path(), &["hypercross", "build", "--n", "4", "--d", "2"]), 0);
    let path = dir.path().join("points.json");
    let text = std::fs::read_to_string(&path).unwrap();
    let p = points_from_json(&serde_json::from_str(&text).unwrap()).unwrap();
    let again = normgrid::format::to_json_string(&normgrid::format::points_json(
        &p.points,
        None,
        &[],
        Some(read(dir.path(), "points.json")["meta"].clone()),
    ));
    assert_eq!(text, again);
}

#[test]
fn csv_format() {
    let dir = tempfile::tempdir().unwrap();
    assert_eq!(run_in(dir.path(), &["--format", "csv", "greedy", "rga", "--space", "box:1", "--m", "9"]), 0);
    let csv = std::fs::read_to_string(dir.path().join("points.csv")).unwrap();
    let mut lines = csv.lines();
    assert_eq!(lines.next(), Some("x1,weight"));
    assert_eq!(lines.count(), 9);
    assert!(dir.path().join("greedy_trace.json").exists());
}

#[test]
fn thread_count_does_not_change_output() {
    let cases: [&[&str]; 3] = [
        &["universal", "collection", "--n", "2", "--d", "2", "--points", "random:40", "--q", "1", "--probes", "20"],
        &["hypercross", "verify", "--n", "4", "--d", "2", "--seeds", "4", "--trials", "30"],
        &["extremal", "sidon", "--n", "7", "--verify-up-to", "40"],
    ];
    for args in cases {
        let (c1, a) = bin(args, "1");
        let (c3, b) = bin(args, "3");
        assert_eq!(c1, 0);
        assert_eq!(c1, c3);
        assert_eq!(a, b, "{args:?}");
    }
}

#[test]
fn seed_changes_random_output() {
    let args = |s: &'static str| ["--seed", s, "random", "sample", "--space", "box:1", "--m", "12"];
    let (_, a) = bin(&args("1"), "2");
    let (_, b) = bin(&args("1"), "2");
    let (_, c) = bin(&args("2"), "2");
    assert_eq!(a, b);
    assert_ne!(a, c);
}
