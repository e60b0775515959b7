use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use le3::landmarks::omega;
use le3::parse_complex;
use serde_json::Value;

fn le3(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_le3"))
        .arg("--out-dir")
        .arg(dir)
        .args(args)
        .env_remove("LE3_OUT_DIR")
        .output()
        .unwrap()
}

fn json_stdout(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap()
}

fn child(doc: &Value, side: &str) -> le3::Complex64 {
    parse_complex(doc[side]["z"].as_str().unwrap()).unwrap()
}

#[test]
fn trisect_equilateral() {
    let dir = tempfile::tempdir().unwrap();
    let out = le3(dir.path(), &["trisect", "--z", "0.5+0.8660254037844386i"]);
    assert_eq!(out.status.code(), Some(0));
    let doc = json_stdout(&out);
    let s3 = 3f64.sqrt();
    let kids: Vec<_> = ["left", "mid", "right"]
        .iter()
        .map(|s| child(&doc, s))
        .collect();
    for want in [
        le3::Complex64::new(1.0 / 14.0, 3.0 * s3 / 14.0),
        le3::Complex64::new(1.0 / 6.0, s3 / 6.0),
    ] {
        assert!(
            kids.iter().any(|k| (k - want).norm() < 1e-12),
            "{want} missing from {kids:?}"
        );
    }
    assert!(doc["left"]["chain"]["magnification"].is_number());
    assert!(dir.path().join("trisect.manifest.json").exists());
}

#[test]
fn trisect_omega1_stays_in_fixed_orbit() {
    let dir = tempfile::tempdir().unwrap();
    let out = le3(
        dir.path(),
        &["trisect", "--z", "0.3333333333333333+0.4714045207910317i"],
    );
    assert_eq!(out.status.code(), Some(0));
    let doc = json_stdout(&out);
    for side in ["left", "mid", "right"] {
        let z = child(&doc, side);
        assert!(
            omega().iter().any(|w| (z - w).norm() < 1e-12),
            "{side}: {z}"
        );
    }
}

#[test]
fn trisect_rejects_points_outside_sigma() {
    let dir = tempfile::tempdir().unwrap();
    let out = le3(dir.path(), &["trisect", "--z", "0.7+0.1i"]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("Re(z) must be <= 1/2"), "{err}");

    let out = le3(dir.path(), &["trisect", "--z", "0.2+oops"]);
    assert_eq!(out.status.code(), Some(2));
    let out = le3(dir.path(), &["trisect"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn simulate_writes_points_in_sigma_and_replays_identically() {
    let dir = tempfile::tempdir().unwrap();
    let args = [
        "simulate",
        "--z",
        "0.2+0.1i",
        "--walkers",
        "200",
        "--steps",
        "300",
        "--seed",
        "7",
        "--out-svg",
        "orbit.svg",
        "--out-json",
        "orbit.json",
    ];
    assert_eq!(le3(dir.path(), &args).status.code(), Some(0));
    let csv = fs::read(dir.path().join("orbit.csv")).unwrap();
    let svg = fs::read(dir.path().join("orbit.svg")).unwrap();
    let points = le3::io::read_orbit_csv(csv.as_slice()).unwrap();
    assert!(!points.is_empty());
    assert!(points.iter().all(|&z| le3::in_sigma(z)));

    let doc: Value =
        serde_json::from_slice(&fs::read(dir.path().join("orbit.json")).unwrap()).unwrap();
    assert_eq!(doc["seed"], 7);
    assert_eq!(doc["points"].as_array().unwrap().len(), points.len());

    let manifest = dir.path().join("simulate.manifest.json");
    let m: Value = serde_json::from_slice(&fs::read(&manifest).unwrap()).unwrap();
    assert_eq!(m["seed"], 7);
    assert_eq!(m["command"], "simulate");

    let other = tempfile::tempdir().unwrap();
    let out = le3(
        other.path(),
        &["replay", "--manifest", manifest.to_str().unwrap()],
    );
    assert_eq!(
        out.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    assert_eq!(fs::read(other.path().join("orbit.csv")).unwrap(), csv);
    assert_eq!(fs::read(other.path().join("orbit.svg")).unwrap(), svg);
}

#[test]
fn simulate_seed_defaults_to_zero() {
    let dir = tempfile::tempdir().unwrap();
    assert!(le3(
        dir.path(),
        &[
            "simulate",
            "--z",
            "0.1+0.1i",
            "--walkers",
            "5",
            "--steps",
            "5"
        ]
    )
    .status
    .success());
    let m: Value =
        serde_json::from_slice(&fs::read(dir.path().join("simulate.manifest.json")).unwrap())
            .unwrap();
    assert_eq!(m["seed"], 0);
}

#[test]
fn simulate_reports_unwritable_output() {
    let dir = tempfile::tempdir().unwrap();
    let blocker = dir.path().join("file");
    fs::write(&blocker, "x").unwrap();
    let out = le3(
        dir.path(),
        &[
            "simulate",
            "--z",
            "0.1+0.1i",
            "--walkers",
            "2",
            "--steps",
            "2",
            "--out-csv",
            "file/orbit.csv",
        ],
    );
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn verify_theorem2_writes_report_csv_and_plot() {
    let dir = tempfile::tempdir().unwrap();
    let out = le3(
        dir.path(),
        &[
            "verify",
            "theorem2",
            "--t-step",
            "1e-4",
            "--out-svg",
            "quotient.svg",
        ],
    );
    assert_eq!(out.status.code(), Some(0));
    let report: Value =
        serde_json::from_slice(&fs::read(dir.path().join("theorem2.json")).unwrap()).unwrap();
    for key in [
        "target",
        "pass",
        "constants",
        "witnesses",
        "tolerances",
        "duration_ms",
    ] {
        assert!(report.get(key).is_some(), "{key}");
    }
    let max = report["constants"]["max_ratio"].as_f64().unwrap();
    assert!(max < 2.1652 && max > 2.165);
    assert!(report["constants"]["argmax_t"].is_number());

    let csv = dir.path().join("quotient.csv");
    let rows = le3::io::read_quotient_csv(fs::File::open(&csv).unwrap()).unwrap();
    assert!(rows.windows(2).all(|w| w[1].ratio >= w[0].ratio));
    assert!((rows.last().unwrap().ratio - max).abs() < 1e-12);

    let out = le3(
        dir.path(),
        &[
            "plot",
            "--input",
            csv.to_str().unwrap(),
            "--kind",
            "quotient-curve",
            "--out-svg",
            "replot.svg",
        ],
    );
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(
        fs::read(dir.path().join("replot.svg")).unwrap(),
        fs::read(dir.path().join("quotient.svg")).unwrap()
    );
}

#[test]
fn verify_theorem1_and_fixed_orbit() {
    let dir = tempfile::tempdir().unwrap();
    assert_eq!(
        le3(dir.path(), &["verify", "theorem1"]).status.code(),
        Some(0)
    );
    let r: Value =
        serde_json::from_slice(&fs::read(dir.path().join("theorem1.json")).unwrap()).unwrap();
    let c = r["constants"]["constant"].as_f64().unwrap();
    assert!(c > 2.6815 && c < 2.6817);

    assert_eq!(
        le3(dir.path(), &["verify", "fixed-orbit"]).status.code(),
        Some(0)
    );
    let r: Value =
        serde_json::from_slice(&fs::read(dir.path().join("fixed-orbit.json")).unwrap()).unwrap();
    assert!(r["constants"]["max_deviation"].as_f64().unwrap() < 1e-12);
    let table = r["witnesses"].as_array().unwrap();
    assert_eq!(table.len(), 3);
    assert!(table
        .iter()
        .all(|row| row["children"].as_array().unwrap().len() == 3));
}

#[test]
fn verify_unknown_target_is_a_usage_error() {
    let dir = tempfile::tempdir().unwrap();
    assert_eq!(
        le3(dir.path(), &["verify", "theorem3"]).status.code(),
        Some(2)
    );
}

#[test]
fn plot_orbit_scatter_counts_markers() {
    let dir = tempfile::tempdir().unwrap();
    let input = dir.path().join("three.csv");
    fs::write(&input, "re,im\n0.1,0.2\n0.3,0.3\n0.4,0.1\n").unwrap();
    let out = le3(
        dir.path(),
        &[
            "plot",
            "--input",
            input.to_str().unwrap(),
            "--kind",
            "orbit-scatter",
            "--out-svg",
            "s.svg",
        ],
    );
    assert_eq!(out.status.code(), Some(0));
    let svg = fs::read_to_string(dir.path().join("s.svg")).unwrap();
    assert_eq!(svg.matches(r#"class="pt""#).count(), 3);
    assert_eq!(svg.matches(r#"class="ref""#).count(), 3);
    assert!(svg.contains("<polyline"));
}

#[test]
fn plot_schema_errors() {
    let dir = tempfile::tempdir().unwrap();
    let empty = dir.path().join("empty.csv");
    fs::write(&empty, "re,im\n").unwrap();
    let out = le3(
        dir.path(),
        &[
            "plot",
            "--input",
            empty.to_str().unwrap(),
            "--kind",
            "orbit-scatter",
        ],
    );
    assert_eq!(out.status.code(), Some(2));
    assert!(!dir.path().join("plot.svg").exists());

    let wrong = dir.path().join("wrong.csv");
    fs::write(&wrong, "re,im\n0.1,0.2\n").unwrap();
    let out = le3(
        dir.path(),
        &[
            "plot",
            "--input",
            wrong.to_str().unwrap(),
            "--kind",
            "quotient-curve",
        ],
    );
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("missing column `t`"));
}

#[test]
fn out_dir_from_environment() {
    let dir = tempfile::tempdir().unwrap();
    let cwd = tempfile::tempdir().unwrap();
    let out = Command::new(env!("CARGO_BIN_EXE_le3"))
        .current_dir(cwd.path())
        .env("LE3_OUT_DIR", dir.path())
        .args(["trisect", "--z", "0.3+0.4i"])
        .output()
        .unwrap();
    assert!(out.status.success());
    assert!(dir.path().join("trisect.manifest.json").exists());
    assert!(!cwd.path().join("trisect.manifest.json").exists());
}

#[test]
fn failed_verification_exits_with_one() {
    let dir = tempfile::tempdir().unwrap();
    let out = le3(
        dir.path(),
        &[
            "verify",
            "bounds-equilateral",
            "--depth",
            "0",
            "--walkers",
            "1",
            "--steps",
            "1",
        ],
    );
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("lower bound not attained"));
    let r: Value =
        serde_json::from_slice(&fs::read(dir.path().join("bounds-equilateral.json")).unwrap())
            .unwrap();
    assert_eq!(r["pass"], false);
    assert!(r["first_failure"].is_string());
}
