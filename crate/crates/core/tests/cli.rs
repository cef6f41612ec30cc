//! Black-box tests of the `numrad` binary: output formats and exit codes.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use numrad::cli::io::read_matrix;
use numrad::matcore::{classify, default_class_tol, OperatorClass};
use tempfile::TempDir;

const J_MM: &str = "%%MatrixMarket matrix array complex general\n2 2\n0 0\n0 0\n1 0\n0 0\n";

fn numrad(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_numrad"))
        .args(args)
        .env_remove("NUMRAD_SEED")
        .output()
        .expect("binary runs")
}

fn write(dir: &TempDir, name: &str, text: &str) -> PathBuf {
    let p = dir.path().join(name);
    fs::write(&p, text).unwrap();
    p
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn field(out: &str, key: &str) -> f64 {
    out.lines()
        .find_map(|l| l.strip_prefix(key))
        .unwrap_or_else(|| panic!("no `{key}` in {out}"))
        .trim()
        .parse()
        .unwrap()
}

#[test]
fn radius_of_jordan_block() {
    let dir = TempDir::new().unwrap();
    let j = write(&dir, "j.mtx", J_MM);
    let o = numrad(&["radius", s(&j)]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    let (lo, hi) = (field(&out, "lo"), field(&out, "hi"));
    assert!(lo <= 0.5 && 0.5 <= hi && hi - lo <= 1e-8, "{out}");
    assert!(out.contains("converged   true"));
    assert!(out.contains("angles_used"));
}

#[test]
fn radius_of_zero_and_identity() {
    let dir = TempDir::new().unwrap();
    let z = write(&dir, "z.json", r#"{"rows":2,"cols":2,"data":[[0,0],[0,0],[0,0],[0,0]]}"#);
    let out = stdout(&numrad(&["radius", s(&z)]));
    assert_eq!((field(&out, "lo"), field(&out, "hi")), (0.0, 0.0));

    let i = write(&dir, "i.json", r#"{"rows":2,"cols":2,"data":[[1,0],[0,0],[0,0],[1,0]]}"#);
    let o = numrad(&["radius", s(&i), "--json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    let (lo, hi) = (v["enclosure"]["lo"].as_f64().unwrap(), v["enclosure"]["hi"].as_f64().unwrap());
    assert!(lo <= 1.0 && 1.0 <= hi);
}

#[test]
fn radius_exit_codes() {
    let dir = TempDir::new().unwrap();
    let j = write(&dir, "j.mtx", J_MM);
    // unattainable tolerance: bracket is returned but flagged
    assert_eq!(numrad(&["radius", s(&j), "--tol", "1e-300"]).status.code(), Some(3));
    assert_eq!(numrad(&["radius", s(&dir.path().join("missing.mtx"))]).status.code(), Some(2));
    let short = write(&dir, "short.mtx", "%%MatrixMarket matrix array complex general\n2 2\n0 0\n1 0\n0 0\n");
    let o = numrad(&["radius", s(&short)]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("expected 4 entries, found 3"));
    let rect = write(&dir, "r.json", r#"{"rows":1,"cols":2,"data":[[1,0],[0,0]]}"#);
    assert_eq!(numrad(&["radius", s(&rect)]).status.code(), Some(2));
}

#[test]
fn bounds_tables() {
    let dir = TempDir::new().unwrap();
    let d = write(&dir, "d.json", r#"{"rows":2,"cols":2,"data":[[1,0],[0,0],[0,0],[0,1]]}"#);
    let o = numrad(&["bounds", s(&d)]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    let row = out.lines().find(|l| l.starts_with("||A||/sqrt(2) <= w")).expect("AD row");
    assert!(row.contains("0.7071067811"), "{row}");
    assert!(!out.contains("VIOLATED"));

    let j = write(&dir, "j.mtx", J_MM);
    let o = numrad(&["bounds", s(&j), "--json"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    let rows = v["rows"].as_array().unwrap();
    let value = |name: &str| {
        let r = rows.iter().find(|r| r["bound"] == name).unwrap();
        (r["value"]["lo"].as_f64().unwrap(), r["value"]["hi"].as_f64().unwrap())
    };
    let (lo, hi) = value("||A*A + AA*||/4 <= w^2");
    assert!(lo <= 0.25 && 0.25 <= hi);
    let (lo, hi) = value("w^2 <= ||A*A + AA*||/2");
    assert!(lo <= 0.5 && 0.5 <= hi);

    let rect = write(&dir, "r.json", r#"{"rows":1,"cols":2,"data":[[1,0],[0,0]]}"#);
    assert_eq!(numrad(&["bounds", s(&rect)]).status.code(), Some(2));
}

#[test]
fn fov_csv() {
    let dir = TempDir::new().unwrap();
    let j = write(&dir, "j.mtx", J_MM);
    let csv_path = dir.path().join("fov.csv");
    let o = numrad(&["fov", s(&j), "--samples", "360", "--out", s(&csv_path)]);
    assert_eq!(o.status.code(), Some(0));
    let text = fs::read_to_string(&csv_path).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("theta,re,im,support_value"));
    let rows: Vec<Vec<f64>> = lines.map(|l| l.split(',').map(|x| x.parse().unwrap()).collect()).collect();
    assert_eq!(rows.len(), 360);
    for r in &rows {
        assert!((r[1].hypot(r[2]) - 0.5).abs() <= 1e-6, "{r:?}");
    }

    let i = write(&dir, "i.json", r#"{"rows":2,"cols":2,"data":[[1,0],[0,0],[0,0],[1,0]]}"#);
    let out = stdout(&numrad(&["fov", s(&i), "--samples", "8"]));
    for l in out.lines().skip(1) {
        let v: Vec<f64> = l.split(',').map(|x| x.parse().unwrap()).collect();
        assert!((v[1] - 1.0).abs() <= 1e-12 && v[2].abs() <= 1e-12);
    }
    assert_eq!(numrad(&["fov", s(&j), "--samples", "2"]).status.code(), Some(2));
    assert_eq!(numrad(&["fov", s(&dir.path().join("none.mtx"))]).status.code(), Some(2));
}

#[test]
fn gen_round_trips() {
    let dir = TempDir::new().unwrap();
    let a = dir.path().join("u.json");
    let b = dir.path().join("u2.json");
    for p in [&a, &b] {
        let o = numrad(&["gen", "--class", "unitary", "--n", "4", "--seed", "7", "--out", s(p)]);
        assert_eq!(o.status.code(), Some(0));
    }
    assert_eq!(fs::read(&a).unwrap(), fs::read(&b).unwrap());
    let u = read_matrix(&a, None).unwrap();
    assert!(classify(&u, default_class_tol(&u)).unwrap().contains(OperatorClass::Unitary));

    // Matrix Market output reads back to the same doubles
    let mm = dir.path().join("u.mtx");
    numrad(&["gen", "--class", "unitary", "--n", "4", "--seed", "7", "--out", s(&mm)]);
    assert_eq!(read_matrix(&mm, None).unwrap(), u);

    assert_eq!(numrad(&["gen", "--class", "general", "--n", "0"]).status.code(), Some(2));
    assert_eq!(numrad(&["gen", "--class", "triangular", "--n", "2"]).status.code(), Some(2));
    assert_eq!(
        numrad(&["gen", "--class", "general", "--n", "2", "--scale", "-1"]).status.code(),
        Some(2)
    );
}

fn schema() -> jsonschema::Validator {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("../../docs/report.schema.json");
    let schema: serde_json::Value = serde_json::from_str(&fs::read_to_string(path).unwrap()).unwrap();
    jsonschema::validator_for(&schema).expect("schema compiles")
}

#[test]
fn verify_small_campaign() {
    let dir = TempDir::new().unwrap();
    let cfg = write(&dir, "c.json", r#"{"inequalities":["KITTANEH"],"dims":[2],"trials":1}"#);
    let out = dir.path().join("r.json");
    let o = numrad(&["verify", s(&cfg), "--out", s(&out)]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let v: serde_json::Value = serde_json::from_str(&fs::read_to_string(&out).unwrap()).unwrap();
    let reports = v["reports"].as_array().unwrap();
    assert_eq!(reports.len(), 2);
    assert_eq!(reports[0]["id"], "KITTANEH.left");
    assert_eq!(reports[1]["id"], "KITTANEH.right");
    assert!(reports[0]["timestamp"].is_string() && reports[0]["toolkit_version"].is_string());
    let errors: Vec<String> = schema().iter_errors(&v).map(|e| e.to_string()).collect();
    assert!(errors.is_empty(), "{errors:?}");
}

#[test]
fn verify_report_validates_against_schema() {
    let dir = TempDir::new().unwrap();
    let out = dir.path().join("r.json");
    let o = numrad(&["verify", "--dims", "2,3", "--trials", "2", "--out", s(&out), "--quiet"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&fs::read_to_string(&out).unwrap()).unwrap();
    let errors: Vec<String> = schema().iter_errors(&v).map(|e| e.to_string()).collect();
    assert!(errors.is_empty(), "{errors:?}");
    assert_eq!(v["summary"].as_object().unwrap().len(), 15);

    // a document with a bogus verdict must not validate
    let mut bad = v.clone();
    bad["reports"][0]["verdict"] = "MAYBE".into();
    assert!(!schema().is_valid(&bad));
}

#[test]
fn verify_is_deterministic_and_honours_seed_env() {
    let dir = TempDir::new().unwrap();
    let run = |name: &str, env_seed: Option<&str>| {
        let out = dir.path().join(name);
        let mut cmd = Command::new(env!("CARGO_BIN_EXE_numrad"));
        cmd.args(["verify", "--inequalities", "SUBMULT,TRIANGLE_REFINE", "--dims", "3", "--trials", "3", "--quiet"])
            .arg("--out")
            .arg(&out)
            .env_remove("NUMRAD_SEED");
        if let Some(seed) = env_seed {
            cmd.env("NUMRAD_SEED", seed);
        }
        assert_eq!(cmd.status().unwrap().code(), Some(0));
        let mut v: serde_json::Value = serde_json::from_str(&fs::read_to_string(&out).unwrap()).unwrap();
        for key in ["timestamp", "wall_time_seconds"] {
            v.as_object_mut().unwrap().remove(key);
        }
        v["config"].as_object_mut().unwrap().remove("output");
        for r in v["reports"].as_array_mut().unwrap() {
            r.as_object_mut().unwrap().remove("timestamp");
        }
        v
    };
    let a = run("a.json", None);
    let b = run("b.json", None);
    assert_eq!(a, b);
    assert_eq!(a["config"]["master_seed"], 42);
    let c = run("c.json", Some("7"));
    assert_eq!(c["config"]["master_seed"], 7);
    assert_ne!(a["reports"], c["reports"]);
}

#[test]
fn verify_config_errors_exit_two() {
    let dir = TempDir::new().unwrap();
    let bad = write(&dir, "bad.json", r#"{"inequalities":["FOO"]}"#);
    let o = numrad(&["verify", s(&bad)]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("FOO"));

    let zero = write(&dir, "zero.json", r#"{"trials":0}"#);
    assert_eq!(numrad(&["verify", s(&zero)]).status.code(), Some(2));
    let class = write(&dir, "cls.json", r#"{"classes":{"AD_NORM_LOWER":["GENERAL"]}}"#);
    assert_eq!(numrad(&["verify", s(&class)]).status.code(), Some(2));
    assert_eq!(numrad(&["verify", s(&dir.path().join("missing.json"))]).status.code(), Some(2));
    assert_eq!(numrad(&["verify", "--inequalities", "FOO"]).status.code(), Some(2));
    let o = Command::new(env!("CARGO_BIN_EXE_numrad"))
        .args(["verify", "--trials", "1", "--dims", "2"])
        .env("NUMRAD_SEED", "not-a-number")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn verify_inconclusive_threshold_exit_five() {
    // a verdict tolerance far below the bracket width forces overlaps on
    // equality cases (unitary operands make w(A) = ||A||), and a zero
    // threshold turns any survivor into a failure
    let dir = TempDir::new().unwrap();
    let cfg = write(
        &dir,
        "c.json",
        r#"{"inequalities":["NORM_RADIUS_SANDWICH"],"classes":{"NORM_RADIUS_SANDWICH":["UNITARY"]},
            "dims":[16],"trials":3,"inconclusive_threshold":0.0,
            "tolerances":{"radius_rel":1e-3,"verdict_rel":1e-300,"refinement_factor":1}}"#,
    );
    let o = numrad(&["verify", s(&cfg), "--out", s(&dir.path().join("r.json"))]);
    assert_eq!(o.status.code(), Some(5), "{}", String::from_utf8_lossy(&o.stderr));
}
