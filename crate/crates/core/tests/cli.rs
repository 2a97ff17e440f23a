use std::process::{Command, Output};

use serde_json::Value;

use jacobi_spectra::validated::{format_hex, parse_hex};

const EXPLICIT: &str =
    r#"{"tail_diag": 0.0, "tail_off": 0.5, "pert_diag": [0.75, -0.25, 0.5], "pert_off": [1.0, 0.75]}"#;

fn run(args: &[&str]) -> Output {
    run_env(args, &[])
}

fn run_env(args: &[&str], env: &[(&str, &str)]) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_jacobi-spectra"));
    cmd.args(args);
    for (k, v) in env {
        cmd.env(k, v);
    }
    cmd.output().expect("binary runs")
}

fn json(out: &Output) -> Value {
    assert!(out.status.success(), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("valid JSON")
}

fn stderr_line(out: &Output) -> String {
    let text = String::from_utf8_lossy(&out.stderr).to_string();
    assert_eq!(text.trim_end().lines().count(), 1, "{text}");
    text
}

#[test]
fn spectrum_of_basic1() {
    let v = json(&run(&["spectrum", "--family", "basic1", "--alpha", "2"]));
    assert_eq!(v["continuous"], serde_json::json!([-1.0, 1.0]));
    let atoms = v["atoms"].as_array().unwrap();
    assert_eq!(atoms.len(), 1);
    assert!((atoms[0]["lambda"].as_f64().unwrap() - 1.25).abs() < 1e-14);
    assert!((atoms[0]["weight"].as_f64().unwrap() - 0.75).abs() < 1e-12);
}

#[test]
fn validate_writes_hex_bounds() {
    let dir = tempfile::tempdir().unwrap();
    let spec = dir.path().join("explicit.json");
    std::fs::write(&spec, EXPLICIT).unwrap();
    let dest = dir.path().join("enclosures.json");
    let out = run(&[
        "validate",
        "--spec",
        spec.to_str().unwrap(),
        "--eps",
        "1e-15",
        "-o",
        dest.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let stdout = String::from_utf8(out.stdout).unwrap();
    assert_eq!(stdout.lines().count(), 2);
    assert!(stdout.contains(" ± "));

    let v: Value = serde_json::from_str(&std::fs::read_to_string(&dest).unwrap()).unwrap();
    let e = v["enclosures"].as_array().unwrap();
    assert_eq!(e.len(), 2);
    for (rec, want) in e.iter().zip([-1.1734766767874558, 1.5795946563898884]) {
        let (lo_s, hi_s) = (rec["lo"].as_str().unwrap(), rec["hi"].as_str().unwrap());
        let (lo, hi) = (parse_hex(lo_s).unwrap(), parse_hex(hi_s).unwrap());
        assert!(lo <= want && want <= hi);
        assert!(rec["radius"].as_f64().unwrap() <= 8.9e-16);
        assert_eq!(format_hex(lo), lo_s);
        assert_eq!(format_hex(hi), hi_s);
    }
}

#[test]
fn truncation_sweep_approaches_half() {
    let v = json(&run(&[
        "truncate-sweep",
        "--family",
        "legendre",
        "--rows",
        "100",
        "--m",
        "1,2,3,10,30,100",
        "--sample",
        "0",
    ]));
    let rows = v["sweep"].as_array().unwrap();
    assert_eq!(rows.len(), 6);
    let density = |k: usize| rows[k]["density"].as_f64().unwrap();
    assert!((density(5) - 0.5).abs() < 1e-5);
    assert!((density(5) - 0.5).abs() < (density(0) - 0.5).abs());
    for r in rows {
        assert!((r["mass"].as_f64().unwrap() - 1.0).abs() < 1e-8);
    }
}

#[test]
fn resolvent_grid_is_deterministic() {
    let args = [
        "resolvent", "--family", "basic2", "--beta", "2", "--re", "-2,2", "--im", "0.1,1.5",
        "--res", "7,5",
    ];
    let one = run_env(&args, &[("JACOBI_SPECTRA_THREADS", "1")]);
    let four = run_env(&args, &[("JACOBI_SPECTRA_THREADS", "4")]);
    let again = run(&args);
    assert!(one.status.success());
    assert_eq!(one.stdout, four.stdout);
    assert_eq!(one.stdout, again.stdout);
    let text = String::from_utf8(one.stdout).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("re,im,abs,arg"));
    let rows: Vec<Vec<f64>> = lines
        .map(|l| l.split(',').map(|x| x.parse().unwrap()).collect())
        .collect();
    assert_eq!(rows.len(), 35);
    assert_eq!((rows[0][0], rows[0][1]), (-2.0, 0.1));
    assert_eq!((rows[1][0], rows[1][1]), (-1.3333333333333335, 0.1));
    assert!(rows.iter().all(|r| r[3] > 0.0));
}

#[test]
fn disc_resolvent_and_measure() {
    let out = run(&[
        "disc-resolvent", "--family", "free", "--re", "0.3,0.3", "--im", "0,0", "--res", "1",
    ]);
    let text = String::from_utf8(out.stdout).unwrap();
    let row: Vec<f64> = text.lines().nth(1).unwrap().split(',').map(|x| x.parse().unwrap()).collect();
    assert!((row[2] - 0.6).abs() < 1e-15);

    let v = json(&run(&["measure", "--family", "gamma", "--samples", "9"]));
    assert_eq!(v["density_samples"].as_array().unwrap().len(), 9);
    assert!(v["atoms"].as_array().unwrap().is_empty());
    assert!(!v["pC_coeffs"].as_array().unwrap().is_empty());
}

#[test]
fn exact_connection_block() {
    let dir = tempfile::tempdir().unwrap();
    let spec = dir.path().join("explicit.json");
    std::fs::write(&spec, EXPLICIT).unwrap();
    let v = json(&run(&[
        "connection", "--spec", spec.to_str().unwrap(), "--exact", "--dense", "6",
    ]));
    let first: Vec<&str> = v["dense"][0].as_array().unwrap().iter().map(|x| x.as_str().unwrap()).collect();
    assert_eq!(first, ["1", "-3/4", "-5/4", "49/24", "-1/12", "-1/3"]);
}

#[test]
fn seeded_family_is_reproducible() {
    let args = ["spectrum", "--family", "schrodinger-random", "--seed", "7", "--rows", "30"];
    assert_eq!(run(&args).stdout, run(&args).stdout);
}

#[test]
fn exit_codes() {
    let parse = run(&["validate", "--family", "free"]);
    assert_eq!(parse.status.code(), Some(2));
    let missing = run(&["spectrum", "--family", "basic1"]);
    assert_eq!(missing.status.code(), Some(2));
    stderr_line(&missing);
    let bad_spec = run(&["spectrum", "--spec", "/nonexistent/op.json"]);
    assert_eq!(bad_spec.status.code(), Some(2));

    let cut = run(&[
        "resolvent", "--family", "free", "--re", "-2,2", "--im", "0,1", "--res", "5",
    ]);
    assert_eq!(cut.status.code(), Some(3));
    assert!(stderr_line(&cut).starts_with("error: "));
    assert!(cut.stdout.is_empty());

    let outside = run(&["truncate-sweep", "--family", "legendre", "--m", "5", "--sample", "1.5"]);
    assert_eq!(outside.status.code(), Some(3));

    let dir = tempfile::tempdir().unwrap();
    let spec = dir.path().join("explicit.json");
    std::fs::write(&spec, EXPLICIT).unwrap();
    let tight = run(&["validate", "--spec", spec.to_str().unwrap(), "--eps", "1e-300"]);
    assert_eq!(tight.status.code(), Some(4));
    stderr_line(&tight);
}
