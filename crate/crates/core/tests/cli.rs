//! End-to-end checks of the binary: exit codes, JSON determinism, and
//! radius-file ingestion self-consistency.

use std::f64::consts::PI;
use std::io::Write;
use std::process::Command;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_wedge-eigen"))
}

#[test]
fn usage_errors_exit_2() {
    for args in [
        vec!["bound", "--domain", "sector:1.5"], // missing --alpha
        vec!["bound", "--domain", "bogus"],
        vec!["bound", "--domain", "sector:nope", "--alpha", "1.5"],
        vec!["pursuit", "--n", "0", "--paths", "10"],
        vec!["bound", "--domain", "tetra", "--alpha", "2.0"], // fixed-alpha conflict
    ] {
        let out = bin().args(&args).output().unwrap();
        assert_eq!(out.status.code(), Some(2), "args {args:?}: {out:?}");
    }
}

#[test]
fn bound_json_is_deterministic() {
    let run = || {
        bin()
            .args(["bound", "--domain", "tetra", "--format", "json"])
            .output()
            .unwrap()
    };
    let a = run();
    let b = run();
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let v: serde_json::Value = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(v["schema_version"], 1);
    let lambda = v["report"]["lambda_star"].as_f64().unwrap();
    assert!((lambda - 5.116_414_65).abs() < 1e-6);
}

#[test]
fn pursuit_json_is_seed_deterministic() {
    let run = || {
        bin()
            .args([
                "pursuit", "--n", "2", "--paths", "500", "--tmax", "5", "--seed", "9",
                "--format", "json",
            ])
            .output()
            .unwrap()
    };
    let a = run();
    let b = run();
    assert_eq!(a.status.code(), Some(0), "{a:?}");
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn radius_file_matches_builtin_sector() {
    // A densely sampled constant-radius table must reproduce the
    // sector:<r> pipeline output to 1e-6.
    let r = 1.3;
    let alpha = 2.0;
    let mut file = tempfile::NamedTempFile::new().unwrap();
    writeln!(file, "theta,r").unwrap();
    let n = 200;
    for i in 0..=n {
        let theta = (PI / alpha) * i as f64 / n as f64;
        writeln!(file, "{theta:.12},{r}").unwrap();
    }
    file.flush().unwrap();

    let from_file = bin()
        .args([
            "bound",
            "--domain",
            &format!("file:{}", file.path().display()),
            "--alpha",
            "2.0",
            "--format",
            "json",
        ])
        .output()
        .unwrap();
    assert_eq!(from_file.status.code(), Some(0), "{from_file:?}");
    let builtin = bin()
        .args(["bound", "--domain", "sector:1.3", "--alpha", "2.0", "--format", "json"])
        .output()
        .unwrap();
    let vf: serde_json::Value = serde_json::from_slice(&from_file.stdout).unwrap();
    let vb: serde_json::Value = serde_json::from_slice(&builtin.stdout).unwrap();
    for key in ["moment", "r_star", "lambda_star"] {
        let f = vf["report"][key].as_f64().unwrap();
        let b = vb["report"][key].as_f64().unwrap();
        assert!((f - b).abs() < 1e-6, "{key}: file {f} vs builtin {b}");
    }
}

#[test]
fn malformed_radius_file_exits_2() {
    let mut file = tempfile::NamedTempFile::new().unwrap();
    writeln!(file, "0.0,1.0\n0.5,oops").unwrap();
    file.flush().unwrap();
    let out = bin()
        .args([
            "bound",
            "--domain",
            &format!("file:{}", file.path().display()),
            "--alpha",
            "1.5",
        ])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2), "{out:?}");
}

#[test]
fn survival_csv_has_expected_columns() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("survival.csv");
    let out = bin()
        .args([
            "pursuit", "--n", "1", "--paths", "300", "--tmax", "5", "--seed", "4",
            "--out", path.to_str().unwrap(),
        ])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0), "{out:?}");
    let text = std::fs::read_to_string(&path).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("t,survivors,p_hat"));
    let mut last_p = f64::INFINITY;
    for line in lines {
        let cols: Vec<&str> = line.split(',').collect();
        assert_eq!(cols.len(), 3, "line {line:?}");
        let p: f64 = cols[2].parse().unwrap();
        assert!(p <= last_p, "survival curve must be nonincreasing");
        last_p = p;
    }
}
