use std::path::Path;
use std::process::{Command, Output};

use hpdiv_core::hpd::io::read_matrix;
use hpdiv_core::hpd::spectral::spectral_decompose;
use serde_json::Value;

fn hpdiv(args: &[&str], dir: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hpdiv"))
        .args(args)
        .current_dir(dir)
        .output()
        .expect("binary runs")
}

fn stdout_json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout)
        .unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&out.stdout)))
}

fn write(dir: &Path, name: &str, text: &str) {
    std::fs::write(dir.join(name), text).unwrap();
}

#[test]
fn gen_is_deterministic_and_positive_definite() {
    let dir = tempfile::tempdir().unwrap();
    for name in ["a.json", "b.json"] {
        let out = hpdiv(
            &["gen", "--dim", "4", "--seed", "9", "-o", name],
            dir.path(),
        );
        assert!(out.status.success());
    }
    let a = std::fs::read(dir.path().join("a.json")).unwrap();
    assert_eq!(a, std::fs::read(dir.path().join("b.json")).unwrap());
    let x = read_matrix(&dir.path().join("a.json")).unwrap();
    assert!(spectral_decompose(&x).unwrap().min_eigenvalue() > 0.0);

    let out = hpdiv(
        &[
            "gen",
            "--dim",
            "3",
            "--seed",
            "1",
            "--unit-trace",
            "-o",
            "u.json",
        ],
        dir.path(),
    );
    assert!(out.status.success());
    let u = read_matrix(&dir.path().join("u.json")).unwrap();
    assert!((u.trace() - 1.0).abs() < 1e-12);
}

#[test]
fn compute_sdiv_of_identical_inputs_is_zero() {
    let dir = tempfile::tempdir().unwrap();
    hpdiv(
        &["gen", "--dim", "3", "--seed", "5", "-o", "a.json"],
        dir.path(),
    );
    let out = hpdiv(
        &["compute", "--kind", "sdiv", "a.json", "a.json"],
        dir.path(),
    );
    assert!(out.status.success());
    let v = stdout_json(&out);
    assert_eq!(v["value"].as_f64(), Some(0.0));
    assert_eq!(v["kind"], "sdiv");
    assert_eq!(v["dims"], serde_json::json!([3, 3]));
}

#[test]
fn compute_qjsd_order_two_is_quarter_frobenius() {
    let dir = tempfile::tempdir().unwrap();
    write(dir.path(), "a.json", r#"{"dim":2,"real":[[2,1],[1,3]]}"#);
    write(dir.path(), "b.json", r#"{"dim":2,"real":[[1,0],[0,1]]}"#);
    let out = hpdiv(
        &[
            "compute",
            "--kind",
            "qjsd-alpha",
            "--alpha",
            "2",
            "a.json",
            "b.json",
        ],
        dir.path(),
    );
    assert!(out.status.success());
    // ‖A − B‖_F² = 1 + 1 + 1 + 4 = 7.
    let v = stdout_json(&out)["value"].as_f64().unwrap();
    assert!((v - 7.0 / 4.0).abs() <= 1e-12 * 1.75, "{v}");
}

#[test]
fn compute_errors_map_to_exit_two() {
    let dir = tempfile::tempdir().unwrap();
    write(dir.path(), "a.json", r#"{"dim":2,"real":[[2,0],[0,3]]}"#);
    write(
        dir.path(),
        "c.json",
        r#"{"dim":3,"real":[[1,0,0],[0,1,0],[0,0,1]]}"#,
    );
    let out = hpdiv(
        &[
            "compute", "--kind", "qjrd", "--alpha", "0.5", "a.json", "a.json",
        ],
        dir.path(),
    );
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("unit-trace"));
    let out = hpdiv(
        &["compute", "--kind", "sdiv", "a.json", "c.json"],
        dir.path(),
    );
    assert_eq!(out.status.code(), Some(2));
    let out = hpdiv(
        &["compute", "--kind", "sdiv", "a.json", "missing.json"],
        dir.path(),
    );
    assert_eq!(out.status.code(), Some(2));
    let out = hpdiv(
        &[
            "compute",
            "--kind",
            "qjsd-alpha",
            "--alpha",
            "-1",
            "a.json",
            "a.json",
        ],
        dir.path(),
    );
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn cnd_examples() {
    let dir = tempfile::tempdir().unwrap();
    let hollow = |a: f64, b: f64, c: f64| {
        format!(r#"{{"dim":3,"real":[[0,{a},{b}],[{a},0,{c}],[{b},{c},0]]}}"#)
    };
    let cases = [
        ("zero.json", hollow(0.0, 0.0, 0.0), true),
        ("yes.json", hollow(1.0, 4.0, 1.0), true),
        ("no.json", hollow(1.0, 9.0, 1.0), false),
    ];
    for (name, text, expected) in cases {
        write(dir.path(), name, &text);
        let out = hpdiv(&["cnd", name], dir.path());
        assert!(out.status.success());
        let v = stdout_json(&out);
        assert_eq!(v["cnd"].as_bool(), Some(expected), "{name}");
        assert_eq!(v["sqrtTriangle"].as_bool(), Some(expected), "{name}");
        assert_eq!(v["nonneg"].as_bool(), Some(true));
    }
    write(dir.path(), "two.json", r#"{"dim":2,"real":[[0,1],[1,0]]}"#);
    assert_eq!(
        hpdiv(&["cnd", "two.json"], dir.path()).status.code(),
        Some(2)
    );
}

#[test]
fn verify_triangle_writes_reports() {
    let dir = tempfile::tempdir().unwrap();
    let out = hpdiv(
        &[
            "verify", "triangle", "--kind", "sdiv", "--dims", "2:4", "--trials", "30", "--seed",
            "42", "-o", "tri.csv",
        ],
        dir.path(),
    );
    assert_eq!(
        out.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let summary = stdout_json(&out);
    assert_eq!(summary["violations"].as_u64(), Some(0));
    assert_eq!(summary["trials"].as_u64(), Some(30));

    let csv = std::fs::read_to_string(dir.path().join("tri.csv")).unwrap();
    let mut lines = csv.lines();
    assert_eq!(lines.next(), Some("trial,dim,d_xy,d_yz,d_xz,slack,pass"));
    assert_eq!(lines.count(), 30);
    let file: Value =
        serde_json::from_str(&std::fs::read_to_string(dir.path().join("tri.json")).unwrap())
            .unwrap();
    assert_eq!(file, summary);
}

#[test]
fn verify_output_is_independent_of_threads() {
    let dir = tempfile::tempdir().unwrap();
    for (threads, name) in [("1", "one.csv"), ("4", "four.csv")] {
        let out = hpdiv(
            &[
                "verify",
                "triangle",
                "--kind",
                "qjsd-alpha",
                "--alpha",
                "1.5",
                "--trials",
                "20",
                "--threads",
                threads,
                "-o",
                name,
            ],
            dir.path(),
        );
        assert!(out.status.success());
    }
    let read = |n: &str| std::fs::read_to_string(dir.path().join(n)).unwrap();
    assert_eq!(read("one.csv"), read("four.csv"));
}

#[test]
fn verify_integral_and_reduction() {
    let dir = tempfile::tempdir().unwrap();
    let out = hpdiv(
        &[
            "verify",
            "integral",
            "--rep",
            "power-low",
            "--alpha",
            "0.5",
            "-o",
            "int.csv",
        ],
        dir.path(),
    );
    assert!(out.status.success());
    let v = stdout_json(&out);
    assert!(v["extras"]["maxRelError"].as_f64().unwrap() <= 1e-6);

    let out = hpdiv(
        &[
            "verify",
            "reduction",
            "--alpha",
            "0.75",
            "--trials",
            "50",
            "-o",
            "red.csv",
        ],
        dir.path(),
    );
    assert!(out.status.success());
    assert!(stdout_json(&out)["extras"]["maxRelDiff"].as_f64().unwrap() <= 1e-10);
}

#[test]
fn verify_reports_violations_with_exit_one() {
    // An impossible tolerance turns ordinary quadrature error into violations.
    let dir = tempfile::tempdir().unwrap();
    let out = hpdiv(
        &[
            "verify",
            "integral",
            "--rep",
            "log",
            "--tol",
            "0",
            "-o",
            "strict.csv",
        ],
        dir.path(),
    );
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout_json(&out)["violations"].as_u64().unwrap() > 0);
}

#[test]
fn bad_arguments_are_rejected() {
    let dir = tempfile::tempdir().unwrap();
    let out = hpdiv(
        &["verify", "triangle", "--dims", "5:2", "-o", "x.csv"],
        dir.path(),
    );
    assert!(!out.status.success());
    let out = hpdiv(&["verify", "nonsense", "-o", "x.csv"], dir.path());
    assert!(!out.status.success());
}

#[test]
fn verbose_logs_json_lines() {
    let dir = tempfile::tempdir().unwrap();
    let out = hpdiv(
        &[
            "--verbose",
            "verify",
            "cm-transform",
            "--trials",
            "3",
            "-o",
            "cm.csv",
        ],
        dir.path(),
    );
    assert!(out.status.success());
    let stderr = String::from_utf8_lossy(&out.stderr);
    let first = stderr.lines().next().expect("log line");
    let v: Value = serde_json::from_str(first).unwrap();
    assert_eq!(v["level"], "INFO");
}
