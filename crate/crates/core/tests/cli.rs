use std::process::{Command, Output};

use fisheye_casimir::profile::CSV_HEADER;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_fisheye-casimir"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn parse(s: &str) -> f64 {
    s.trim().parse().unwrap()
}

#[test]
fn profile_rows_at_center_and_midpoint() {
    let o = run(&["profile", "--rmin", "0", "--rmax", "0.5", "--points", "3"]);
    assert!(o.status.success());
    let text = stdout(&o);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some(CSV_HEADER));
    let rows: Vec<Vec<f64>> = lines.map(|l| l.split(',').map(parse).collect()).collect();
    assert_eq!(rows.len(), 3);
    assert_eq!(rows[0][0], 0.0);
    assert_eq!(rows[0][1], 2.0);
    assert!((rows[0][2] + 0.050661).abs() < 1e-6);
    assert_eq!(rows[0][3], 0.0);
    assert!((rows[2][2] + 0.20014).abs() < 1e-5);
    assert!((rows[2][3] + 1.2275).abs() < 1e-4);
}

#[test]
fn profile_default_range_stops_short_of_mirror() {
    let o = run(&["profile", "--a", "2", "--points", "11"]);
    assert!(o.status.success());
    let text = stdout(&o);
    let last = text.lines().last().unwrap();
    assert_eq!(parse(last.split(',').next().unwrap()), 0.99);
}

#[test]
fn profile_values_have_fifteen_significant_digits() {
    let o = run(&["profile", "--points", "4"]);
    for line in stdout(&o).lines().skip(1) {
        for cell in line.split(',') {
            let mantissa = cell.trim_start_matches('-').split('e').next().unwrap();
            assert_eq!(mantissa.replace('.', "").len(), 15, "{cell}");
        }
    }
}

#[test]
fn profile_json_lines() {
    let o = run(&["profile", "--points", "5", "--format", "json-lines"]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert_eq!(text.lines().count(), 5);
    for line in text.lines() {
        let v: serde_json::Value = serde_json::from_str(line).unwrap();
        assert!(v["sigma_eigenvalue"].as_f64().unwrap() < 0.0);
    }
}

#[test]
fn bad_profile_range_exits_2() {
    for args in [
        &["profile", "--rmax", "1"][..],
        &["profile", "--rmin", "0.5", "--rmax", "0.4"],
        &["profile", "--points", "1"],
        &["profile", "--a", "-1"],
    ] {
        let o = run(args);
        assert_eq!(o.status.code(), Some(2), "{args:?}");
        assert!(!o.stderr.is_empty());
    }
}

#[test]
fn stress_at_center() {
    let o = run(&["stress", "--a", "1", "--n1", "1", "0"]);
    assert!(o.status.success());
    let text = stdout(&o);
    let sigma = text.lines().find_map(|l| l.strip_prefix("sigma_eigenvalue ")).unwrap();
    assert!((parse(sigma) + 0.050661).abs() < 1e-6);
}

#[test]
fn stress_outside_mirror_exits_2() {
    assert_eq!(run(&["stress", "1.0"]).status.code(), Some(2));
}

#[test]
fn scalar_value() {
    let o = run(&["scalar", "1", "1"]);
    assert!(o.status.success());
    assert!((parse(&stdout(&o)) - 1.5857e-2).abs() < 1e-6);
    assert_eq!(run(&["scalar", "0", "1"]).status.code(), Some(2));
}

#[test]
fn green_matrix_dump() {
    let o = run(&[
        "green",
        "--r",
        "0.4,0,0",
        "--r0",
        "-0.1,0.2,0",
        "--kappa",
        "1",
        "--part",
        "free",
    ]);
    assert!(o.status.success());
    let text = stdout(&o);
    let rows: Vec<Vec<f64>> = text
        .lines()
        .map(|l| l.split_whitespace().map(parse).collect())
        .collect();
    assert_eq!(rows.len(), 3);
    assert!(rows.iter().all(|r| r.len() == 3));
}

#[test]
fn green_at_coincidence_exits_2() {
    let o = run(&["green", "--r", "0.3,0,0", "--r0", "0.3,0,0", "--kappa", "1"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("coincident"));
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(run(&["nope"]).status.code(), Some(2));
    assert_eq!(run(&["profile", "--format", "xml"]).status.code(), Some(2));
    assert_eq!(
        run(&["green", "--r", "1,2", "--r0", "0,0,0", "--kappa", "1"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(run(&["verify", "--tol", "0"]).status.code(), Some(2));
}

#[test]
fn verify_fast_passes() {
    let o = run(&["verify", "--level", "fast"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.lines().count() >= 8);
    assert!(text.lines().all(|l| l.starts_with("PASS ")));
}

#[test]
fn verify_full_reports_every_check_and_exits_1_on_failure() {
    let o = run(&["verify", "--level", "full"]);
    assert_eq!(o.status.code(), Some(1));
    let text = stdout(&o);
    assert!(text.lines().count() > 9);
    assert!(text.lines().any(|l| l.starts_with("FAIL ")));
    assert!(text.contains("wave_equation_residual"));
}

#[test]
fn loose_tolerance_scale_changes_verdicts() {
    let o = run(&["verify", "--level", "full", "--tol", "1e3"]);
    // only the reflected magnetic comparison stays out of reach
    let text = stdout(&o);
    let failing: Vec<_> = text.lines().filter(|l| l.starts_with("FAIL ")).collect();
    assert_eq!(failing.len(), 1, "{text}");
    assert!(failing[0].contains("magnetic_equals_electric_reflected"));
}
