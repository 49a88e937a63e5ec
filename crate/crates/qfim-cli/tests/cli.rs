//! End-to-end tests of the `qfim` binary: exit-code contract, output
//! determinism, and the documented subcommand behavior.

use std::path::PathBuf;
use std::process::{Command, Output};

fn qfim(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qfim"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("utf8 stdout")
}

fn write_temp(name: &str, contents: &str) -> PathBuf {
    let path = std::env::temp_dir().join(format!("qfim-cli-test-{name}"));
    std::fs::write(&path, contents).expect("temp file writes");
    path
}

fn rho_82_file() -> PathBuf {
    write_temp(
        "rho82.json",
        r#"{"n":2,"re":[[0.8,0],[0,0.2]],"im":[[0,0],[0,0]]}"#,
    )
}

#[test]
fn verify_sandwich_campaign_passes_and_exits_zero() {
    let out = qfim(&[
        "verify", "sandwich", "--f", "wy", "--n", "3", "--trials", "100", "--seed", "7",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    let lines: Vec<&str> = text.lines().map(str::trim).collect();
    assert_eq!(lines.len(), 100);
    for line in lines {
        let report: serde_json::Value = serde_json::from_str(line).expect("JSON line");
        assert_eq!(report["pass"], true, "{line}");
        assert_eq!(report["check"], "sandwich");
    }
}

#[test]
fn verify_sandwich_sld_margins_vanish() {
    let out = qfim(&[
        "verify", "sandwich", "--f", "sld", "--n", "2", "--trials", "20",
    ]);
    assert_eq!(out.status.code(), Some(0));
    for line in stdout(&out).lines() {
        let report: serde_json::Value = serde_json::from_str(line).unwrap();
        let margin = report["margin"].as_f64().unwrap();
        assert!(margin.abs() <= report["tolerance"].as_f64().unwrap());
    }
}

#[test]
fn verify_two_path_campaign() {
    let out = qfim(&[
        "verify", "two-path", "--f", "mix:0.5", "--n", "4", "--trials", "10",
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out).lines().count(), 10);
}

#[test]
fn identical_invocations_are_byte_identical() {
    let args = [
        "verify",
        "covariance",
        "--f",
        "wy",
        "--n",
        "3",
        "--trials",
        "8",
        "--seed",
        "11",
    ];
    let first = qfim(&args);
    let second = qfim(&args);
    assert_eq!(first.stdout, second.stdout);
    assert_eq!(first.status.code(), second.status.code());
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(
        qfim(&["verify", "sandwich", "--f", "nope"]).status.code(),
        Some(2)
    );
    assert_eq!(
        qfim(&["verify", "sandwich", "--f", "wy", "--n", "1"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(qfim(&["verify", "unknown-suite"]).status.code(), Some(2));
    // clap's own usage failure also lands on 2.
    assert_eq!(qfim(&["no-such-command"]).status.code(), Some(2));
}

#[test]
fn info_frozen_values() {
    let rho = rho_82_file();
    let out = qfim(&[
        "info",
        "--rho",
        rho.to_str().unwrap(),
        "--a",
        "sigma1",
        "--f",
        "wy",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(stdout(&out).trim()).unwrap();
    assert!((v["variance"].as_f64().unwrap() - 1.0).abs() < 1e-12);
    assert!((v["i_f_variance_path"].as_f64().unwrap() - 0.2).abs() < 1e-12);
    assert!((v["i_f_metric_path"].as_f64().unwrap() - 0.2).abs() < 1e-12);
    assert!((v["i_sld"].as_f64().unwrap() - 0.36).abs() < 1e-12);
    assert!((v["i_wy"].as_f64().unwrap() - 0.2).abs() < 1e-12);
    assert_eq!(v["rho_faithful"], true);
}

#[test]
fn info_maximally_mixed_builtin() {
    let out = qfim(&["info", "--rho", "bloch:0,0,0", "--a", "sigma3", "--f", "wy"]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(stdout(&out).trim()).unwrap();
    assert!(v["i_f_variance_path"].as_f64().unwrap().abs() < 1e-12);
    assert!(v["i_sld"].as_f64().unwrap().abs() < 1e-12);
    assert!((v["variance"].as_f64().unwrap() - 1.0).abs() < 1e-12);
}

#[test]
fn info_pure_state_equals_variance_and_omits_metric_path() {
    let rho = write_temp(
        "pure.json",
        r#"{"n":2,"re":[[1,0],[0,0]],"im":[[0,0],[0,0]]}"#,
    );
    let out = qfim(&[
        "info",
        "--rho",
        rho.to_str().unwrap(),
        "--a",
        "sigma1",
        "--f",
        "wy",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(stdout(&out).trim()).unwrap();
    assert!((v["i_f_variance_path"].as_f64().unwrap() - 1.0).abs() < 1e-9);
    assert!((v["variance"].as_f64().unwrap() - 1.0).abs() < 1e-12);
    assert!(v.get("i_f_metric_path").is_none());
    assert_eq!(v["rho_faithful"], false);
}

#[test]
fn info_rejects_bad_states() {
    let malformed = write_temp("malformed.json", r#"{"n":2,"re":[[1,0]]}"#);
    assert_eq!(
        qfim(&[
            "info",
            "--rho",
            malformed.to_str().unwrap(),
            "--a",
            "sigma1"
        ])
        .status
        .code(),
        Some(2)
    );
    let bad_trace = write_temp(
        "badtrace.json",
        r#"{"n":2,"re":[[0.9,0],[0,0.2]],"im":[[0,0],[0,0]]}"#,
    );
    assert_eq!(
        qfim(&[
            "info",
            "--rho",
            bad_trace.to_str().unwrap(),
            "--a",
            "sigma1"
        ])
        .status
        .code(),
        Some(2)
    );
    let negative = write_temp(
        "negative.json",
        r#"{"n":2,"re":[[1.2,0],[0,-0.2]],"im":[[0,0],[0,0]]}"#,
    );
    assert_eq!(
        qfim(&["info", "--rho", negative.to_str().unwrap(), "--a", "sigma1"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        qfim(&["info", "--rho", "/nonexistent/rho.json", "--a", "sigma1"])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn bloch_table_decreases_toward_one_with_limit_footer() {
    let out = qfim(&[
        "bloch", "--f", "wy", "--r-min", "0.01", "--r-max", "0.99", "--steps", "99",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    let mut lines = text.lines();
    assert_eq!(lines.next().unwrap(), "r,ratio,limit_zero,limit_one");
    let mut ratios = Vec::new();
    let mut footer = Vec::new();
    for line in lines {
        if line.starts_with("limit_") {
            footer.push(line.to_string());
            continue;
        }
        let cells: Vec<&str> = line.split(',').collect();
        ratios.push(cells[1].parse::<f64>().unwrap());
        assert_eq!(cells[2].parse::<f64>().unwrap(), 2.0);
        assert_eq!(cells[3].parse::<f64>().unwrap(), 1.0);
    }
    assert_eq!(ratios.len(), 99);
    assert!(
        ratios.windows(2).all(|w| w[1] <= w[0] + 1e-12),
        "not decreasing"
    );
    assert!(ratios[0] > 1.99 && ratios[98] < 1.15);
    let zero: f64 = footer[0].split(',').nth(1).unwrap().parse().unwrap();
    assert!((zero - 2.0).abs() <= 1e-5, "footer limit_zero {zero}");
    let one: f64 = footer[1].split(',').nth(1).unwrap().parse().unwrap();
    assert!((one - 1.0).abs() <= 1e-4, "footer limit_one {one}");
}

#[test]
fn bloch_sld_ratio_is_constant_one() {
    let out = qfim(&[
        "bloch", "--f", "sld", "--r-min", "0.1", "--r-max", "0.9", "--steps", "9",
    ]);
    assert_eq!(out.status.code(), Some(0));
    for line in stdout(&out).lines().skip(1) {
        if line.starts_with("limit_") {
            continue;
        }
        let ratio: f64 = line.split(',').nth(1).unwrap().parse().unwrap();
        assert!((ratio - 1.0).abs() < 1e-10);
    }
}

#[test]
fn bloch_rejects_bad_radius_range() {
    assert_eq!(
        qfim(&["bloch", "--f", "wy", "--r-min", "0.5", "--r-max", "0.2"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        qfim(&["bloch", "--f", "wy", "--r-min", "0.0", "--r-max", "0.9"])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn search_k_witness_and_boundaries() {
    let out = qfim(&["search-k", "--f", "wy", "--k", "1.9"]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(stdout(&out).trim()).unwrap();
    assert!(v["r"].as_f64().unwrap() <= 0.436);
    assert!(v["violation"].as_f64().unwrap() > 1e-10);
    assert_eq!(v["rho"]["n"], 2);

    assert_eq!(
        qfim(&["search-k", "--f", "wy", "--k", "2"]).status.code(),
        Some(1)
    );
    assert_eq!(
        qfim(&["search-k", "--f", "wy", "--k", "0.5"]).status.code(),
        Some(2)
    );

    // mix:0.5 has the same optimal constant 2.
    let out = qfim(&["search-k", "--f", "mix:0.5", "--k", "1.9"]);
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn evolve_commuting_generator_stays_flat() {
    let rho = rho_82_file();
    let out = qfim(&[
        "evolve",
        "--rho",
        rho.to_str().unwrap(),
        "--a",
        "sigma1",
        "--h",
        "sigma1",
        "--f",
        "wy",
        "--t-max",
        "6.28",
        "--steps",
        "11",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    let summary = text.lines().last().unwrap();
    let cells: Vec<&str> = summary.split(',').collect();
    assert_eq!(cells[0], "summary");
    assert!(cells[1].parse::<f64>().unwrap() <= 1e-9);
    assert_eq!(cells[2], "true");
}

#[test]
fn evolve_flags_non_commuting_generator() {
    let out = qfim(&[
        "evolve",
        "--rho",
        "bloch:0.6,0,0",
        "--a",
        "sigma1",
        "--h",
        "sigma3",
        "--f",
        "wy",
        "--t-max",
        "3.14",
        "--steps",
        "8",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    let summary = text.lines().last().unwrap();
    let cells: Vec<&str> = summary.split(',').collect();
    assert_eq!(cells[2], "false");
    assert!(
        cells[1].parse::<f64>().unwrap() > 1e-3,
        "drift should be visible"
    );
}

#[test]
fn evolve_single_step_matches_info() {
    let rho = rho_82_file();
    let evolve_out = qfim(&[
        "evolve",
        "--rho",
        rho.to_str().unwrap(),
        "--a",
        "sigma1",
        "--h",
        "sigma3",
        "--f",
        "wy",
        "--t-max",
        "0",
        "--steps",
        "1",
    ]);
    assert_eq!(evolve_out.status.code(), Some(0));
    let text = stdout(&evolve_out);
    let rows: Vec<&str> = text.lines().collect();
    assert_eq!(rows.len(), 3); // header, one sample, summary
    let value: f64 = rows[1].split(',').nth(1).unwrap().parse().unwrap();

    let info_out = qfim(&[
        "info",
        "--rho",
        rho.to_str().unwrap(),
        "--a",
        "sigma1",
        "--f",
        "wy",
    ]);
    let v: serde_json::Value = serde_json::from_str(stdout(&info_out).trim()).unwrap();
    assert_eq!(value, v["i_f_variance_path"].as_f64().unwrap());
}

#[test]
fn csv_format_has_header_and_rows() {
    let out = qfim(&[
        "verify", "sandwich", "--f", "wy", "--n", "2", "--trials", "3", "--format", "csv",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(
        lines[0],
        "check,f_name,dim,seed,lhs,rhs,margin,tolerance,pass,details"
    );
    assert_eq!(lines.len(), 4);
    assert!(lines[1].starts_with("sandwich,wy,2,0,"));
}

#[test]
fn tol_override_is_applied() {
    // An absurdly tight tolerance forces covariance reports to fail.
    let out = qfim(&[
        "verify",
        "covariance",
        "--f",
        "wy",
        "--n",
        "3",
        "--trials",
        "3",
        "--tol",
        "1e-18",
    ]);
    assert_eq!(out.status.code(), Some(1));
    let relaxed = qfim(&[
        "verify",
        "covariance",
        "--f",
        "wy",
        "--n",
        "3",
        "--trials",
        "3",
        "--tol",
        "1e-6",
    ]);
    assert_eq!(relaxed.status.code(), Some(0));
}

#[test]
fn membership_suite_flags_are_respected() {
    let out = qfim(&[
        "verify",
        "membership",
        "--f",
        "rld",
        "--n",
        "2",
        "--trials",
        "2",
        "--seed",
        "5",
    ]);
    assert_eq!(out.status.code(), Some(0));
    for line in stdout(&out).lines() {
        let v: serde_json::Value = serde_json::from_str(line).unwrap();
        assert_eq!(v["f_name"], "rld");
        assert_eq!(v["dim"], 2);
    }
}
