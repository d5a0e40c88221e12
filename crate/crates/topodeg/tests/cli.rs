//! End-to-end coverage of the binary: flag wiring for every subcommand,
//! exit codes, and the JSON report surface. Most tests drive the in-process
//! entry points; a few spawn the real executable for the process contract.

use std::process::Output;

use clap::Parser;
use topodeg::cli::{execute, Cli, CliError};

fn parse(args: &[&str]) -> Cli {
    Cli::try_parse_from(std::iter::once("topodeg").chain(args.iter().copied()))
        .expect("args parse")
}

fn spawn(args: &[&str]) -> Output {
    std::process::Command::new(env!("CARGO_BIN_EXE_topodeg"))
        .args(args)
        .output()
        .expect("binary runs")
}

#[test]
fn every_subcommand_parses() {
    let lines: &[&[&str]] = &[
        &["winding", "--map", "power:3", "--grid", "256", "--regular-value", "0.5"],
        &["sphere-degree", "--map", "antipodal", "--grid", "16,16"],
        &["vf-index", "--field", "dipole", "--surface", "circle:0,0,3"],
        &["vf-index", "--field", "expr:vx=x,vy=y,vz=z", "--surface", "ellipsoid:0,0,0,1,2,3"],
        &["vf-point-index", "--field", "saddle", "--point", "0,0", "--radius", "0.4"],
        &["additivity", "--field", "dipole", "--outer", "ellipse:0,0,3,2", "--radius", "0.2"],
        &["monopole", "--field", "twist:-2"],
        &["instanton", "--map", "product:1,2", "--grid", "8,8,16"],
        &["mc-identity", "--map", "omega:2", "--samples", "10", "--seed", "9", "--bound", "1e-6"],
        &["product-charge", "--map1", "omega:1", "--map2", "omega:-2", "--grid", "8,8,16"],
        &["chern-ball", "--field", "bpst:1", "--radius", "6", "--grid", "24,8,8,12"],
        &["euler", "--mesh", "icosahedron"],
        &["angle-defect", "--mesh", "octahedron"],
        &["genus", "--mesh", "genus2"],
        &["gauss-bonnet-rev", "--surface", "torus:3,1"],
        &["poincare-hopf", "--field", "sphere-rotation-z"],
        &["omega-normalize", "--dim", "3", "--grid", "8,8,16", "--tol", "0.01"],
        &["--json", "winding", "--map", "power:1"],
    ];
    for line in lines {
        parse(line);
    }
}

#[test]
fn json_report_shape() {
    let run = execute(&parse(&["sphere-degree", "--map", "twist:2", "--grid", "16,16"]))
        .expect("runs");
    let v = serde_json::to_value(&run.report).expect("serializes");
    assert_eq!(v["command"], "sphere-degree");
    assert_eq!(v["input"], "twist:2");
    assert_eq!(v["integer"], 2);
    assert_eq!(v["grid"], "16,16");
    assert!(v["raw"].as_f64().is_some());
    assert!(v["residual"].as_f64().is_some());
    assert!(v.get("checks").is_none(), "no checks for a plain degree");
    assert!(v.get("error").is_none());
}

#[test]
fn product_charge_reports_all_three() {
    let run = execute(&parse(&[
        "product-charge",
        "--map1",
        "omega:2",
        "--map2",
        "omega:-1",
        "--grid",
        "8,8,16",
    ]))
    .expect("runs");
    assert!(run.passed);
    assert_eq!(run.text.lines().next(), Some("Q1 = 2, Q2 = -1, Q(product) = 1"));
    let details = run.report.details.expect("details");
    assert_eq!(details["q1"]["snapped"], 2);
    assert_eq!(details["q2"]["snapped"], -1);
    assert_eq!(details["q_product"]["snapped"], 1);
}

#[test]
fn poincare_hopf_lists_zeros() {
    let run = execute(&parse(&["poincare-hopf", "--field", "torus-height-gradient"]))
        .expect("runs");
    assert!(run.passed);
    assert_eq!(run.report.integer, Some(0));
    let details = run.report.details.expect("details");
    assert_eq!(details["zeros"].as_array().expect("array").len(), 4);
    assert!(run.text.contains("index sum = 0"));
    assert!(run.text.contains("check matches-chi: ok"));
}

#[test]
fn failed_check_is_reported_not_erred() {
    // An absurd bound turns the residual check into a failure while the
    // computation itself still succeeds.
    let run = execute(&parse(&[
        "mc-identity",
        "--map",
        "omega:1",
        "--samples",
        "5",
        "--bound",
        "1e-30",
    ]))
    .expect("still a result");
    assert!(!run.passed);
    assert!(run.text.contains("check bound: FAIL"));
}

#[test]
fn off_files_round_trip_through_the_cli() {
    let dir = tempfile::tempdir().expect("temp dir");
    let path = dir.path().join("tet.off");
    let mesh = topodeg::surfaces::corpus::tetrahedron();
    topodeg::surfaces::save_off(&mesh, &path).expect("writes");

    let arg = path.to_str().expect("utf8 path");
    let run = execute(&parse(&["euler", "--mesh", arg])).expect("runs");
    assert_eq!(run.report.integer, Some(2));

    // A tampered file fails validation at load time, not at parse time.
    let broken = dir.path().join("broken.off");
    let text = std::fs::read_to_string(&path).expect("readable");
    let without_last_face = text.trim_end().rsplit_once('\n').expect("lines").0;
    std::fs::write(&broken, without_last_face).expect("writes");
    match execute(&parse(&["euler", "--mesh", broken.to_str().expect("utf8")])) {
        Err(CliError::Run(report)) => {
            assert!(report.error.is_some());
        }
        other => panic!("expected a run error, got {other:?}"),
    }
}

#[test]
fn spawned_binary_emits_json_and_exit_zero() {
    let out = spawn(&["winding", "--map", "power:2", "--json"]);
    assert!(out.status.success(), "{out:?}");
    let v: serde_json::Value =
        serde_json::from_slice(&out.stdout).expect("stdout is a JSON report");
    assert_eq!(v["command"], "winding");
    assert_eq!(v["integer"], 2);
    assert!(v["elapsed_ms"].as_u64().is_some());
}

#[test]
fn spawned_binary_usage_errors_exit_two() {
    let out = spawn(&["winding", "--map", "nope:1"]);
    assert_eq!(out.status.code(), Some(2), "{out:?}");
    assert!(String::from_utf8_lossy(&out.stderr).contains("error"));
    assert!(out.stdout.is_empty());

    // clap's own parse failures use the same code
    let out = spawn(&["winding", "--no-such-flag"]);
    assert_eq!(out.status.code(), Some(2), "{out:?}");
}

#[test]
fn spawned_binary_run_errors_exit_one_with_json_report() {
    let out = spawn(&["euler", "--mesh", "does-not-exist.off", "--json"]);
    assert_eq!(out.status.code(), Some(1), "{out:?}");
    let v: serde_json::Value =
        serde_json::from_slice(&out.stdout).expect("stdout is a JSON report");
    assert!(v["error"].as_str().is_some());
}

#[test]
fn spawned_binary_failed_check_exits_one() {
    let out = spawn(&["mc-identity", "--map", "omega:1", "--samples", "5", "--bound", "1e-30"]);
    assert_eq!(out.status.code(), Some(1), "{out:?}");
    assert!(String::from_utf8_lossy(&out.stdout).contains("FAIL"));
}

#[test]
fn spawned_binary_reads_the_tolerance_env() {
    let out = std::process::Command::new(env!("CARGO_BIN_EXE_topodeg"))
        .args(["winding", "--map", "power:1"])
        .env("TOPO_DEFAULT_TOL", "not-a-number")
        .output()
        .expect("binary runs");
    assert_eq!(out.status.code(), Some(2), "{out:?}");

    let out = std::process::Command::new(env!("CARGO_BIN_EXE_topodeg"))
        .args(["winding", "--map", "power:1"])
        .env("TOPO_DEFAULT_TOL", "0.2")
        .output()
        .expect("binary runs");
    assert_eq!(out.status.code(), Some(0), "{out:?}");
}
