//! End-to-end tests of the `ipdt` binary: exit codes, output formats, file
//! side effects, and scenario/trace file round-trips.

use std::path::Path;
use std::process::{Command, Output};

use ipdt_cli::scenario::{builtin_scenario, DobMode, ScenarioSpec};
use ipdt_cli::trace_io::{import_trace, trace_to_string};
use tempfile::TempDir;

const BIN: &str = env!("CARGO_BIN_EXE_ipdt");

fn run(args: &[&str]) -> Output {
    Command::new(BIN)
        .args(args)
        .env_remove("IPDT_OUT_DIR")
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("stdout is UTF-8")
}

fn stderr(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).expect("stderr is UTF-8")
}

/// Extracts the second column of the `name value` table row starting with
/// `name`, parsed as f64.
fn table_value(text: &str, name: &str) -> f64 {
    let line = text
        .lines()
        .find(|l| l.split_whitespace().next() == Some(name))
        .unwrap_or_else(|| panic!("no table row named {name} in:\n{text}"));
    line.split_whitespace()
        .nth(1)
        .and_then(|v| v.parse().ok())
        .unwrap_or_else(|| panic!("row {name} has no numeric value: {line}"))
}

// ---------------------------------------------------------------------------
// Exit-code contract
// ---------------------------------------------------------------------------

#[test]
fn help_and_version_exit_zero() {
    for args in [&["--help"][..], &["--version"][..], &["tune", "--help"][..]] {
        let out = run(args);
        assert_eq!(out.status.code(), Some(0), "{args:?} should exit 0");
    }
    let version = run(&["--version"]);
    assert!(stdout(&version).contains(env!("CARGO_PKG_VERSION")));
}

#[test]
fn validation_errors_exit_one() {
    // Domain validation: settling time must be positive.
    let out = run(&["tune", "--ts", "0"]);
    assert_eq!(out.status.code(), Some(1));
    let err = stderr(&out);
    assert!(
        err.contains("settling time") && err.contains("positive"),
        "stderr should explain the invalid spec: {err}"
    );

    // Usage errors from argument parsing share the validation exit code.
    let usage = run(&["tune"]); // missing required --ts
    assert_eq!(usage.status.code(), Some(1));
    let unknown = run(&["no-such-command"]);
    assert_eq!(unknown.status.code(), Some(1));

    // Unknown scenario name.
    let missing = run(&["simulate", "--scenario", "no_such_scenario"]);
    assert_eq!(missing.status.code(), Some(1));
    assert!(stderr(&missing).contains("no_such_scenario"));

    // Unknown method in a compare list.
    let method = run(&[
        "compare",
        "--scenario",
        "step_tracking",
        "--methods",
        "nonexistent",
    ]);
    assert_eq!(method.status.code(), Some(1));
}

#[test]
fn divergent_simulation_exits_two() {
    // A proportional gain absurdly far beyond the dead-time stability limit
    // makes the loop signals overflow within the horizon; the simulator
    // reports divergence rather than returning garbage indices.
    let dir = TempDir::new().unwrap();
    let mut spec = builtin_scenario("step_tracking").unwrap();
    spec.name = "unstable".to_owned();
    spec.method = None;
    spec.params = Some(ipdt_cli::scenario::ParamsSpec {
        kc: 1e20,
        ti: None,
        td: None,
    });
    spec.dob = DobMode::Off;
    let path = dir.path().join("unstable.toml");
    std::fs::write(&path, spec.to_toml().unwrap()).unwrap();

    let out = run(&[
        "--out-dir",
        dir.path().to_str().unwrap(),
        "simulate",
        "--scenario",
        path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(2), "stderr: {}", stderr(&out));
    assert!(stderr(&out).to_lowercase().contains("diverged"));
}

// ---------------------------------------------------------------------------
// tune output
// ---------------------------------------------------------------------------

#[test]
fn tune_table_reports_designed_parameters() {
    let out = run(&["tune", "--kp", "0.0506", "--d", "6", "--ts", "40"]);
    assert_eq!(out.status.code(), Some(0), "stderr: {}", stderr(&out));
    let text = stdout(&out);
    assert!((table_value(&text, "kc") - 1.5321).abs() <= 5e-4, "{text}");
    assert!((table_value(&text, "td") - 1.0343).abs() <= 5e-4, "{text}");
}

#[test]
fn tune_json_round_trips_through_serde() {
    let out = run(&["--format", "json", "tune", "--ts", "40"]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).expect("valid JSON");
    assert!((v["kc"].as_f64().unwrap() - 1.5321).abs() <= 5e-4);
    assert!((v["td"].as_f64().unwrap() - 1.0343).abs() <= 5e-4);
    assert_eq!(v["td_sign_flipped"].as_bool(), Some(false));
    // Margin conventions accepted as alternates: 6.02 dB ~= ratio 2,
    // 180 deg = pi rad.
    let db = run(&[
        "--format", "json", "tune", "--ts", "40", "--am-db", "6.0206",
    ]);
    let vdb: serde_json::Value = serde_json::from_str(&stdout(&db)).unwrap();
    assert!((vdb["kc"].as_f64().unwrap() - v["kc"].as_f64().unwrap()).abs() < 1e-4);
}

// ---------------------------------------------------------------------------
// compare output formats
// ---------------------------------------------------------------------------

#[test]
fn compare_csv_lists_every_method_once() {
    let out = run(&["--format", "csv", "compare", "--scenario", "step_tracking"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 5, "header plus one row per method:\n{text}");
    let commas = lines[0].matches(',').count();
    assert!(lines.iter().all(|l| l.matches(',').count() == commas));
    for label in [
        "wang-cluett",
        "sree-chidambaram",
        "ali-majhi",
        "proposed-pd",
    ] {
        assert_eq!(
            lines.iter().filter(|l| l.starts_with(label)).count(),
            1,
            "{label} appears exactly once"
        );
    }
}

#[test]
fn compare_json_preserves_request_order() {
    let out = run(&[
        "--format",
        "json",
        "compare",
        "--scenario",
        "step_tracking",
        "--methods",
        "ali-majhi,wang-cluett",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    let rows = v["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 2);
    assert_eq!(rows[0]["method"].as_str(), Some("ali-majhi"));
    assert_eq!(rows[1]["method"].as_str(), Some("wang-cluett"));
    assert!(rows[0]["indices"]["ise"].as_f64().unwrap() > 0.0);
}

// ---------------------------------------------------------------------------
// File side effects
// ---------------------------------------------------------------------------

#[test]
fn out_dir_env_variable_is_honored() {
    let dir = TempDir::new().unwrap();
    let out = Command::new(BIN)
        .args(["simulate", "--scenario", "step_tracking"])
        .env("IPDT_OUT_DIR", dir.path())
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0), "stderr: {}", stderr(&out));
    let trace = dir.path().join("step_tracking_proposed-pd.csv");
    assert!(trace.is_file(), "trace written into IPDT_OUT_DIR");
}

#[test]
fn compare_traces_flag_writes_one_file_per_method() {
    let dir = TempDir::new().unwrap();
    let out = run(&[
        "--out-dir",
        dir.path().to_str().unwrap(),
        "compare",
        "--scenario",
        "regulatory",
        "--traces",
    ]);
    assert_eq!(out.status.code(), Some(0), "stderr: {}", stderr(&out));
    for label in [
        "wang-cluett",
        "sree-chidambaram",
        "ali-majhi",
        "proposed-pd",
    ] {
        assert!(dir.path().join(format!("regulatory_{label}.csv")).is_file());
    }
}

#[test]
fn sweep_plot_script_references_written_traces() {
    let dir = TempDir::new().unwrap();
    let out = run(&[
        "--out-dir",
        dir.path().to_str().unwrap(),
        "sweep",
        "--scenario",
        "sweep_am",
        "--plot-script",
    ]);
    assert_eq!(out.status.code(), Some(0), "stderr: {}", stderr(&out));
    let script_path = dir.path().join("sweep_am_plot.gp");
    let script = std::fs::read_to_string(&script_path).unwrap();
    for line in script.lines().filter(|l| l.contains(".csv")) {
        for token in line.split('\'').filter(|t| t.ends_with(".csv")) {
            assert!(
                dir.path().join(token).is_file(),
                "plot script references missing file {token}"
            );
        }
    }
}

// ---------------------------------------------------------------------------
// Round-trips
// ---------------------------------------------------------------------------

#[test]
fn scenario_toml_round_trip_is_a_fixed_point() {
    for name in [
        "step_tracking",
        "servo_staircase",
        "regulatory",
        "servo_plus_regulatory",
        "sweep_ts",
        "sweep_am",
    ] {
        let spec = builtin_scenario(name).unwrap();
        let text = spec.to_toml().unwrap();
        let back = ScenarioSpec::from_toml(&text).unwrap();
        assert_eq!(back, spec, "{name} value round-trip");
        assert_eq!(back.to_toml().unwrap(), text, "{name} text fixed point");
    }
}

#[test]
fn scenario_file_equivalent_to_builtin() {
    // A scenario written to a file must produce byte-identical output to the
    // builtin it was copied from.
    let dir = TempDir::new().unwrap();
    let spec = builtin_scenario("step_tracking").unwrap();
    let path = dir.path().join("copy.toml");
    std::fs::write(&path, spec.to_toml().unwrap()).unwrap();

    let from_builtin = run(&["--format", "csv", "compare", "--scenario", "step_tracking"]);
    let from_file = run(&[
        "--format",
        "csv",
        "compare",
        "--scenario",
        path.to_str().unwrap(),
    ]);
    assert_eq!(from_builtin.status.code(), Some(0));
    assert_eq!(from_file.status.code(), Some(0));
    assert_eq!(stdout(&from_builtin), stdout(&from_file));
}

#[test]
fn exported_trace_reimports_byte_identically() {
    let dir = TempDir::new().unwrap();
    let out = run(&[
        "--out-dir",
        dir.path().to_str().unwrap(),
        "simulate",
        "--scenario",
        "regulatory",
    ]);
    assert_eq!(out.status.code(), Some(0), "stderr: {}", stderr(&out));
    let path = dir.path().join("regulatory_proposed-pd.csv");
    let text = std::fs::read_to_string(&path).unwrap();
    let trace = import_trace(Path::new(&path)).unwrap();
    assert_eq!(trace_to_string(&trace), text, "full-precision round-trip");
    // The disturbance estimate column is live in this scenario.
    assert!(trace.d_hat().iter().any(|&v| v != 0.0));
}

// ---------------------------------------------------------------------------
// Overrides
// ---------------------------------------------------------------------------

#[test]
fn global_overrides_change_the_run() {
    let dir = TempDir::new().unwrap();
    let out_dir = dir.path().to_str().unwrap();

    // Horizon override shortens the reported window.
    let out = run(&[
        "--out-dir",
        out_dir,
        "--format",
        "json",
        "--horizon",
        "50",
        "simulate",
        "--scenario",
        "step_tracking",
    ]);
    assert_eq!(out.status.code(), Some(0), "stderr: {}", stderr(&out));
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["horizon"].as_f64(), Some(50.0));

    // Forcing the observer on in a disturbance-free scenario changes nothing
    // physical but must be reflected in the row.
    let dob = run(&[
        "--out-dir",
        out_dir,
        "--format",
        "json",
        "--dob",
        "on",
        "simulate",
        "--scenario",
        "step_tracking",
    ]);
    let vd: serde_json::Value = serde_json::from_str(&stdout(&dob)).unwrap();
    assert_eq!(vd["rows"][0]["dob"].as_bool(), Some(true));

    // Invalid observer mode is a usage error.
    let bad = run(&[
        "--dob",
        "sometimes",
        "simulate",
        "--scenario",
        "step_tracking",
    ]);
    assert_eq!(bad.status.code(), Some(1));
}
