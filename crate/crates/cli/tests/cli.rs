//! End-to-end checks of the command-line surface: exit codes, report
//! shapes, CSV output, checkpoint flow, and report determinism.

use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn robin(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_robin"))
        .args(args)
        .env_remove("ROBIN_PRECISION")
        .output()
        .expect("binary runs")
}

fn json_report(path: &Path) -> Value {
    serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap()
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("no signal")
}

#[test]
fn certify_proved_exit_zero() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("r.json");
    let out = robin(&["--json", path.to_str().unwrap(), "certify", "--t", "20"]);
    assert_eq!(
        code(&out),
        0,
        "stderr: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    let v = json_report(&path);
    assert_eq!(v["kind"], "certify");
    assert_eq!(v["result"]["status"], "Proved");
    assert!(v["result"]["margin_b"].as_f64().unwrap() > 0.0);
    assert!(v["result"]["margin_inf"].as_f64().unwrap() > 0.0);
}

#[test]
fn certify_failed_exit_one() {
    let out = robin(&["certify", "--t", "21"]);
    assert_eq!(code(&out), 1);
}

#[test]
fn certify_rejects_t_one_with_usage_code() {
    let out = robin(&["certify", "--t", "1"]);
    assert_eq!(code(&out), 64);
}

#[test]
fn usage_errors_exit_64() {
    assert_eq!(code(&robin(&["certify"])), 64); // --t is mandatory
    assert_eq!(code(&robin(&["no-such-command"])), 64);
    assert_eq!(
        code(&robin(&["--precision", "40", "certify", "--t", "2"])),
        64
    );
    assert_eq!(code(&robin(&["small-scan", "--limit", "5000"])), 64);
    assert_eq!(
        code(&robin(&[
            "theta-check",
            "--x-min",
            "598",
            "--x-max",
            "10000"
        ])),
        64
    );
}

#[test]
fn resource_errors_exit_69() {
    // Beyond the supported scan maximum of 2^33.
    assert_eq!(code(&robin(&["small-scan", "--limit", "9000000000"])), 69);
}

#[test]
fn io_errors_exit_74() {
    let out = robin(&[
        "--json",
        "/nonexistent-dir/report.json",
        "certify",
        "--t",
        "2",
    ]);
    assert_eq!(code(&out), 74);
}

#[test]
fn help_and_version_exit_zero() {
    assert_eq!(code(&robin(&["--help"])), 0);
    assert_eq!(code(&robin(&["--version"])), 0);
    assert_eq!(code(&robin(&["certify", "--help"])), 0);
}

#[test]
fn small_scan_reports_the_counterexamples() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("scan.json");
    let out = robin(&[
        "--json",
        path.to_str().unwrap(),
        "small-scan",
        "--limit",
        "10000",
    ]);
    assert_eq!(code(&out), 0);
    let v = json_report(&path);
    let ce = v["result"]["counterexamples"].as_array().unwrap();
    assert_eq!(ce.len(), 26);
    assert_eq!(v["result"]["max_counterexample"], 5040);
}

#[test]
fn theta_check_passes_and_reports() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("theta.json");
    let out = robin(&[
        "--json",
        path.to_str().unwrap(),
        "theta-check",
        "--x-max",
        "100000",
    ]);
    assert_eq!(code(&out), 0);
    let v = json_report(&path);
    assert_eq!(v["result"]["passed"], true);
    assert!(v["result"]["min_slack"].as_f64().unwrap() > 0.0);
}

#[test]
fn mertens_check_small() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("mertens.json");
    let out = robin(&[
        "--json",
        path.to_str().unwrap(),
        "mertens-check",
        "--limit",
        "200000",
        "--samples",
        "10",
    ]);
    assert_eq!(code(&out), 0);
    let v = json_report(&path);
    assert_eq!(v["result"]["passed"], true);
    assert!(v["result"]["lower_min_gap"].as_f64().unwrap() > 0.0);
}

#[test]
fn g_table_writes_csv() {
    let dir = tempfile::tempdir().unwrap();
    let json = dir.path().join("g.json");
    let csv = dir.path().join("g.csv");
    let out = robin(&[
        "--json",
        json.to_str().unwrap(),
        "g-table",
        "--t",
        "2",
        "--grid",
        "16",
        "--csv",
        csv.to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 0);
    let v = json_report(&json);
    assert_eq!(v["result"]["proved_nonincreasing"], true);
    let table = std::fs::read_to_string(&csv).unwrap();
    let lines: Vec<&str> = table.lines().collect();
    assert_eq!(lines[0], "p,t,g_lo,g_hi");
    assert_eq!(lines.len(), 17);
    // Column g_hi is non-increasing down the table.
    let his: Vec<f64> = lines[1..]
        .iter()
        .map(|l| l.split(',').nth(3).unwrap().parse().unwrap())
        .collect();
    assert!(his.windows(2).all(|w| w[1] <= w[0]));
}

#[test]
fn max_t_scan_with_reduced_frontier() {
    let dir = tempfile::tempdir().unwrap();
    let json = dir.path().join("maxt.json");
    let csv = dir.path().join("maxt.csv");
    let out = robin(&[
        "--json",
        json.to_str().unwrap(),
        "max-t",
        "--switch-prime",
        "1000003",
        "--csv",
        csv.to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 0);
    let v = json_report(&json);
    let t_star = v["result"]["max_certifiable_t"].as_u64().unwrap();
    assert!((2..20).contains(&t_star), "t* = {t_star}");
    let table = std::fs::read_to_string(&csv).unwrap();
    assert!(table.starts_with("t,status,margin_b,margin_inf\n"));
    assert_eq!(table.lines().count() as u64, t_star + 1); // header + rows incl. failure
}

#[test]
fn ca_run_and_checkpoint_resume() {
    let dir = tempfile::tempdir().unwrap();
    let json1 = dir.path().join("ca1.json");
    let ckpt = dir.path().join("ca.ckpt");
    let out = robin(&[
        "--json",
        json1.to_str().unwrap(),
        "ca",
        "--target-exp",
        "2",
        "--checkpoint",
        ckpt.to_str().unwrap(),
        "--checkpoint-every",
        "50",
        "--track-exact",
    ]);
    assert_eq!(
        code(&out),
        0,
        "stderr: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    let v = json_report(&json1);
    assert_eq!(v["result"]["ri_holds_beyond_5040"], true);
    assert_eq!(
        v["result"]["violations"],
        serde_json::json!([2, 6, 12, 60, 120, 360, 2520, 5040])
    );
    assert!(v["result"]["min_margin_beyond_5040"].as_f64().unwrap() > 0.0);
    assert!(ckpt.exists());

    // Resume from the checkpoint and push further.
    let json2 = dir.path().join("ca2.json");
    let out = robin(&[
        "--json",
        json2.to_str().unwrap(),
        "ca",
        "--target-exp",
        "3",
        "--resume",
        ckpt.to_str().unwrap(),
    ]);
    assert_eq!(
        code(&out),
        0,
        "stderr: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    let v2 = json_report(&json2);
    assert!(v2["result"]["steps"].as_u64().unwrap() > v["result"]["steps"].as_u64().unwrap());
    assert_eq!(v2["result"]["ri_holds_beyond_5040"], true);
}

fn normalized(path: &Path) -> String {
    let mut v = json_report(path);
    v["timestamp_unix"] = Value::from(0);
    if let Some(r) = v.get_mut("result") {
        if r.get("elapsed_ms").is_some() {
            r["elapsed_ms"] = Value::from(0);
        }
    }
    serde_json::to_string_pretty(&v).unwrap()
}

#[test]
fn identical_config_gives_identical_reports() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.json");
    let b = dir.path().join("b.json");
    for path in [&a, &b] {
        let out = robin(&[
            "--json",
            path.to_str().unwrap(),
            "small-scan",
            "--limit",
            "20000",
        ]);
        assert_eq!(code(&out), 0);
    }
    assert_eq!(normalized(&a), normalized(&b));

    for path in [&a, &b] {
        let out = robin(&["--json", path.to_str().unwrap(), "certify", "--t", "5"]);
        assert_eq!(code(&out), 0);
    }
    assert_eq!(normalized(&a), normalized(&b));
}

#[test]
fn precision_env_var_is_honored() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("r.json");
    let out = Command::new(env!("CARGO_BIN_EXE_robin"))
        .args(["--json", path.to_str().unwrap(), "certify", "--t", "2"])
        .env("ROBIN_PRECISION", "128")
        .output()
        .unwrap();
    assert_eq!(code(&out), 0);
    let v = json_report(&path);
    assert_eq!(v["result"]["precision"], 128);
}
