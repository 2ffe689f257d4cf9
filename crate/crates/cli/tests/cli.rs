//! Binary-level tests: exit codes, file outputs, and rerun determinism
//! through the `reboot` executable itself.

use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn reboot(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_reboot"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn exit_code(out: &Output) -> i32 {
    out.status.code().expect("no signal")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

fn stderr(out: &Output) -> String {
    String::from_utf8_lossy(&out.stderr).into_owned()
}

fn write_config(dir: &Path, name: &str, text: &str) -> String {
    let path = dir.join(name);
    fs::write(&path, text).unwrap();
    path.to_str().unwrap().to_owned()
}

const SMALL_CONFIG: &str = r#"{
    "experiments": [{
        "label": "small",
        "instance": {"kind": "two_arm_shift", "c": 0.0},
        "policies": [{"kind": "ftl"}, {"kind": "reboot_gaussian", "sigma_a": 1.5}],
        "horizon": 300
    }],
    "runs": 8,
    "seed": 4
}"#;

#[test]
fn run_writes_csv_per_policy_and_summary() {
    let dir = tempfile::tempdir().unwrap();
    let config = write_config(dir.path(), "cfg.json", SMALL_CONFIG);
    let out_dir = dir.path().join("out");
    let out = reboot(&[
        "run",
        "--config",
        &config,
        "--out",
        out_dir.to_str().unwrap(),
    ]);
    assert_eq!(exit_code(&out), 0, "stderr: {}", stderr(&out));

    for name in ["small__ftl.csv", "small__reboot-1.5.csv", "summary.json"] {
        assert!(out_dir.join(name).exists(), "missing {name}");
    }
    let csv = fs::read_to_string(out_dir.join("small__ftl.csv")).unwrap();
    let lines: Vec<&str> = csv.lines().collect();
    assert_eq!(lines[0], "round,mean_regret,stderr");
    assert_eq!(lines.len(), 301);
}

#[test]
fn rerun_with_same_seed_is_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    let config = write_config(dir.path(), "cfg.json", SMALL_CONFIG);
    let out_a = dir.path().join("a");
    let out_b = dir.path().join("b");
    for out_dir in [&out_a, &out_b] {
        let out = reboot(&[
            "run",
            "--config",
            &config,
            "--out",
            out_dir.to_str().unwrap(),
        ]);
        assert_eq!(exit_code(&out), 0);
    }
    for name in ["small__ftl.csv", "small__reboot-1.5.csv"] {
        let a = fs::read(out_a.join(name)).unwrap();
        let b = fs::read(out_b.join(name)).unwrap();
        assert_eq!(a, b, "{name} differs between reruns");
    }
    // A different seed changes the stochastic policy's output.
    let out_c = dir.path().join("c");
    let out = reboot(&[
        "run",
        "--config",
        &config,
        "--seed",
        "5",
        "--out",
        out_c.to_str().unwrap(),
    ]);
    assert_eq!(exit_code(&out), 0);
    let a = fs::read(out_a.join("small__reboot-1.5.csv")).unwrap();
    let c = fs::read(out_c.join("small__reboot-1.5.csv")).unwrap();
    assert_ne!(a, c, "seed override had no effect");
}

#[test]
fn single_run_config_exits_2() {
    let dir = tempfile::tempdir().unwrap();
    let config = write_config(
        dir.path(),
        "cfg.json",
        &SMALL_CONFIG.replace("\"runs\": 8", "\"runs\": 1"),
    );
    let out = reboot(&["run", "--config", &config]);
    assert_eq!(exit_code(&out), 2);
    assert!(stderr(&out).contains("2 runs"), "stderr: {}", stderr(&out));
}

#[test]
fn missing_config_exits_2_and_unwritable_out_exits_3() {
    let out = reboot(&["run", "--config", "/nonexistent/cfg.json"]);
    assert_eq!(exit_code(&out), 2);

    let dir = tempfile::tempdir().unwrap();
    let config = write_config(dir.path(), "cfg.json", SMALL_CONFIG);
    // A file where the output directory should be makes create_dir_all fail.
    let blocker = dir.path().join("blocked");
    fs::write(&blocker, "not a directory").unwrap();
    let out = reboot(&[
        "run",
        "--config",
        &config,
        "--out",
        blocker.to_str().unwrap(),
    ]);
    assert_eq!(exit_code(&out), 3, "stderr: {}", stderr(&out));
}

#[test]
fn malformed_config_exits_2() {
    let dir = tempfile::tempdir().unwrap();
    let config = write_config(dir.path(), "cfg.json", "{ not json");
    let out = reboot(&["run", "--config", &config]);
    assert_eq!(exit_code(&out), 2);
}

#[test]
fn bench_rejects_unknown_policy_with_exit_2() {
    let out = reboot(&[
        "bench",
        "--arms",
        "3",
        "--horizon",
        "50",
        "--policies",
        "ts,ucb1",
    ]);
    assert_eq!(exit_code(&out), 2);
    assert!(stderr(&out).contains("unknown policy"));
}

#[test]
fn bench_prints_a_timing_table() {
    let out = reboot(&[
        "bench",
        "--arms",
        "3",
        "--horizon",
        "200",
        "--policies",
        "ts,reboot=1.5,phe",
        "--reps",
        "3",
    ]);
    assert_eq!(exit_code(&out), 0, "stderr: {}", stderr(&out));
    let text = stdout(&out);
    assert!(text.contains("ts"));
    assert!(text.contains("reboot-1.5"));
    assert!(text.contains("phe-2.1"));
}

#[test]
fn theory_reports_constants_and_honors_domains() {
    let out = reboot(&[
        "theory",
        "--sigma-a",
        "1.7",
        "--horizon",
        "10000",
        "--gap",
        "1",
    ]);
    assert_eq!(exit_code(&out), 0);
    let text = stdout(&out);
    assert!(text.contains("1.673640"));
    assert!(text.contains("2718.912"));
    assert!(text.contains("22 of 22 tail checks hold"));

    let bad = reboot(&[
        "theory",
        "--sigma-a",
        "1.2",
        "--horizon",
        "10000",
        "--gap",
        "1",
    ]);
    assert_eq!(exit_code(&bad), 2);
    assert!(stderr(&bad).contains("sigma_a > 1.5"));
}

#[test]
fn theory_json_output_parses() {
    let out = reboot(&[
        "theory",
        "--sigma-a",
        "1.7",
        "--horizon",
        "10000",
        "--gap",
        "1",
        "--json",
    ]);
    assert_eq!(exit_code(&out), 0);
    let value: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(value["checks"].as_array().unwrap().len(), 22);
    assert!((value["c2"].as_f64().unwrap() - 2718.912).abs() < 1e-6);
}
