use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn uvi(args: &[&str], out: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_uvi")).args(args).env("UVI_OUTPUT_DIR", out).output().unwrap()
}

fn write_config(dir: &Path, json: &str) -> String {
    let path = dir.join("config.json");
    fs::write(&path, json).unwrap();
    path.to_str().unwrap().to_string()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn run_writes_traces_and_summary() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("out");
    let cfg = write_config(
        dir.path(),
        r#"{"problem": {"name": "quadratic-ball"}, "T": 300, "seeds": [7, 8], "noise": {"bound": 0.2, "sigma_sq": 0.04}, "eval_every": 100}"#,
    );
    let o = uvi(&["run", &cfg], &out);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));

    let csv = fs::read_to_string(out.join("trace_7.csv")).unwrap();
    let lines: Vec<&str> = csv.lines().collect();
    assert_eq!(lines[0], "t,eta,z_sq,gap");
    assert_eq!(lines.len(), 301);
    assert!(lines[1].ends_with(','), "gap is empty off-schedule: {}", lines[1]);
    let row100: Vec<&str> = lines[100].split(',').collect();
    assert_eq!(row100[0], "100");
    // 17 significant digits, round-trippable
    let eta: f64 = row100[1].parse().unwrap();
    assert_eq!(format!("{eta:.16e}"), row100[1]);
    assert!(!row100[3].is_empty());

    let summary: Value = serde_json::from_str(&fs::read_to_string(out.join("summary.json")).unwrap()).unwrap();
    assert_eq!(summary["runs"].as_array().unwrap().len(), 2);
    assert!(summary["mean_gap"].as_f64().unwrap() >= 0.0);
    assert_eq!(summary["bounds"]["shape_only"], Value::Bool(true));
    assert!(summary["bounds"]["thm4_rhs"].as_f64().is_some());
    let lhs = summary["bounds"]["lemma3_lhs"].as_f64().unwrap();
    let rhs = summary["bounds"]["lemma3_rhs"].as_f64().unwrap();
    assert!(lhs <= rhs + 1e-6);
}

#[test]
fn rps_single_step_reports_zero_gap() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(dir.path(), r#"{"problem": {"name": "rps"}, "T": 1}"#);
    let o = uvi(&["run", &cfg], dir.path());
    assert!(o.status.success());
    let summary: Value = serde_json::from_str(&fs::read_to_string(dir.path().join("summary.json")).unwrap()).unwrap();
    assert!(summary["mean_gap"].as_f64().unwrap().abs() < 1e-15);
}

#[test]
fn unknown_problem_exits_2() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(dir.path(), r#"{"problem": {"name": "no-such-problem"}, "T": 10}"#);
    let o = uvi(&["run", &cfg], dir.path());
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("no-such-problem"));
}

#[test]
fn numeric_abort_exits_3_with_step() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(
        dir.path(),
        r#"{"problem": {"name": "quadratic-ball", "params": {"x0": [1e150, 0.0], "radius": 1e150}}, "T": 10, "g0": 1e-10}"#,
    );
    let o = uvi(&["run", &cfg], dir.path());
    assert_eq!(o.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&o.stderr).contains("t=1"));
}

#[test]
fn sweep_fits_the_smooth_rate() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(
        dir.path(),
        r#"{"problem": {"name": "asymmetric-2x2"}, "T": 1, "g0": 1.1774100225154747, "record_every": 500, "eval_every": 500}"#,
    );
    let o = uvi(&["sweep", &cfg, "--T", "500,1000,2000,4000"], dir.path());
    assert!(o.status.success());
    let summary: Value = serde_json::from_str(&fs::read_to_string(dir.path().join("summary.json")).unwrap()).unwrap();
    assert_eq!(summary["points"].as_array().unwrap().len(), 4);
    assert!(summary["rate_fit"]["exponent"].as_f64().unwrap() <= -0.8);
    assert!(dir.path().join("T_4000").join("trace_0.csv").exists());
}

#[test]
fn verify_inequalities_fails_only_on_the_martingale_constant() {
    let dir = tempfile::tempdir().unwrap();
    let o = uvi(&["verify", "--suite", "lemmas", "--seed", "42"], dir.path());
    assert_eq!(o.status.code(), Some(1));
    let text = stdout(&o);
    let failing: Vec<&str> = text.lines().filter(|l| l.starts_with("FAIL")).collect();
    assert_eq!(failing.len(), 2, "{text}");
    assert!(failing.iter().all(|l| l.contains("prop1") && !l.contains("proof constant")));
    for name in ["lemma4", "lemma5", "lemma7", "lemma8"] {
        assert!(text.lines().any(|l| l.starts_with("PASS") && l.contains(name)));
    }
    assert!(text.contains("counterexample"));
}

#[test]
fn verify_invariants_passes() {
    let dir = tempfile::tempdir().unwrap();
    let o = uvi(&["verify", "--suite", "invariants", "--seed", "42"], dir.path());
    assert!(o.status.success(), "{}", stdout(&o));
    assert!(!stdout(&o).contains("FAIL"));
}

#[test]
fn malformed_suite_exits_2() {
    let dir = tempfile::tempdir().unwrap();
    let o = uvi(&["verify", "--suite", "everything"], dir.path());
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn reruns_are_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(
        dir.path(),
        r#"{"problem": {"name": "l1-ball"}, "T": 400, "noise": {"bound": 0.5}, "seeds": [0, 1, 2, 3], "eval_every": 20}"#,
    );
    let (a, b) = (dir.path().join("a"), dir.path().join("b"));
    assert!(uvi(&["run", &cfg], &a).status.success());
    assert!(uvi(&["run", &cfg], &b).status.success());
    for s in 0..4 {
        let name = format!("trace_{s}.csv");
        assert_eq!(fs::read(a.join(&name)).unwrap(), fs::read(b.join(&name)).unwrap());
    }
    assert_eq!(fs::read(a.join("summary.json")).unwrap(), fs::read(b.join("summary.json")).unwrap());
}
