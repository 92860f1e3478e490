use std::path::PathBuf;
use std::process::{Command, Output};

fn dualities(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_dualities")).args(args).env("DUALITIES_WORKERS", "2").output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn scratch(name: &str) -> PathBuf {
    std::env::temp_dir().join(format!("dualities-cli-{}-{name}", std::process::id()))
}

const SMALL: &[&str] = &["--max-dim", "2", "--max-len", "2", "--max-set", "2", "--trials", "3"];

#[test]
fn eq1_check_passes() {
    let o = dualities(&[&["check", "--id", "EQ1", "--seed", "4"], SMALL].concat());
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("PASS"));
}

#[test]
fn constant_tp_signs_fail_with_indices() {
    let o = dualities(&["check", "--id", "Table2.row14", "--set", "tp1=+1", "--set", "tp2=+1", "--json"]);
    assert_eq!(o.status.code(), Some(1));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["verdict"], "FAIL");
    assert_eq!(v["failure"]["counterexample"]["kind"], "indices");
    assert_eq!(v["failure"]["counterexample"]["data"].as_array().unwrap().len(), 2);
}

#[test]
fn unknown_id_exits_with_error() {
    let o = dualities(&["check", "--id", "D99"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("D99"));
}

#[test]
fn zero_trials_is_flagged() {
    let o = dualities(&["check", "--id", "D26", "--trials", "0"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("no trials"));
}

#[test]
fn saved_failure_replays() {
    let path = scratch("report.json");
    let p = path.to_str().unwrap();
    let o = dualities(&[&["check", "--id", "D4", "--seed", "3", "--flip", "th2", "--out", p], SMALL].concat());
    assert_eq!(o.status.code(), Some(1));
    let r = dualities(&["replay", p]);
    std::fs::remove_file(&path).ok();
    assert_eq!(r.status.code(), Some(0));
    assert!(stdout(&r).contains("reproduced"));
}

#[test]
fn check_all_reports_timing_per_diagram() {
    let path = scratch("summary.json");
    let p = path.to_str().unwrap();
    let o = dualities(&["check-all", "--max-dim", "1", "--max-len", "1", "--max-set", "2", "--trials", "1", "--out", p]);
    let text = std::fs::read_to_string(&path).unwrap();
    std::fs::remove_file(&path).ok();
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&text).unwrap();
    assert_eq!(v["failed"], 0);
    let reports = v["reports"].as_array().unwrap();
    assert!(reports.len() > 100);
    assert!(reports.iter().all(|r| r["elapsed_ms"].is_number() && r["schema"] == v["schema"]));
}

#[test]
fn verify_signs_for_positive_a() {
    let o = dualities(&["verify-signs", "--a", "1"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).matches("22/22 rows hold").count(), 2);
}

#[test]
fn verify_signs_reports_negative_a() {
    let o = dualities(&["verify-signs", "--a", "-1", "--b", "1"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("FAIL row15"));
}

#[test]
fn witt_of_f3() {
    let o = dualities(&["witt", "--p", "3"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("cyclic: true"));
}

#[test]
fn registry_listing_is_clean() {
    let o = dualities(&["list"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("registry matches the coverage map"));
}

#[test]
fn bad_sign_override_is_rejected() {
    let o = dualities(&["verify-signs", "--set", "tp1=2"]);
    assert_eq!(o.status.code(), Some(2));
}
