//! Black-box tests of the command-line interface: exit codes, JSON output,
//! DOT export, and the error contract.

use std::process::Command;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_idiomlab"))
}

#[test]
fn catalog_list_names_every_entry() {
    let out = bin().args(["catalog", "list"]).output().unwrap();
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    for name in ["Z12", "triangular-Z2", "Z2xZ2-over-F2", "M2F2", "Z4xZ3"] {
        assert!(text.lines().any(|l| l == name), "missing {name}");
    }
}

#[test]
fn catalog_get_round_trips_through_analyze() {
    let out = bin().args(["catalog", "get", "Z12"]).output().unwrap();
    assert!(out.status.success());
    let dir = std::env::temp_dir().join("idiomlab-cli-test");
    std::fs::create_dir_all(&dir).unwrap();
    let spec_path = dir.join("z12.json");
    std::fs::write(&spec_path, &out.stdout).unwrap();

    let report_path = dir.join("z12-report.json");
    let out = bin()
        .args(["analyze"])
        .arg(&spec_path)
        .arg("--json")
        .arg(&report_path)
        .args(["--audit", "basic"])
        .output()
        .unwrap();
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let report: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&report_path).unwrap()).unwrap();
    assert_eq!(report["schema_version"], 1);
    assert_eq!(report["classes"]["gelfand"]["holds"], true);
    assert_eq!(report["violated"], 0);
    assert!(report.get("timing").is_none());
}

#[test]
fn analyze_writes_dot_exports() {
    let dir = std::env::temp_dir().join("idiomlab-cli-dot");
    let out = bin()
        .args(["analyze", "Z12", "--audit", "basic", "--dot"])
        .arg(&dir)
        .output()
        .unwrap();
    assert!(out.status.success());
    let lambda = std::fs::read_to_string(dir.join("lambda_fi.dot")).unwrap();
    assert!(lambda.starts_with("digraph"));
    assert!(dir.join("psi.dot").is_file());
    assert!(dir.join("spec.dot").is_file());
}

#[test]
fn analyze_is_deterministic_across_jobs() {
    let dir = std::env::temp_dir().join("idiomlab-cli-jobs");
    std::fs::create_dir_all(&dir).unwrap();
    let mut outputs = Vec::new();
    for jobs in ["1", "8"] {
        let path = dir.join(format!("report-{jobs}.json"));
        let out = bin()
            .args(["analyze", "Z6", "--jobs", jobs, "--json"])
            .arg(&path)
            .output()
            .unwrap();
        assert!(out.status.success());
        outputs.push(std::fs::read(&path).unwrap());
    }
    assert_eq!(outputs[0], outputs[1]);
}

#[test]
fn unknown_target_is_an_input_error() {
    let out = bin().args(["analyze", "no-such-entry"]).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
    let err: serde_json::Value =
        serde_json::from_str(String::from_utf8_lossy(&out.stderr).trim()).unwrap();
    assert_eq!(err["exit_code"], 2);
}

#[test]
fn malformed_instance_file_is_an_input_error() {
    let dir = std::env::temp_dir().join("idiomlab-cli-bad");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("bad.json");
    std::fs::write(&path, r#"{"ring":{"kind":"zn"},"module":{"kind":"regular"}}"#).unwrap();
    let out = bin().arg("analyze").arg(&path).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn oversized_instance_hits_the_resource_cap() {
    let out = bin()
        .args(["analyze", "Z30", "--max-size", "8", "--audit", "basic"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(3));
    let err: serde_json::Value =
        serde_json::from_str(String::from_utf8_lossy(&out.stderr).trim()).unwrap();
    assert_eq!(err["exit_code"], 3);
}

#[test]
fn env_var_caps_the_size() {
    let out = bin()
        .args(["analyze", "Z30", "--audit", "basic"])
        .env("IDIOMLAB_MAX_SIZE", "8")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(3));
}
