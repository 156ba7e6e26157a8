//! Binary-level tests: exit codes, stream formats, and byte stability.

use std::process::{Command, Output};

fn gorinv(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_gorinv"))
        .args(args)
        .env_remove("GORINV_GROUP_CAP")
        .output()
        .expect("binary runs")
}

fn stdout_of(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn stderr_of(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).unwrap()
}

const CYCLIC3_F7: &str = r#"{"n": 2, "field": {"Fp": 7}, "generators": [[["0","-1"],["1","-1"]]]}"#;

#[test]
fn check_group_emits_the_verdict_json() {
    let out = gorinv(&["check-group", "--input", CYCLIC3_F7]);
    assert!(out.status.success());
    assert_eq!(
        stdout_of(&out).trim(),
        r#"{"exists":true,"witness_prime":3,"r":3}"#
    );
}

#[test]
fn replicate_exits_zero_and_renders_a_table() {
    let out = gorinv(&["replicate", "ex34"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout_of(&out);
    assert!(text.contains("hilbert"));
    assert!(text.contains("1,2,2,1"));
    assert!(text.contains("invariant quotient Gorenstein   NO"));
    assert!(text.contains("result: MATCH"));

    let out = gorinv(&["replicate", "ex99"]);
    assert_eq!(out.status.code(), Some(1));
    let err: serde_json::Value = serde_json::from_str(stderr_of(&out).trim()).unwrap();
    assert_eq!(err["kind"], "unknown_example");
}

#[test]
fn verify_rejects_the_trivial_group_with_exit_one() {
    let out = gorinv(&[
        "verify",
        "--input",
        r#"{"field": "Q", "group": {"n": 2, "generators": [[["1","0"],["0","1"]]]},
            "degree": 2, "functional": {"random_seed": 1}}"#,
    ]);
    assert_eq!(out.status.code(), Some(1));
    let line = stderr_of(&out);
    assert_eq!(line.lines().count(), 1);
    let err: serde_json::Value = serde_json::from_str(line.trim()).unwrap();
    assert_eq!(err["kind"], "trivial_group");
    assert_eq!(err["message"], "group must be non-trivial");
}

#[test]
fn unknown_flags_are_usage_errors() {
    let out = gorinv(&["check-group", "--nonsense"]);
    assert_eq!(out.status.code(), Some(2));
    let out = gorinv(&["not-a-subcommand"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn sweep_json_is_byte_stable_across_runs() {
    let config = r#"{"groups": ["cyclic3"], "fields": ["Q", {"Fp": 5}],
                     "degrees": [2, 3], "count": 4, "seed": 99}"#;
    let first = gorinv(&["sweep", "--input", config]);
    let second = gorinv(&["sweep", "--input", config]);
    assert!(first.status.success());
    assert_eq!(first.stdout, second.stdout);
    let report: serde_json::Value = serde_json::from_str(stdout_of(&first).trim()).unwrap();
    assert_eq!(report["counterexamples"], 0);
    assert_eq!(report["instances_run"], 16);

    // Flag overrides are reflected in the echoed config.
    let overridden = gorinv(&["sweep", "--input", config, "--seed", "100", "--count", "2"]);
    let report: serde_json::Value = serde_json::from_str(stdout_of(&overridden).trim()).unwrap();
    assert_eq!(report["config"]["seed"], 100);
    assert_eq!(report["config"]["count"], 2);
    assert_eq!(report["instances_run"], 8);
}

#[test]
fn construct_writes_files_and_round_trips() {
    let dir = std::env::temp_dir().join(format!("gorinv-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let out_path = dir.join("ideal.json");
    let input = r#"{"field": "Q", "n": 2,
                    "functional": {"degree": 3, "values": {"[3,0]": 1, "[2,1]": 1}}}"#;
    let out = gorinv(&[
        "construct",
        "--input",
        input,
        "--output",
        out_path.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let text = std::fs::read_to_string(&out_path).unwrap();
    let ideal: serde_json::Value = serde_json::from_str(&text).unwrap();
    assert_eq!(ideal["top"], 3);
    assert_eq!(ideal["pieces"][2][0]["[0,2]"], 1);
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn invariants_respects_the_degree_flag() {
    let out = gorinv(&[
        "invariants",
        "--input",
        r#"{"group": {"n": 2, "field": "Q", "generators": [[["-1","0"],["0","-1"]]]}}"#,
        "--max-degree",
        "4",
    ]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(stdout_of(&out).trim()).unwrap();
    assert_eq!(v["dims"], serde_json::json!([1, 0, 3, 0, 5]));
}

#[test]
fn closure_cap_env_var_is_honored() {
    let out = Command::new(env!("CARGO_BIN_EXE_gorinv"))
        .args(["check-group", "--input", CYCLIC3_F7])
        .env("GORINV_GROUP_CAP", "2")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
    let err: serde_json::Value = serde_json::from_str(stderr_of(&out).trim()).unwrap();
    assert_eq!(err["kind"], "closure_cap_exceeded");
}

#[test]
fn stdin_input_works() {
    use std::io::Write;
    use std::process::Stdio;
    let mut child = Command::new(env!("CARGO_BIN_EXE_gorinv"))
        .args(["check-group"])
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    child
        .stdin
        .take()
        .unwrap()
        .write_all(CYCLIC3_F7.as_bytes())
        .unwrap();
    let out = child.wait_with_output().unwrap();
    assert!(out.status.success());
    assert!(String::from_utf8(out.stdout).unwrap().contains("\"exists\":true"));
}
