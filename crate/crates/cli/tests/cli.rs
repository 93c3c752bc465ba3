use std::io::Write;
use std::process::{Command, Output, Stdio};

use serde_json::Value;

fn kneser(args: &[&str], stdin: Option<&str>) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_kneser"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("binary runs");
    if let Some(text) = stdin {
        child
            .stdin
            .take()
            .unwrap()
            .write_all(text.as_bytes())
            .unwrap();
    }
    drop(child.stdin.take());
    child.wait_with_output().unwrap()
}

fn stdout_json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

#[test]
fn gen_g6_writes_family_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("g6.txt");
    let out = kneser(
        &[
            "gen",
            "--kind",
            "g6",
            "--n",
            "9",
            "--k",
            "2",
            "--out",
            path.to_str().unwrap(),
        ],
        None,
    );
    assert_eq!(out.status.code(), Some(0));
    let results = stdout_json(&out);
    assert_eq!(results["size"], 7);
    assert_eq!(results["expected"], "7");
    let text = std::fs::read_to_string(&path).unwrap();
    assert_eq!(text.lines().count(), 8);

    let check = kneser(&["check", path.to_str().unwrap(), "--pattern", "C6"], None);
    assert_eq!(check.status.code(), Some(0));
    assert_eq!(stdout_json(&check)["free"], true);
    assert!(String::from_utf8_lossy(&check.stderr).contains("free"));
}

#[test]
fn check_reports_witness() {
    let out = kneser(
        &["check", "-", "--pattern", "K2"],
        Some("n=4 k=2\n1,2\n3,4\n"),
    );
    assert_eq!(out.status.code(), Some(2));
    let r = stdout_json(&out);
    assert_eq!(r["free"], false);
    assert_eq!(r["witness"], serde_json::json!([0, 1]));
    assert_eq!(r["sets"], serde_json::json!([[1, 2], [3, 4]]));
}

#[test]
fn bad_input_names_position() {
    let out = kneser(
        &["check", "-", "--pattern", "K2"],
        Some("n=4 k=2\n1,2\n3,x\n"),
    );
    assert_eq!(out.status.code(), Some(1));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("line 3"), "{err}");
    assert!(err.contains("column 3"), "{err}");
    assert!(out.stdout.is_empty());
}

#[test]
fn usage_errors_exit_one_and_help_exits_zero() {
    assert_eq!(kneser(&["bogus"], None).status.code(), Some(1));
    assert_eq!(
        kneser(&["eta", "--pattern", "C5"], None).status.code(),
        Some(1)
    );
    assert_eq!(kneser(&["--help"], None).status.code(), Some(0));
    assert_eq!(kneser(&["--version"], None).status.code(), Some(0));
}

#[test]
fn json_envelope_round_trips() {
    let out = kneser(
        &["--json", "ell", "-", "--t", "2"],
        Some("n=5 k=2\n1,2\n3,4\n1,5\n"),
    );
    assert_eq!(
        out.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let r = stdout_json(&out);
    let keys: Vec<&str> = r.as_object().unwrap().keys().map(String::as_str).collect();
    assert_eq!(
        keys,
        [
            "command",
            "exit_code",
            "inputs_digest",
            "results",
            "timing_ms",
            "version"
        ]
    );
    assert_eq!(r["exit_code"], 0);
    assert_eq!(r["results"]["value"], 1);
    assert!(r["inputs_digest"].as_str().unwrap().starts_with("sha256:"));
    let text = serde_json::to_string(&r).unwrap();
    assert_eq!(serde_json::from_str::<Value>(&text).unwrap(), r);

    // Same arguments, different input: different digest.
    let other = stdout_json(&kneser(
        &["--json", "ell", "-", "--t", "2"],
        Some("n=5 k=2\n1,2\n"),
    ));
    assert_ne!(other["inputs_digest"], r["inputs_digest"]);
}

#[test]
fn eta_and_bound() {
    let r = stdout_json(&kneser(&["eta", "--pattern", "K3"], None));
    assert_eq!((r["chi"].as_u64(), r["eta"].as_u64()), (Some(3), Some(1)));
    assert!(r["bipartite_classes"].is_array());
    let b = stdout_json(&kneser(
        &["bound", "--name", "hm", "--params", "n=9", "k=3"],
        None,
    ));
    assert_eq!(b["value"], 19);
    assert_eq!(b["formula_tag"], "hm");
    let bad = kneser(&["bound", "--name", "hm", "--params", "n=9"], None);
    assert_eq!(bad.status.code(), Some(1));
}

#[test]
fn search_petersen() {
    let r = stdout_json(&kneser(
        &["search", "--n", "5", "--k", "2", "--pattern", "K2"],
        None,
    ));
    assert_eq!(r["optimum"], 4);
    assert_eq!(r["status"], "proven");
    let r = stdout_json(&kneser(
        &[
            "search",
            "--n",
            "5",
            "--k",
            "2",
            "--pattern",
            "K2",
            "--no-common-element",
        ],
        None,
    ));
    assert_eq!(r["optimum"], 3);
}

#[test]
fn verify_filter_and_fault() {
    let out = kneser(&["verify", "--filter", "stab"], None);
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&out.stdout).contains("PASS"));
    let out = kneser(
        &["verify", "--filter", "1", "--inject-fault", "stabst-size"],
        None,
    );
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stdout).contains("FAIL"));
}

#[test]
fn schema_is_json() {
    let r = stdout_json(&kneser(&["schema"], None));
    assert_eq!(r["title"], "RunReport");
}
