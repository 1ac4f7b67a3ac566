//! End-to-end checks of the weylver binary: exit codes, report determinism
//! and the JSON scalar round trip.

use std::process::{Command, Output};

fn weylver(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_weylver"))
        .args(args)
        .output()
        .expect("failed to launch weylver")
}

fn stdout_of(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("stdout is utf-8")
}

#[test]
fn list_suites_names_all_sixteen() {
    let out = weylver(&["verify", "--list-suites"]);
    assert!(out.status.success());
    let names: Vec<&str> = std::str::from_utf8(&out.stdout).unwrap().lines().collect();
    assert_eq!(names.len(), 16);
    assert!(names.contains(&"tau-normalization"));
    assert!(names.contains(&"rrh"));
}

#[test]
fn passing_suite_exits_zero() {
    let out = weylver(&["verify", "tau-normalization", "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout_of(&out)).unwrap();
    assert_eq!(v["summary"]["failed"], 0);
}

#[test]
fn injected_failure_exits_one_and_renders_the_case() {
    let out = weylver(&[
        "verify",
        "tau-normalization",
        "--self-test-fail",
        "--format",
        "json",
    ]);
    assert_eq!(out.status.code(), Some(1));
    let v: serde_json::Value = serde_json::from_str(&stdout_of(&out)).unwrap();
    assert_eq!(v["summary"]["failed"], 1);
    let failing = v["cases"]
        .as_array()
        .unwrap()
        .iter()
        .find(|c| c["pass"] == false)
        .expect("one failing case");
    assert_eq!(failing["expected"], "1");
    assert_eq!(failing["got"], "0");
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(weylver(&["verify", "no-such-suite"]).status.code(), Some(2));
    assert_eq!(
        weylver(&["verify", "tau-normalization", "--n", "9"]).status.code(),
        Some(2)
    );
    // clap's own usage errors also map to 2
    assert_eq!(weylver(&["verify", "--format", "bogus", "x"]).status.code(), Some(2));
}

#[test]
fn reports_are_deterministic_modulo_timing() {
    let args = [
        "verify",
        "tau-cocycle",
        "--n",
        "1",
        "--cases",
        "5",
        "--seed",
        "123",
        "--format",
        "json",
    ];
    let mut payloads = Vec::new();
    for _ in 0..2 {
        let out = weylver(&args);
        assert_eq!(out.status.code(), Some(0));
        let mut v: serde_json::Value = serde_json::from_str(&stdout_of(&out)).unwrap();
        v.as_object_mut().unwrap().remove("timing");
        payloads.push(serde_json::to_string(&v).unwrap());
    }
    assert_eq!(payloads[0], payloads[1]);
}

#[test]
fn different_seed_changes_the_cases() {
    let run = |seed: &str| {
        let out = weylver(&[
            "verify",
            "moyal-assoc",
            "--cases",
            "3",
            "--seed",
            seed,
            "--format",
            "json",
        ]);
        let v: serde_json::Value = serde_json::from_str(&stdout_of(&out)).unwrap();
        v["cases"][0]["input"].as_str().unwrap().to_string()
    };
    assert_ne!(run("1"), run("2"));
}

#[test]
fn eval_moyal_tau_theta() {
    let out = weylver(&["eval", "moyal", "p1^2", "q1^2", "--n", "1"]);
    assert!(out.status.success());
    assert_eq!(
        stdout_of(&out).trim(),
        "1/2*e^2 + 2*e*p1*q1 + p1^2*q1^2"
    );
    let out = weylver(&["eval", "tau", "1 | p1 | q1", "--n", "1"]);
    assert_eq!(stdout_of(&out).trim(), "1/2");
    let out = weylver(&["eval", "theta", "p1 ; q1", "--n", "1", "--N", "2"]);
    assert_eq!(stdout_of(&out).trim(), "2");
    // a parse error in eval is a usage error
    let out = weylver(&["eval", "tau", "1 | q2 | q1", "--n", "1"]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("unknown variable q2"), "{err}");
}

#[test]
fn emitted_scalars_round_trip_through_the_grammar() {
    let out = weylver(&[
        "verify",
        "tau-closed-form",
        "--cases",
        "4",
        "--seed",
        "9",
        "--format",
        "json",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout_of(&out)).unwrap();
    for c in v["cases"].as_array().unwrap() {
        let text = c["got"].as_str().unwrap();
        let object = c["got_eps"].as_object().unwrap();
        // re-evaluate the textual form through `eval moyal <text> 1`
        let out = weylver(&["eval", "moyal", text, "1", "--n", "1"]);
        assert!(out.status.success(), "reparse of `{text}` failed");
        let reparsed = stdout_of(&out);
        assert_eq!(reparsed.trim(), text, "display is stable under reparse");
        // the object form and the text describe the same scalar: the object
        // holds eps_exp -> num/den pairs
        for (k, val) in object {
            let _exp: i64 = k.parse().unwrap();
            let parts: Vec<&str> = val.as_str().unwrap().split('/').collect();
            assert_eq!(parts.len(), 2);
            assert!(!parts[0].is_empty() && !parts[1].is_empty());
        }
    }
}

#[test]
fn combined_report_runs_multiple_suites() {
    let out = weylver(&[
        "report",
        "--suites",
        "tau-normalization,theta-normalization,genfun",
        "--cases",
        "2",
        "--format",
        "json",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout_of(&out)).unwrap();
    assert_eq!(v["summary"]["suites"], 3);
    assert_eq!(v["summary"]["failed"], 0);
}
