use std::process::{Command, Output};

use serde_json::Value;

mod common;

fn asymlog(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_asymlog")).args(args).output().expect("spawn asymlog")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json_of(o: &Output) -> Value {
    serde_json::from_str(stdout(o).trim()).unwrap()
}

#[test]
fn table1_json() {
    let o = asymlog(&["table1", "--digits", "6", "--json"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json_of(&o);
    assert_eq!(v["schema"], "asymlog/1");
    assert_eq!(v["params"]["digits"], 6);
    let cells = v["result"]["cells"].as_array().unwrap();
    assert_eq!(cells.len(), 30);
    for c in cells {
        let (p, q) = (c["p"].as_u64().unwrap(), c["q"].as_u64().unwrap());
        let printed = common::TABLE1[(p - 1) as usize][q as usize];
        let x: f64 = c["value"].as_str().unwrap().parse().unwrap();
        assert!(common::matches_printed_f64(x, printed), "C_{{{p},{q}}} = {x} vs {printed}");
    }
}

#[test]
fn conjecture_suite_lines() {
    let o = asymlog(&["verify", "--suite", "bernoulli-conjecture", "--max-p", "150"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    let holds = out.lines().filter(|l| l.contains("\"holds\":true")).count();
    assert_eq!(holds, 149);
    assert!(!out.contains("\"holds\":false"));
}

#[test]
fn verify_json_stream() {
    let o = asymlog(&["--json", "verify", "--suite", "t-numbers", "--max-n", "6"]);
    assert_eq!(o.status.code(), Some(0));
    let lines: Vec<Value> = stdout(&o).lines().map(|l| serde_json::from_str(l).unwrap()).collect();
    assert!(lines.len() >= 3);
    assert!(lines.iter().all(|l| l["schema"] == "asymlog/1"));
    assert_eq!(lines[0]["command"], "verify");
    let summary = &lines.last().unwrap()["summary"];
    assert_eq!(summary["failed"], 0);
    assert_eq!(summary["instances"].as_u64().unwrap() as usize, lines.len() - 2);
}

#[test]
fn zeta_at_minus_one() {
    let o = asymlog(&["zeta-deriv", "--p", "0", "--a", "-1"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).lines().any(|l| l.trim() == "-1/12"));
    let v = json_of(&asymlog(&["--json", "zeta-deriv", "--p", "0", "--a", "-1"]));
    assert_eq!(v["result"]["value"], "-1/12");
}

#[test]
fn resolved_parameters_echoed() {
    let v = json_of(&asymlog(&["--json", "cpq", "--p", "2", "--q", "1"]));
    assert_eq!(v["command"], "cpq");
    let params = v["params"].as_object().unwrap();
    assert_eq!(params["digits"], 30);
    assert!(params.contains_key("n") && params.contains_key("m"));
}

#[test]
fn deterministic_json() {
    let args = ["--json", "polylog", "--j", "3", "--x", "0.3", "--digits", "40"];
    let a = asymlog(&args);
    let b = asymlog(&args);
    assert_eq!(a.stdout, b.stdout);
    let args = ["--json", "--jobs", "3", "verify", "--suite", "harmonic-power", "--max-p", "4", "--max-n", "20"];
    let c = asymlog(&args);
    let d = asymlog(&["--json", "--jobs", "1", "verify", "--suite", "harmonic-power", "--max-p", "4", "--max-n", "20"]);
    let strip = |o: &Output| stdout(o).lines().skip(1).collect::<Vec<_>>().join("\n");
    assert_eq!(strip(&c), strip(&d));
}

#[test]
fn domain_errors_exit_one() {
    for args in [
        &["zeta-deriv", "--p", "0", "--a", "1"][..],
        &["polylog", "--j", "2", "--x", "3"][..],
        &["stirling", "--n", "3", "--k", "5"][..],
        &["metazeta", "--s", "0.5"][..],
    ] {
        let o = asymlog(args);
        assert_eq!(o.status.code(), Some(1), "{args:?}");
        let err = String::from_utf8(o.stderr).unwrap();
        assert_eq!(err.trim().lines().count(), 1, "{args:?}: {err}");
        assert!(o.stdout.is_empty());
    }
}

#[test]
fn budget_errors_exit_two() {
    let o = asymlog(&["bootstrap", "--max-i", "20"]);
    assert_eq!(o.status.code(), Some(2));
    let o = Command::new(env!("CARGO_BIN_EXE_asymlog"))
        .args(["cpq", "--p", "1", "--q", "1", "--digits", "30"])
        .env("ASYMLOG_MAX_DIGITS", "10")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn usage_errors_exit_64() {
    assert_eq!(asymlog(&["frobnicate"]).status.code(), Some(64));
    assert_eq!(asymlog(&["bernoulli", "--n", "3", "--bogus"]).status.code(), Some(64));
    assert_eq!(asymlog(&["--jobs", "0", "bernoulli", "--n", "3"]).status.code(), Some(64));
    assert_eq!(asymlog(&["--help"]).status.code(), Some(0));
}
