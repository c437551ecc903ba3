use std::process::Command;

use ramcalc_cli::{run, EXIT_CHECK_FAILED, EXIT_DOMAIN, EXIT_OK, EXIT_USAGE};
use serde_json::Value;

fn json(args: &[&str]) -> Value {
    let mut argv = vec!["ramcalc"];
    argv.extend_from_slice(args);
    argv.push("--json");
    let out = run(argv);
    assert_eq!(out.code, EXIT_OK, "stderr: {}", out.stderr);
    serde_json::from_str(out.stdout.trim()).unwrap()
}

#[test]
fn conductor_of_the_tower_example() {
    let v = json(&["conductor", "--p", "3", "--a", "0", "--b", "0", "--expr", "x/y^9"]);
    assert_eq!((v["swan"].as_u64(), v["dimtot"].as_u64()), (Some(9), Some(9)));
    assert_eq!(v["cc"]["direction"], "du");
}

#[test]
fn basechange_reduces_the_image() {
    let v = json(&["basechange", "--p", "3", "--a", "0", "--b", "0", "--da", "1", "--db", "0", "--expr", "x/y^9"]);
    assert_eq!(v["image"], "x^(1/3)/y^3");
    assert_eq!((v["swan"].as_u64(), v["dimtot"].as_u64()), (Some(3), Some(3)));

    let v = json(&["basechange", "--da", "1", "--descend", "--expr", "x^(1/3)/y^3"]);
    assert_eq!(v["image"], "x/y^9");
}

#[test]
fn right_bound_is_sharp() {
    let v = json(&["check", "--theorem", "right", "--p", "3", "--a", "0", "--b", "0", "--da", "0", "--db", "1", "--expr", "x/y^3"]);
    assert_eq!(v["status"], "equality");
    assert_eq!(v["bound"]["sw"], 9);
    assert_eq!(v["bound"]["dt"], 9);
}

#[test]
fn other_checks() {
    let v = json(&["check", "--theorem", "left", "--da", "1", "--expr", "x^(1/3)/y^3"]);
    assert_eq!((v["status"].as_str(), v["lhs"]["sw"].as_u64()), (Some("equality"), Some(9)));
    let v = json(&["check", "--theorem", "frobenius", "--n", "2", "--expr", "x/y^9"]);
    assert_eq!(v["status"], "pass");
    let v = json(&["check", "--theorem", "theta", "--da", "1", "--expr", "x/y"]);
    assert_eq!(v["outcome"], "commutes-nonzero");
    let v = json(&["check", "--theorem", "sigma", "--da", "1", "--expr", "x^(1/3)/y"]);
    assert_eq!(v["outcome"], "commutes-degenerately");
}

#[test]
fn oracle_and_reduce() {
    let v = json(&["oracle", "--expr", "x/y^9", "--max-deg", "2", "--trials", "0"]);
    assert_eq!(v["dt_ceiling"], 9);
    assert_eq!(v["sw_est"], "26/3");
    assert_eq!(v["dt_witness"]["curve"], "s");
    let v = json(&["reduce", "--expr", "y^-3 - y^-1"]);
    assert_eq!((v["f"].as_str(), v["classification"].as_str()), (Some("0"), Some("trivial")));
}

#[test]
fn json_is_deterministic() {
    let args = ["ramcalc", "oracle", "--expr", "x^2/y^5 + x/y^3", "--seed", "11", "--json"];
    assert_eq!(run(args).stdout, run(args).stdout);
}

#[test]
fn exit_codes() {
    assert_eq!(run(["ramcalc", "conductor", "--expr", "x/"]).code, EXIT_USAGE);
    assert_eq!(run(["ramcalc", "conductor", "--expr", "x^(1/3)"]).code, EXIT_DOMAIN);
    assert_eq!(run(["ramcalc", "conductor", "--p", "9", "--expr", "x"]).code, EXIT_DOMAIN);
    assert_eq!(run(["ramcalc", "conductor"]).code, EXIT_USAGE);
    assert_eq!(run(["ramcalc", "bogus"]).code, EXIT_USAGE);
    assert_eq!(run(["ramcalc", "check", "--theorem", "nope", "--expr", "x"]).code, EXIT_USAGE);
    assert_eq!(run(["ramcalc", "charform", "--expr", "1"]).code, EXIT_DOMAIN);
    let help = run(["ramcalc", "--help"]);
    assert_eq!(help.code, EXIT_OK);
    assert!(help.stdout.contains("conductor"));
    assert_ne!(EXIT_CHECK_FAILED, EXIT_OK);
}

#[test]
fn input_file_gives_one_json_line_per_expression() {
    let path = std::env::temp_dir().join(format!("ramcalc-cli-test-{}.txt", std::process::id()));
    std::fs::write(&path, "# examples\nx/y^9\n\ny^-2   # classical\nx/y\n").unwrap();
    let out = run(["ramcalc", "conductor", "--in", path.to_str().unwrap(), "--json"]);
    std::fs::remove_file(&path).ok();
    assert_eq!(out.code, EXIT_OK);
    let dims: Vec<u64> = out
        .stdout
        .lines()
        .map(|l| serde_json::from_str::<Value>(l).unwrap()["dimtot"].as_u64().unwrap())
        .collect();
    assert_eq!(dims, vec![9, 3, 2]);
}

#[test]
fn binary_runs() {
    let out = Command::new(env!("CARGO_BIN_EXE_ramcalc"))
        .args(["conductor", "--p", "5", "--expr", "x/y^25", "--json"])
        .output()
        .unwrap();
    assert!(out.status.success());
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["swan"], 25);
    let out = Command::new(env!("CARGO_BIN_EXE_ramcalc")).args(["conductor", "--expr", "x/"]).output().unwrap();
    assert_eq!(out.status.code(), Some(EXIT_USAGE));
}

#[test]
fn corpus_command_passes() {
    let out = run(["ramcalc", "corpus"]);
    assert_eq!(out.code, EXIT_OK, "{}", out.stdout);
    assert_eq!(out.stdout.lines().filter(|l| l.contains("[PASS]")).count(), 7);
}

#[test]
fn oversized_depths_and_exponents_are_rejected() {
    for args in [
        vec!["ramcalc", "conductor", "--a", "60", "--expr", "x"],
        vec!["ramcalc", "basechange", "--da", "50", "--expr", "x/y"],
        vec!["ramcalc", "check", "--theorem", "frobenius", "--n", "45", "--expr", "x/y"],
    ] {
        let out = run(args.clone());
        assert_eq!(out.code, EXIT_DOMAIN, "{args:?}: {}", out.stderr);
    }
    let out = run(["ramcalc", "conductor", "--expr", "x^9999999999999999"]);
    assert_eq!(out.code, EXIT_USAGE);
}
