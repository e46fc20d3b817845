use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::{json, Value};
use symtriple::families::WorkedExample;
use symtriple::{RatFun, Rational};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_symtriple"))
        .args(args)
        .env_remove("SYMTRIPLE_LOG")
        .output()
        .expect("binary runs")
}

fn stdout_json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout)
        .unwrap_or_else(|e| panic!("bad JSON ({e}): {}", String::from_utf8_lossy(&out.stdout)))
}

fn stderr_json(out: &Output) -> Value {
    let text = String::from_utf8_lossy(&out.stderr);
    let line = text.lines().last().expect("stderr line");
    serde_json::from_str(line).expect("structured error")
}

fn tmp(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("symtriple-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

fn sorted_values(v: &Value) -> Vec<String> {
    let mut xs: Vec<String> = v["values"]
        .as_array()
        .unwrap()
        .iter()
        .map(|x| x.as_str().unwrap().to_string())
        .collect();
    xs.sort();
    xs
}

fn sorted(xs: &[&str]) -> Vec<String> {
    let mut v: Vec<String> = xs.iter().map(|s| s.to_string()).collect();
    v.sort();
    v
}

/// Numbers in CLI output are only ever indices and counts.
fn no_floats(v: &Value) {
    match v {
        Value::Number(n) => assert!(n.is_u64() || n.is_i64(), "non-integer number {n}"),
        Value::Array(xs) => xs.iter().for_each(no_floats),
        Value::Object(m) => m.values().for_each(no_floats),
        _ => {}
    }
}

#[test]
fn gen_sym_numeric_contains_the_q3_tuple() {
    let out = run(&[
        "gen-sym", "--i", "1", "--n", "3", "--t", "1", "--p", "2", "--q", "3", "--count", "2",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let v = stdout_json(&out);
    no_floats(&v);
    let want = sorted(&["1", "1", "9/80", "-45/16", "80/9", "-16/45"]);
    assert!(v
        .as_array()
        .unwrap()
        .iter()
        .any(|s| sorted_values(s) == want));
}

#[test]
fn gen_sym_count_zero_is_empty() {
    let out = run(&["gen-sym", "--count", "0"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout_json(&out), json!([]));
}

#[test]
fn gen_sym_symbolic_matches_second_multiple() {
    let out = run(&[
        "gen-sym", "--i", "1", "--n", "3", "--t", "1", "--p", "2", "--q", "symbolic", "--count",
        "2",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let v = stdout_json(&out);
    let ex = WorkedExample::new().unwrap();
    let (p, q) = &ex.pairs[0];
    let mut want: Vec<RatFun> = WorkedExample::tuple(p, q).unwrap();
    let mut got: Vec<RatFun> = serde_json::from_value(v[0]["values"].clone()).unwrap();
    let key = |x: &RatFun| x.to_string();
    want.sort_by_key(key);
    got.sort_by_key(key);
    assert_eq!(got, want);
}

#[test]
fn gen_sym_rejects_bad_parameters() {
    let out = run(&[
        "gen-sym", "--i", "5", "--n", "3", "--t", "1", "--p", "2", "--q", "3", "--count", "1",
    ]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(stderr_json(&out)["error"], "invalid_parameter");
}

#[test]
fn gen_power_examples() {
    let out = run(&[
        "gen-power",
        "--triple",
        "123",
        "--a",
        "2",
        "--d",
        "1",
        "--t",
        "1",
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(
        stdout_json(&out)[0]["values"],
        json!(["14/17", "3/17", "65/68", "3/68"])
    );

    let out = run(&[
        "gen-power",
        "--triple",
        "24",
        "--d",
        "1",
        "--t",
        "0",
        "--csv",
    ]);
    assert_eq!(String::from_utf8_lossy(&out.stdout).trim(), "-2,1,-1");
}

#[test]
fn gen_power_integerize_shares_sums() {
    let out = run(&[
        "gen-power",
        "--triple",
        "123",
        "--a",
        "2",
        "--d",
        "1",
        "--t",
        "1,2,3",
        "--integerize",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let v = stdout_json(&out);
    let sols = v.as_array().unwrap();
    assert_eq!(sols.len(), 3);
    for s in sols {
        for x in s["values"].as_array().unwrap() {
            assert!(x
                .as_str()
                .unwrap()
                .parse::<Rational>()
                .unwrap()
                .is_integer());
        }
        assert_eq!(s["certificate"], sols[0]["certificate"]);
    }
}

#[test]
fn gen_power_missing_parameter_is_usage_error() {
    let out = run(&["gen-power", "--triple", "123", "--d", "1", "--t", "1"]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(stderr_json(&out)["error"], "usage");
}

#[test]
fn generators_round_trip_through_verify() {
    let cases: [&[&str]; 3] = [
        &[
            "gen-sym", "--i", "1", "--n", "3", "--t", "1", "--p", "2", "--q", "symbolic",
            "--count", "3",
        ],
        &[
            "gen-sym", "--i", "2", "--n", "4", "--t", "2,3", "--p", "3", "--q", "5", "--count", "2",
        ],
        &[
            "gen-power",
            "--triple",
            "m112",
            "--a",
            "2",
            "--b",
            "3",
            "--t",
            "1/2,5",
            "--lift",
            "1,-2",
        ],
    ];
    for (k, args) in cases.iter().enumerate() {
        let path = tmp(&format!("round{k}.json"));
        let mut full = args.to_vec();
        full.extend(["--output", path.to_str().unwrap()]);
        assert_eq!(run(&full).status.code(), Some(0), "{args:?}");
        let out = run(&["verify", "--file", path.to_str().unwrap()]);
        assert_eq!(out.status.code(), Some(0), "{args:?}");
        assert_eq!(stdout_json(&out)["pass"], json!(true));
    }
}

#[test]
fn corrupted_value_names_the_constraint() {
    let out = run(&[
        "gen-power",
        "--triple",
        "123",
        "--a",
        "2",
        "--d",
        "1",
        "--t",
        "1",
    ]);
    let mut v = stdout_json(&out);
    v[0]["values"][0] = json!("15/17");
    let path = tmp("corrupt.json");
    std::fs::write(&path, v.to_string()).unwrap();
    let out = run(&["verify", "--file", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    let report = stdout_json(&out);
    let failures = report["failures"].as_array().unwrap();
    assert!(failures.iter().any(|f| f == "tuple 0: s_1"));
}

#[test]
fn third_multiple_tuple_file_verifies() {
    let ex = WorkedExample::new().unwrap();
    let (p, q) = &ex.pairs[1];
    let values = WorkedExample::tuple(p, q).unwrap();
    let a = "(2q^2+9q+2)/(2q)";
    let doc = json!([{
        "spec": {"kind": "SymmetricTriple", "n": 3, "i": 1, "targets": [a, a, "1"]},
        "values": values,
        "certificate": {},
    }]);
    let path = tmp("third.json");
    std::fs::write(&path, doc.to_string()).unwrap();
    let out = run(&["verify", "--file", path.to_str().unwrap()]);
    assert_eq!(
        out.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&out.stdout)
    );
    assert_eq!(stdout_json(&out)["results"][0]["field"], "Q(q)");
}

#[test]
fn verify_parse_errors_exit_two() {
    let path = tmp("junk.json");
    std::fs::write(&path, "[{\"values\": 3}]").unwrap();
    let out = run(&["verify", "--file", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(stderr_json(&out)["error"], "parse");

    let out = run(&["verify", "--file", "/nonexistent/file.json"]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(stderr_json(&out)["error"], "io");
}

#[test]
fn identities_full_run_passes() {
    let out = run(&["identities"]);
    assert_eq!(out.status.code(), Some(0));
    let v = stdout_json(&out);
    no_floats(&v);
    let names: Vec<&str> = v["groups"]
        .as_array()
        .unwrap()
        .iter()
        .map(|g| g["name"].as_str().unwrap())
        .collect();
    assert_eq!(
        names,
        [
            "reciprocal",
            "expansion",
            "theorem45",
            "families",
            "resultants",
            "example"
        ]
    );
}

#[test]
fn identities_only_selects_one_group() {
    let out = run(&["identities", "--only", "theorem45"]);
    assert_eq!(out.status.code(), Some(0));
    let v = stdout_json(&out);
    assert_eq!(v["groups"].as_array().unwrap().len(), 1);
    assert_eq!(v["groups"][0]["checks"].as_array().unwrap().len(), 8);

    let out = run(&["identities", "--only", "reciprocal"]);
    assert_eq!(stdout_json(&out)["groups"][0]["name"], "reciprocal");
}

#[test]
fn curve_multiples() {
    let out = run(&[
        "curve", "--mul", "2", "--point", "2,3", "--A", "0", "--B", "1",
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout_json(&out)["result"], json!({"X": "0", "Y": "1"}));

    let out = run(&[
        "curve", "--mul", "0", "--point", "2,3", "--A", "0", "--B", "1",
    ]);
    assert_eq!(stdout_json(&out)["result"], "infinity");

    let out = run(&[
        "curve", "--mul", "2", "--point", "2,4", "--A", "0", "--B", "1",
    ]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(stderr_json(&out)["error"], "not_on_curve");
}

#[test]
fn curve_quartic_over_function_field() {
    let out = run(&[
        "curve",
        "--quartic",
        "4q^2,-4q(q+2)(2q+1),4q^4+20q^3+25q^2+20q+4,-4q(q+2)(2q+1),4q^2",
        "--base",
        "0,2q",
        "--field",
        "q",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let v = stdout_json(&out);
    let ex = WorkedExample::new().unwrap();
    let j: RatFun = serde_json::from_value(v["j_invariant"].clone()).unwrap();
    assert_eq!(j, ex.corrected_model.j_invariant());
    assert!(!v["exceptional_set"].as_array().unwrap().is_empty());
}

#[test]
fn curve_singular_input_exits_two() {
    let out = run(&["curve", "--quartic", "1,0,0,0", "--base", "0,0"]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(stderr_json(&out)["error"], "singular");
}

#[test]
fn usage_errors_are_structured() {
    let out = run(&["gen-power", "--triple", "999", "--t", "1"]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(stderr_json(&out)["error"], "usage");

    let out = run(&[
        "gen-sym", "--i", "1", "--n", "3", "--p", "2", "--q", "1/0", "--count", "1",
    ]);
    assert_eq!(out.status.code(), Some(2));

    assert_eq!(run(&["--help"]).status.code(), Some(0));
}

#[test]
fn output_flag_writes_file() {
    let path = tmp("out.csv");
    let out = run(&[
        "--csv",
        "--output",
        path.to_str().unwrap(),
        "gen-power",
        "--triple",
        "24",
        "--d",
        "1",
        "--t",
        "0,1",
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    assert_eq!(std::fs::read_to_string(&path).unwrap().lines().count(), 2);
}
