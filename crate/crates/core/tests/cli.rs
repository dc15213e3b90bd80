use std::fs;
use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::{json, Value};

fn bochner(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_bochner"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout_json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn scratch(name: &str, contents: &str) -> PathBuf {
    let dir = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join("cli-tests");
    fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    fs::write(&path, contents).unwrap();
    path
}

#[test]
fn hermite_direct_with_check() {
    let out = bochner(&["direct", "--preset", "hermite", "--nmax", "4", "--check"]);
    assert_eq!(out.status.code(), Some(0));
    let doc = stdout_json(&out);
    assert_eq!(doc["lambda"], json!(["0", "-2", "-4", "-6", "-8"]));
    assert_eq!(doc["P"][3], json!(["0", "-3/2", "0", "1"]));
    assert_eq!(doc["check"]["eigenpairs"], json!(true));
    assert_eq!(doc["check"]["determinant_agrees"], json!(true));
}

#[test]
fn determinant_route_and_decimals() {
    let exact = stdout_json(&bochner(&[
        "direct", "--preset", "jacobi", "--alpha", "1/2", "--beta", "-1/3", "--nmax", "6",
    ]));
    let det = bochner(&[
        "direct",
        "--preset",
        "jacobi",
        "--alpha",
        "1/2",
        "--beta",
        "-1/3",
        "--nmax",
        "6",
        "--det",
        "--check",
        "--decimal",
        "4",
    ]);
    assert_eq!(det.status.code(), Some(0));
    let det = stdout_json(&det);
    assert_eq!(det["P"], exact["P"]);
    assert_eq!(det["lambda_decimal"][1], json!("-2.1667"));
}

#[test]
fn shifted_operator_file() {
    let path = scratch("shifted.json", r#"{"N":1,"a":[["5"],["1","-1"]]}"#);
    let doc = stdout_json(&bochner(&[
        "direct",
        "--operator",
        path.to_str().unwrap(),
        "--nmax",
        "2",
        "--check",
    ]));
    assert_eq!(doc["lambda"], json!(["5", "4", "3"]));
    assert_eq!(doc["shift"], json!("5"));
}

#[test]
fn bochner_condition_violation_exits_2() {
    let path = scratch("bad.json", r#"{"N":1,"a":[["0"],["0","0","1"]]}"#);
    let out = bochner(&["direct", "--operator", path.to_str().unwrap(), "--nmax", "3"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("Bochner condition"));
}

#[test]
fn malformed_input_exits_2() {
    let path = scratch("garbage.json", "{ not json");
    assert_eq!(
        bochner(&["direct", "--operator", path.to_str().unwrap(), "--nmax", "3"])
            .status
            .code(),
        Some(2)
    );
    let floats = scratch("floats.json", r#"{"N":1,"a":[[0.5],["1","1"]]}"#);
    assert_eq!(
        bochner(&["direct", "--operator", floats.to_str().unwrap(), "--nmax", "3"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        bochner(&["direct", "--preset", "legendre", "--nmax", "3"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        bochner(&["preset", "laguerre", "--alpha", "1/0"]).status.code(),
        Some(2)
    );
    assert_eq!(bochner(&["direct", "--nmax", "3"]).status.code(), Some(2));
}

#[test]
fn repeated_eigenvalues_exit_3() {
    // lambda_n = n - n(n-1)/2 gives lambda_1 = lambda_2 = 1
    let path = scratch("degenerate.json", r#"{"N":2,"a":[["0"],["0","1"],["0","0","-1/2"]]}"#);
    let out = bochner(&["direct", "--operator", path.to_str().unwrap(), "--nmax", "3"]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn presets() {
    let hermite = stdout_json(&bochner(&["preset", "hermite"]));
    assert_eq!(hermite, json!({"N": 2, "a": [["0"], ["0", "-2"], ["1"]]}));
    let laguerre = stdout_json(&bochner(&["preset", "laguerre", "--alpha", "0"]));
    assert_eq!(laguerre, json!({"N": 2, "a": [["0"], ["1", "-1"], ["0", "1"]]}));
    let shapiro = stdout_json(&bochner(&["preset", "shapiro", "--c", "1,0,1/2"]));
    assert_eq!(
        shapiro,
        json!({"N": 3, "a": [["0"], ["1", "1"], ["0"], ["0", "0", "1/2"]]})
    );
    assert_eq!(bochner(&["preset", "shapiro"]).status.code(), Some(2));
}

#[test]
fn inverse_round_trip_and_negative_control() {
    let dir = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join("cli-tests");
    fs::create_dir_all(&dir).unwrap();
    let data = dir.join("laguerre-data.json");
    let out = bochner(&[
        "direct",
        "--preset",
        "laguerre",
        "--alpha",
        "3/2",
        "--nmax",
        "9",
        "--out",
        data.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());

    let doc = stdout_json(&bochner(&["inverse", "--data", data.to_str().unwrap(), "--order", "3"]));
    assert_eq!(
        doc["operator"],
        stdout_json(&bochner(&["preset", "laguerre", "--alpha", "3/2"]))
    );
    assert_eq!(doc["order"], json!(2));
    assert_eq!(
        doc["statement"],
        json!("order <= 3 consistent with data up to degree 9")
    );

    let found = stdout_json(&bochner(&["inverse", "--data", data.to_str().unwrap(), "--search"]));
    assert_eq!(found["order"], json!(2));

    let mut eigen: Value = serde_json::from_str(&fs::read_to_string(&data).unwrap()).unwrap();
    eigen["P"][4][0] = json!("12345");
    let bad = scratch("perturbed.json", &eigen.to_string());
    let out = bochner(&["inverse", "--data", bad.to_str().unwrap(), "--order", "2"]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(stdout_json(&out)["consistent"], json!(false));
    assert_eq!(
        bochner(&["inverse", "--data", bad.to_str().unwrap(), "--search"])
            .status
            .code(),
        Some(1)
    );

    let short = scratch("short.json", r#"{"lambda":["0","-1"],"P":[["1"],["-1","1"]]}"#);
    assert_eq!(
        bochner(&["inverse", "--data", short.to_str().unwrap(), "--order", "2"])
            .status
            .code(),
        Some(2)
    );
    let repeated = scratch(
        "repeated.json",
        r#"{"lambda":["0","1","1"],"P":[["1"],["0","1"],["0","0","1"]]}"#,
    );
    assert_eq!(
        bochner(&["inverse", "--data", repeated.to_str().unwrap(), "--order", "1"])
            .status
            .code(),
        Some(3)
    );
}

#[test]
fn recurrence_band() {
    let doc = stdout_json(&bochner(&["recurrence", "--preset", "hermite", "--nmax", "8"]));
    assert_eq!(doc["p"], json!(1));
    assert_eq!(doc["terms"], json!(3));
    assert_eq!(doc["band"][4], json!(["0", "2"]));
    let doc = stdout_json(&bochner(&[
        "recurrence",
        "--shapiro",
        "1,-2,1/3",
        "--nmax",
        "10",
        "--window-start",
        "5",
    ]));
    assert_eq!(doc["p"], json!(2));
    assert_eq!(doc["window"], json!([5, 10]));
}

#[test]
fn verify_reports_every_check() {
    let out = bochner(&["verify", "--shapiro", "1/2,-1,2", "--nmax", "8"]);
    assert_eq!(out.status.code(), Some(0));
    let doc = stdout_json(&out);
    assert_eq!(doc["passed"], json!(true));
    let names: Vec<&str> = doc["checks"]
        .as_array()
        .unwrap()
        .iter()
        .map(|c| c["name"].as_str().unwrap())
        .collect();
    assert!(names.contains(&"shapiro-band"));
    assert!(names.contains(&"reconstruction"));
    assert_eq!(doc["bandwidth"], json!(2));
}

#[test]
fn lemma_sweeps() {
    let out = bochner(&["lemmas"]);
    assert_eq!(out.status.code(), Some(0));
    let doc = stdout_json(&out);
    assert!(doc["checked"].as_u64().unwrap() >= 5000);
    assert_eq!(doc["counterexample"], Value::Null);

    let out = bochner(&[
        "lemmas",
        "--id",
        "binomial-orthogonality",
        "--range",
        "m=0..3",
        "--range",
        "k=0..5",
    ]);
    let doc = stdout_json(&out);
    assert_eq!(doc["checked"], json!(10));
    assert_eq!(doc["skipped"], json!(14));

    assert_eq!(bochner(&["lemmas", "--id", "no-such-identity"]).status.code(), Some(2));
    assert_eq!(bochner(&["lemmas", "--range", "zz=0..3"]).status.code(), Some(2));
    assert_eq!(bochner(&["lemmas", "--range", "m=zero..3"]).status.code(), Some(2));
}
