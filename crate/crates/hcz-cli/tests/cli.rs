use std::process::{Command, Output};

fn hcz(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hcz")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn lambda_at_half_is_exact() {
    let o = hcz(&["gl2", "lambda", "--eps", "0", "--at", "0.5"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).trim(), "-4");
}

#[test]
fn lambda_at_irrational_point_is_numeric() {
    let o = hcz(&["gl2", "lambda", "--eps", "0", "--at", "1/3"]);
    let v: f64 = stdout(&o).trim().parse().unwrap();
    // 2/(z-1)·tan(πz/2) = -3·tan(π/6)
    assert!((v + 3f64.sqrt()).abs() < 1e-9, "{v}");
}

#[test]
fn pole_list() {
    let o = hcz(&["gl2", "poles", "--eps", "0", "--window", "5"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).trim(), "1, -1, -3, -5");
    let o = hcz(&["--format", "json", "gl2", "poles", "--eps", "1", "--window", "4"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["poles"], serde_json::json!([0, -2, -4]));
}

#[test]
fn cohomology_signs() {
    let o = hcz(&["gl2", "cohomology", "--l", "2", "--d", "1"]);
    assert!(stdout(&o).contains("+,-"), "{}", stdout(&o));
    let o = hcz(&["gl2", "cohomology", "--l", "2", "--d", "2"]);
    assert!(stdout(&o).contains("-,+"));
    let o = hcz(&["gl2", "cohomology", "--l", "2", "--d", "1/2"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn csv_and_json_formats() {
    let o = hcz(&["--format", "csv", "kostant", "--N", "4", "--n", "2"]);
    let mut r = csv::Reader::from_reader(o.stdout.as_slice());
    assert_eq!(r.records().count(), 6);
    let o = hcz(&["factorize", "--N", "3", "--n", "1", "--lambda", "1,1", "--json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["N"], 3);
    assert_eq!(v["pi_half"], 2);
}

#[test]
fn exit_codes() {
    // usage
    assert_eq!(hcz(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(hcz(&["gl2", "poles", "--eps", "2"]).status.code(), Some(2));
    assert_eq!(hcz(&["verify", "--suite", "nope"]).status.code(), Some(2));
    // assumption b: not self-dual
    let o = hcz(&["spectral", "params", "--n", "3", "--lambda", "1,2"]);
    assert_eq!(o.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&o.stderr).contains("assumption b"));
    // assumption a: w not balanced
    let o = hcz(&["factorize", "--N", "3", "--n", "2", "--lambda", "0,0", "--w", "[1,2,3]"]);
    assert_eq!(o.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&o.stderr).contains("assumption a"));
}

#[test]
fn rank_guard_from_environment() {
    let o = Command::new(env!("CARGO_BIN_EXE_hcz")).args(["kostant", "--N", "5", "--n", "2"]).env("HCZ_MAX_N", "4").output().unwrap();
    assert_eq!(o.status.code(), Some(2));
    let o = Command::new(env!("CARGO_BIN_EXE_hcz")).args(["kostant", "--N", "5", "--n", "2"]).env("HCZ_MAX_N", "5").output().unwrap();
    assert!(o.status.success());
}

#[test]
fn spectral_example() {
    let o = hcz(&["--format", "json", "spectral", "params", "--n", "6", "--lambda", "1,2,3,2,1;1/2"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["b"], serde_json::json!([13, 9, 3]));
    let o = hcz(&["spectral", "minktype", "--n", "6", "--lambda", "1,2,3,2,1;1/2"]);
    assert_eq!(stdout(&o).trim(), "(15, 11, 5)");
}

#[test]
fn single_suite() {
    let o = hcz(&["verify", "--suite", "weyl"]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("weyl: ok"));
}
