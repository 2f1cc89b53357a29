use std::process::{Command, Output};

fn qk1(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qk1")).args(args).env_remove("QK1_CYCLOTOMIC_ORDER").output().expect("runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn tau_at_order_three() {
    let o = qk1(&["tau", "--order", "3"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "t0 + t0*t1 + 1/2*t0^2*t2 + t0*t1^2");
}

#[test]
fn verify_json_is_deterministic_and_passes() {
    let a = qk1(&["verify", "--order", "3", "--json"]);
    let b = qk1(&["verify", "--order", "3", "--json"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let v: serde_json::Value = serde_json::from_slice(&a.stdout).unwrap();
    let checks = v["checks"].as_array().unwrap();
    assert_eq!(checks.len(), 8);
    assert_eq!(checks[0]["items"][0]["difference"], "0");
    assert_eq!(v["summary"]["passed"], 8);
    assert_eq!(v["config"]["cyclotomic_order"], 12);
    assert_eq!(v["config"]["convention"], "monomial");
    // field order follows the schema
    let text = stdout(&a);
    let keys: Vec<usize> =
        ["\"name\"", "\"claimed\"", "\"computed\"", "\"difference\"", "\"pass\""].iter().map(|k| text.find(k).unwrap()).collect();
    assert!(keys.windows(2).all(|w| w[0] < w[1]), "{keys:?}");
}

#[test]
fn verify_fails_under_the_other_convention() {
    let o = qk1(&["verify", "--convention", "divided-power"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("FAIL tau_series"));
}

#[test]
fn out_file_matches_stdout() {
    let dir = std::env::temp_dir().join(format!("qk1-out-{}", std::process::id()));
    let o = qk1(&["tau", "--json", "--out", dir.to_str().unwrap()]);
    let written = std::fs::read(&dir).unwrap();
    std::fs::remove_file(&dir).ok();
    assert_eq!(written, o.stdout);
}

#[test]
fn five_term_decomposition() {
    let o = qk1(&["pf", "1/((1+q)*(1-q^3)*(1-q^4))", "--json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    let parts: Vec<(String, String)> = v["groups"]
        .as_array()
        .unwrap()
        .iter()
        .map(|g| (g["factor"].as_str().unwrap().to_string(), g["part"].as_str().unwrap().to_string()))
        .collect();
    let expect = [
        ("q - 1", "(-3*q + 4)/(24*q^2 - 48*q + 24)"),
        ("q + 1", "(3*q + 4)/(8*q^2 + 16*q + 8)"),
        ("q^2 + q + 1", "1/(3*q^2 + 3*q + 3)"),
        ("q^2 + 1", "-q/(4*q^2 + 4)"),
    ];
    for (f, p) in expect {
        assert!(parts.contains(&(f.to_string(), p.to_string())), "{f}: {parts:?}");
    }
    assert_eq!(v["split"].as_array().unwrap().len(), 8);
}

#[test]
fn residues_sum_to_zero() {
    let o = qk1(&["residues", "1/(q*(1-q^(-4))*(1-q^(-6)))"]);
    assert_eq!(o.status.code(), Some(0));
    let s = stdout(&o);
    assert!(s.contains("q = 1: 5/24"), "{s}");
    assert!(s.contains("infinity: -1"));
    assert!(s.trim_end().ends_with("sum: 0"));
    // a denominator that does not split falls back to grouped sums
    let o = qk1(&["residues", "1/(q^2+q+2)"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("roots of q^2 + q + 2: 0"));
}

#[test]
fn two_point_difference_is_zero() {
    let o = qk1(&["two-point", "--json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["difference"], "0");
}

#[test]
fn prop31_sides_agree() {
    let o = qk1(&["prop31", "--tau-order", "3"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("difference:   0"));
}

#[test]
fn usage_and_parse_errors_exit_2() {
    let o = qk1(&["pf", "1/(1-q^5"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("byte 8"));
    assert_eq!(qk1(&["pf", "q^1.5"]).status.code(), Some(2));
    assert_eq!(qk1(&["pf", "q1*q2"]).status.code(), Some(2));
    assert_eq!(qk1(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(qk1(&["two-point", "--cyclotomic-order", "10"]).status.code(), Some(2));
    assert_eq!(qk1(&["two-point", "--order", "4"]).status.code(), Some(2));
}

#[test]
fn cyclotomic_order_from_environment() {
    let o = Command::new(env!("CARGO_BIN_EXE_qk1")).args(["verify", "--json"]).env("QK1_CYCLOTOMIC_ORDER", "24").output().unwrap();
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["config"]["cyclotomic_order"], 24);
    assert_eq!(o.status.code(), Some(0));
}
