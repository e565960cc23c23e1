use std::path::PathBuf;
use std::process::Command;

use serde_json::Value;

struct Out {
    code: i32,
    stdout: String,
    stderr: String,
}

fn qzx_env(args: &[&str], env: &[(&str, &str)]) -> Out {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_qzx"));
    cmd.args(args).env_remove("QZX_ORDER_CAP");
    for (k, v) in env {
        cmd.env(k, v);
    }
    let o = cmd.output().expect("qzx runs");
    Out {
        code: o.status.code().expect("exit code"),
        stdout: String::from_utf8(o.stdout).unwrap(),
        stderr: String::from_utf8(o.stderr).unwrap(),
    }
}

fn qzx(args: &[&str]) -> Out {
    qzx_env(args, &[])
}

fn tmp(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("qzx-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

fn json(args: &[&str]) -> Value {
    let o = qzx(args);
    assert_eq!(o.code, 0, "{}", o.stderr);
    serde_json::from_str(&o.stdout).unwrap()
}

#[test]
fn derive_escalating_text() {
    let o = qzx(&["derive", "--variant", "escalating", "--order", "4"]);
    assert_eq!(o.code, 0);
    assert!(o.stdout.contains("C_2 = (-q/(1+q))*AB + (1/(1+q))*BA"), "{}", o.stdout);
    assert!(o.stdout.contains("e_{q^4}^(x^4 C_4)"));
}

#[test]
fn uniform_c2_equals_escalating_c2() {
    let u = json(&["derive", "--variant", "uniform", "--order", "2", "--format", "json"]);
    let e = json(&["derive", "--variant", "escalating", "--order", "2", "--format", "json"]);
    assert_eq!(u["qzx-format-version"], 1);
    assert_eq!(u["factors"][0]["exponent"], e["factors"][0]["exponent"]);
    assert_eq!(u["factors"][0]["base_exponent"], 1);
    assert_eq!(e["factors"][0]["base_exponent"], 2);
}

#[test]
fn latex_grades_two_and_three() {
    let o = qzx(&["derive", "--variant", "escalating", "--order", "3", "--format", "latex"]);
    assert_eq!(o.code, 0);
    assert!(o.stdout.contains("e_{q^{2}}^{x^{2}\\left(-\\frac{q}{1+q}AB+\\frac{1}{1+q}BA\\right)}"));
    assert!(o.stdout.contains("e_{q^{3}}^{x^{3}\\left(\\frac{q^{3}}{1+2q+2q^{2}+q^{3}}A^{2}B"));
    let again = qzx(&["derive", "--variant", "escalating", "--order", "3", "--format", "latex"]);
    assert_eq!(o.stdout, again.stdout);
}

#[test]
fn order_cap_is_enforced() {
    let o = qzx(&["derive", "--variant", "escalating", "--order", "99"]);
    assert_eq!(o.code, 2);
    assert!(o.stderr.contains("cap is 10"), "{}", o.stderr);

    let o = qzx_env(&["derive", "--variant", "qbch", "--order", "6"], &[("QZX_ORDER_CAP", "5")]);
    assert_eq!(o.code, 2);
    assert!(o.stderr.contains("cap is 5"), "{}", o.stderr);

    let o = qzx_env(&["derive", "--variant", "qbch", "--order", "3"], &[("QZX_ORDER_CAP", "12")]);
    assert_eq!(o.code, 2);

    let o = qzx(&["derive", "--variant", "qbch", "--order", "1"]);
    assert_eq!(o.code, 2);
}

#[test]
fn bad_flags_are_usage_errors() {
    assert_eq!(qzx(&["derive", "--variant", "nope"]).code, 2);
    assert_eq!(qzx(&["limit"]).code, 2);
    assert_eq!(qzx(&["derive", "--variant", "qbch", "--convention", "e-lower"]).code, 2);
}

#[test]
fn verify_symbolic_passes() {
    let o = qzx(&["verify", "--symbolic", "--order", "6"]);
    assert_eq!(o.code, 0, "{}", o.stdout);
    assert!(o.stdout.contains("6 of 6 checks passed"));
    assert!(o.stdout.contains("PASS normal-order annihilation qbch: grades 2-6"));
}

#[test]
fn verify_numeric_reports_slope() {
    let v = json(&["verify", "--numeric", "--order", "4", "--q", "0.7", "--seed", "42", "--variant", "escalating", "--json"]);
    assert_eq!(v["passed"], true);
    let slope = v["checks"][0]["measured"]["slope"].as_f64().unwrap();
    assert!(slope >= 4.5, "slope {slope}");
}

#[test]
fn verify_rejects_q_one() {
    let o = qzx(&["verify", "--numeric", "--q", "1.0"]);
    assert_eq!(o.code, 2);
    assert!(o.stderr.contains("limit"), "{}", o.stderr);
    assert_eq!(qzx(&["verify", "--numeric", "--q", "-0.5"]).code, 2);
}

#[test]
fn verify_weyl() {
    let o = qzx(&["verify", "--weyl", "--dim", "4"]);
    assert_eq!(o.code, 0, "{}", o.stdout);
    assert!(o.stdout.starts_with("PASS weyl pair"));
}

#[test]
fn limit_escalating_order_four() {
    let o = qzx(&["limit", "--variant", "escalating", "--order", "4"]);
    assert_eq!(o.code, 0);
    assert!(o.stdout.contains("convention: classical"));
    assert!(o.stdout.contains("C_2 = (-1/2)*AB + (1/2)*BA"));
    assert!(o.stdout.contains("(-1/24)*A^3B"));
}

#[test]
fn limit_qbch_gives_bch() {
    let o = qzx(&["limit", "--variant", "qbch", "--order", "3"]);
    assert_eq!(o.code, 0);
    assert!(o.stdout.contains("Z_2 = (1/2)*AB + (-1/2)*BA"));
    assert!(o.stdout.contains("Z_3 = (1/12)*A^2B + (-1/6)*ABA"));
}

#[test]
fn export_then_limit_from_file() {
    let path = tmp("uniform.json");
    let p = path.to_str().unwrap();
    let o = qzx(&["derive", "--variant", "uniform", "--order", "4", "--format", "json", "-o", p]);
    assert_eq!(o.code, 0);
    assert!(o.stdout.is_empty());
    let from_file = qzx(&["limit", "-i", p]);
    let direct = qzx(&["limit", "--variant", "uniform", "--order", "4"]);
    assert_eq!(from_file.code, 0);
    assert_eq!(from_file.stdout, direct.stdout);
}

#[test]
fn limit_of_zero_b_factorization_is_trivial() {
    let path = tmp("zero-b.json");
    let doc = r#"{
        "qzx-format-version": 1, "variant": "escalating", "convention": "jackson", "order": 3,
        "factors": [
            {"grade": 2, "base_exponent": 2, "exponent": []},
            {"grade": 3, "base_exponent": 3, "exponent": []}
        ],
        "provenance": {"tool_version": "0.1.0", "derived_at_unix": 0}
    }"#;
    std::fs::write(&path, doc).unwrap();
    let o = qzx(&["limit", "-i", path.to_str().unwrap(), "--format", "json"]);
    assert_eq!(o.code, 0, "{}", o.stderr);
    let v: Value = serde_json::from_str(&o.stdout).unwrap();
    assert_eq!(v["convention"], "classical");
    for f in v["factors"].as_array().unwrap() {
        assert!(f["exponent"].as_array().unwrap().is_empty());
    }
}

#[test]
fn limit_pole_exits_one() {
    let path = tmp("lower.json");
    let p = path.to_str().unwrap();
    let o = qzx(&["derive", "--variant", "escalating", "--order", "3", "--convention", "e-lower", "--format", "json", "-o", p]);
    assert_eq!(o.code, 0);
    let o = qzx(&["limit", "-i", p]);
    assert_eq!(o.code, 1);
    assert!(o.stderr.contains("pole at q = 1 in the grade-2 exponent"), "{}", o.stderr);
}

#[test]
fn bad_document_version() {
    let path = tmp("v2.json");
    std::fs::write(
        &path,
        r#"{"qzx-format-version": 2, "variant": "qbch", "convention": "jackson", "order": 2,
            "factors": [], "provenance": {"tool_version": "x", "derived_at_unix": 0}}"#,
    )
    .unwrap();
    let o = qzx(&["limit", "-i", path.to_str().unwrap()]);
    assert_eq!(o.code, 2);
    assert!(o.stderr.contains("qzx-format-version"));
}

#[test]
fn report_flags_two_discrepancies() {
    let v = json(&["report", "--json"]);
    let bad: Vec<(String, u64)> = v
        .as_array()
        .unwrap()
        .iter()
        .filter(|c| c["agrees"] == false)
        .map(|c| (c["variant"].as_str().unwrap().to_string(), c["grade"].as_u64().unwrap()))
        .collect();
    assert_eq!(bad, [("uniform".to_string(), 4), ("qbch".to_string(), 3)]);
}
