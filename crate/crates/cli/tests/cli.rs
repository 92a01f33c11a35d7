use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn fixture(name: &str) -> String {
    let p: PathBuf = [env!("CARGO_MANIFEST_DIR"), "..", "..", "fixtures", name]
        .iter()
        .collect();
    p.to_string_lossy().into_owned()
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_leibniz-lab"))
        .args(args)
        .env_remove("LEIBNIZ_LAB_SEED")
        .output()
        .expect("binary runs")
}

fn json_ok(args: &[&str]) -> Value {
    let out = run(args);
    assert!(
        out.status.success(),
        "{args:?}: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn assert_invalid(args: &[&str]) {
    let out = run(args);
    assert_eq!(out.status.code(), Some(2), "{args:?}");
    assert!(!out.stderr.is_empty());
}

#[test]
fn catalan_prints_decimal() {
    let out = run(&["catalan", "--p", "2", "--n", "3"]);
    assert!(out.status.success());
    assert_eq!(String::from_utf8(out.stdout).unwrap(), "5\n");
    let table = run(&["catalan", "--p", "3", "--n", "6", "--table"]);
    let text = String::from_utf8(table.stdout).unwrap();
    assert_eq!(text.lines().count(), 7);
    assert!(text.lines().skip(1).all(|l| l.ends_with("PASS")));
}

#[test]
fn example_build_is_deterministic_and_matches_fixture() {
    let a = run(&["build", "--example"]).stdout;
    let b = run(&["build", "--params", &fixture("example_params.json")]).stdout;
    assert_eq!(a, b);
    assert_eq!(a, std::fs::read(fixture("example.json")).unwrap());
}

#[test]
fn representatives_include_the_example() {
    let v = json_ok(&["representatives", "--family", "1", "--n", "5"]);
    let example: Value =
        serde_json::from_str(&std::fs::read_to_string(fixture("example_params.json")).unwrap())
            .unwrap();
    let list = v.as_array().unwrap();
    assert_eq!(list.len(), 3);
    assert!(list
        .iter()
        .any(|e| e["params"] == example && e["tag"]["tag"] == "F1^3"));
}

#[test]
fn example_is_not_characteristically_nilpotent() {
    let v = json_ok(&["char-nilpotent", "--algebra", &fixture("example.json")]);
    assert_eq!(v["char_nilpotent"], false);
    assert_eq!(v["der_dim"], 6);
    assert_eq!(v["method"], "engel");
    assert!(v["witness"].is_array());
}

#[test]
fn structure_queries() {
    let v = json_ok(&["lcs", "--algebra", &fixture("example.json")]);
    assert_eq!(v["dims"], serde_json::json!([6, 4, 3, 2, 1, 0]));
    assert_eq!(v["filiform"], true);
    let v = json_ok(&["leibniz", "--algebra", &fixture("f3_one.json")]);
    assert_eq!(v["leibniz"], true);
    let v = json_ok(&["derive", "--params", &fixture("example_params.json")]);
    assert_eq!(v["dim"], 6);
    assert_eq!(v["basis"].as_array().unwrap().len(), 6);
}

#[test]
fn classification_reports() {
    let v = json_ok(&[
        "classify",
        "--family",
        "1",
        "--params",
        &fixture("example_params.json"),
    ]);
    assert_eq!(v["tag"], "F1^3");
    assert_eq!(v["payload"]["s"], 3);
    assert_eq!(v["engel_agrees"], true);
    // the isolated even representative over Q(sqrt 3) turns out nilpotent
    let v = json_ok(&["classify", "--params", &fixture("f2_even2_n6.json")]);
    assert_eq!(v["char_nilpotent"], true);
    assert_eq!(v["engel_agrees"], true);
}

#[test]
fn isomorphism_commands() {
    let v = json_ok(&[
        "iso-apply",
        "--params",
        &fixture("f3_one_params.json"),
        "--change",
        r#"{"A0":"1","A1":"0","B1":"1/2"}"#,
    ]);
    assert_eq!(v["theta1"], "2");
    let v = json_ok(&[
        "iso",
        "verify",
        "--family",
        "1",
        "--params",
        &fixture("example_params.json"),
        "--change",
        r#"{"A":"2","B":"-1"}"#,
    ]);
    assert_eq!(v["ok"], true);
    assert_eq!(v["class_preserved"], true);
    assert_eq!(v["phi"].as_array().unwrap().len(), 6);
}

#[test]
fn validation_errors_exit_with_two() {
    assert_invalid(&["catalan", "--p", "1", "--n", "3"]);
    assert_invalid(&["lcs", "--algebra", "does-not-exist.json"]);
    assert_invalid(&[
        "classify",
        "--family",
        "2",
        "--params",
        &fixture("example_params.json"),
    ]);
    assert_invalid(&[
        "iso-apply",
        "--params",
        &fixture("example_params.json"),
        "--change",
        r#"{"A":"1","B":"-1"}"#,
    ]);
    assert_invalid(&["representatives", "--family", "4", "--n", "5"]);
    assert_invalid(&["no-such-verb"]);
    let dir = std::env::temp_dir().join(format!("leibniz-lab-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let bad = dir.join("bad.json");
    std::fs::write(
        &bad,
        r#"{"dim":2,"field":{"kind":"rational"},"table":[{"i":0,"j":0,"c":[[1,"1/0"]]}]}"#,
    )
    .unwrap();
    assert_invalid(&["leibniz", "--algebra", bad.to_str().unwrap()]);
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn third_family_with_alpha_is_unsupported_by_the_classifier() {
    let dir = std::env::temp_dir().join(format!("leibniz-lab-cli-a-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let p = dir.join("p.json");
    std::fs::write(
        &p,
        r#"{"family":3,"n":5,"theta1":"1","theta2":"0","theta3":"0","alpha_flag":1}"#,
    )
    .unwrap();
    assert_invalid(&["classify", "--params", p.to_str().unwrap()]);
    let v = json_ok(&["char-nilpotent", "--params", p.to_str().unwrap()]);
    assert!(v["char_nilpotent"].is_boolean());
    std::fs::remove_dir_all(&dir).ok();
}
