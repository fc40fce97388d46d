use std::process::{Command, Output};

fn chinese(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_chinese")).args(args).output().expect("run chinese")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

#[test]
fn leaves_of_rank_3() {
    let out = chinese(&["leaves", "-n", "3"]);
    assert!(out.status.success());
    let ids: Vec<String> = stdout(&out).lines().map(|l| l.split('\t').next().unwrap().to_string()).collect();
    assert_eq!(ids, ["d2 A", "a2", "a3"]);
}

#[test]
fn leaves_json_is_versioned() {
    let out = chinese(&["leaves", "-n", "4", "--json"]);
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["format"], 1);
    assert_eq!(v["n"], 4);
    assert_eq!(v["leaves"].as_array().unwrap().len(), 5);
    assert_eq!(v["leaves"][0]["steps"], serde_json::json!(["d2", "A"]));
}

#[test]
fn eq_both_methods() {
    let out = chinese(&["eq", "-n", "3", "3 2 1", "2 3 1", "--method", "both"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out), "true\n");
    let out = chinese(&["eq", "-n", "3", "1 2", "2 1", "--method", "embedding"]);
    assert_eq!(stdout(&out), "false\n");
}

#[test]
fn normalize_and_mul() {
    let out = chinese(&["normalize", "-n", "3", "cba"]);
    assert_eq!(stdout(&out), "k22=1 k31=1\n= 2 3 1\n");
    let out = chinese(&["mul", "-n", "3", "3", "2 1"]);
    assert_eq!(stdout(&out), "k22=1 k31=1\n= 2 3 1\n");
}

#[test]
fn image_and_repr() {
    let out = chinese(&["image", "-n", "3", "--leaf", "d2 A", "3 2 1"]);
    assert_eq!(stdout(&out), "(N:1, B:p^0q^0, Z:1)\n");
    let out = chinese(&["repr", "-n", "3", "--leaf", "a2", "--json"]);
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["format"], 1);
    assert_eq!(v["images"]["3"], serde_json::json!([{"p": 0, "q": 1}, 0, 1]));
}

#[test]
fn witness_separates_leaves() {
    let out = chinese(&["witness", "-n", "4", "--leaf1", "d2 A", "--leaf2", "a2"]);
    assert!(out.status.success());
    assert!(stdout(&out).contains(" != "));
}

#[test]
fn tree_dot_has_all_vertices() {
    let out = chinese(&["tree", "-n", "3", "--dot"]);
    assert_eq!(stdout(&out).matches("[label=").count(), 5);
}

#[test]
fn verify_exit_codes() {
    let out = chinese(&["verify", "counts"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("653"));
    let out = chinese(&["verify", "faithfulness", "-n", "3", "--max-len", "3", "--inject-fault"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout(&out).contains("FAIL"));
    let out = chinese(&["verify", "nonsense"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn verify_is_byte_stable() {
    let args = ["verify", "identity", "--samples", "20", "--seed", "5", "--json"];
    assert_eq!(chinese(&args).stdout, chinese(&args).stdout);
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(chinese(&["normalize", "-n", "3", "4"]).status.code(), Some(2));
    assert_eq!(chinese(&["leaves", "-n", "2"]).status.code(), Some(2));
    assert_eq!(chinese(&["repr", "-n", "4", "--leaf", "a3"]).status.code(), Some(2));
    assert_eq!(chinese(&["frobnicate"]).status.code(), Some(2));
}
