use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn fixture(name: &str) -> String {
    let root = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures");
    root.join(name).to_string_lossy().into_owned()
}

fn pal(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_pal")).args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).unwrap()
}

#[test]
fn parse_prints_canonical_text() {
    assert_eq!(stdout(&pal(&["parse", "p & ~K_b p", "--nnf"])).trim(), "p & L_b ~p");
    assert_eq!(stdout(&pal(&["parse", "K_1 L_2 p"])).trim(), "K_1 L_2 p");
    let bad = pal(&["parse", "p &&"]);
    assert_eq!(bad.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&bad.stderr).contains("offset 3"));
}

#[test]
fn eval_on_fixtures() {
    let fig1 = fixture("figure1.json");
    let fig2 = fixture("figure2.json");
    assert_eq!(stdout(&pal(&["eval", &fig1, "p & ~K_b p", "--world", "w2"])).trim(), "true");
    assert_eq!(stdout(&pal(&["eval", &fig1, "p", "--world", "w1"])).trim(), "false");
    assert_eq!(stdout(&pal(&["eval", &fig2, "K_1 L_2 p", "--world", "w3"])).trim(), "false");
    assert_eq!(pal(&["eval", &fig1, "p", "--world", "w9"]).status.code(), Some(4));
}

#[test]
fn invalid_model_exits_3() {
    let dir = std::env::temp_dir().join(format!("pal-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("bad.json");
    std::fs::write(&path, r#"{"worlds":["w1"],"agents":{},"valuation":{"p":["w7"]}}"#).unwrap();
    let o = pal(&["eval", path.to_str().unwrap(), "p", "--world", "w1"]);
    assert_eq!(o.status.code(), Some(3));
    std::fs::write(&path, "not json").unwrap();
    assert_eq!(pal(&["eval", path.to_str().unwrap(), "p", "--world", "w1"]).status.code(), Some(3));
}

#[test]
fn announce_writes_restricted_model() {
    let o = pal(&["announce", &fixture("figure1.json"), "p & ~K_b p"]);
    assert!(o.status.success());
    assert_eq!(json(&o)["worlds"], serde_json::json!(["w2"]));

    let o = pal(&["announce", &fixture("figure2.json"), "K_1 L_2 p"]);
    assert_eq!(json(&o)["worlds"], serde_json::json!(["w1", "w2"]));

    let out = std::env::temp_dir().join(format!("pal-announce-{}.json", std::process::id()));
    let o = pal(&["announce", &fixture("figure2.json"), "true", "--out", out.to_str().unwrap()]);
    assert!(o.status.success());
    let before: Value = serde_json::from_str(&std::fs::read_to_string(fixture("figure2.json")).unwrap()).unwrap();
    let after: Value = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(before["worlds"], after["worlds"]);
    assert_eq!(before["valuation"], after["valuation"]);

    assert_eq!(pal(&["announce", &fixture("figure1.json"), "p & ~p"]).status.code(), Some(4));
}

#[test]
fn classify_verdicts() {
    let v = json(&pal(&["classify", "K_1 L_2 p"]));
    assert_eq!(v["status"], "unsuccessful");
    assert_eq!(v["rule_id"], "KLSimple");
    assert!(v["witness"].is_object());

    let v = json(&pal(&["classify", "L_1 K_2 p"]));
    assert_eq!(v["status"], "successful");
    assert_eq!(v["rule_id"], "LKSimple");

    let v = json(&pal(&["classify", "K_1 K_2 L_1 p", "--rules", "paper"]));
    assert_eq!(v["status"], "unsuccessful");
    assert_eq!(v["disputed"], true);
    let v = json(&pal(&["classify", "K_1 K_2 L_1 p", "--rules", "validated"]));
    assert_eq!(v["status"], "unknown");
}

#[test]
fn check_command() {
    let v = json(&pal(&["check", &fixture("figure1.json"), "p & ~K_b p"]));
    assert_eq!(v["successful"], false);
    assert_eq!(v["self_refuting"], true);
    let v = json(&pal(&["check", &fixture("figure3.json"), "K_1 K_2 L_1 p"]));
    assert_eq!(v["successful"], true);
}

#[test]
fn search_reports() {
    let v = json(&pal(&["search", "K_1 L_2 p", "--max-worlds", "4", "--stable"]));
    assert_eq!(v["outcome"], "found");
    let v = json(&pal(&["search", "L_1 K_2 p", "--max-worlds", "5", "--stable"]));
    assert_eq!(v["outcome"], "none_up_to_bound");

    let args = ["search", "K_1 L_2 p", "--strategy", "random-tree", "--samples", "500", "--seed", "3", "--max-worlds", "6", "--stable"];
    assert_eq!(pal(&args).stdout, pal(&args).stdout);

    let o = pal(&["search", "K_b p", "--agents", "a"]);
    assert_eq!(o.status.code(), Some(4));
    assert_eq!(pal(&["search", "p", "--max-worlds", "0"]).status.code(), Some(4));
}

#[test]
fn verify_command() {
    let o = pal(&["verify", "--max-ops", "3", "--agents", "2", "--max-worlds", "5"]);
    assert!(o.status.success());
    assert_eq!(json(&o)["disagreements"], 0);

    let o = pal(&["verify", "--max-ops", "2", "--agents", "1", "--max-worlds", "4"]);
    let v = json(&o);
    assert_eq!(v["disagreements"], 0);
    assert!(v["entries"].as_array().unwrap().iter().all(|e| e["status"] == "successful"));

    let o = pal(&["verify", "--max-ops", "4", "--agents", "2", "--max-worlds", "5", "--rules", "paper"]);
    assert!(o.status.success());
    let v = json(&o);
    let bad: Vec<&str> = v["entries"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|e| e["check"] == "disagrees")
        .map(|e| e["formula"].as_str().unwrap())
        .collect();
    assert!(bad.contains(&"K_1 K_2 L_1 p"));
}
