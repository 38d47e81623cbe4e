use serde_json::{json, Value};
use std::path::PathBuf;
use std::process::{Command, Output};

fn g2(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_g2")).args(args).output().expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

fn stdout_json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&o.stdout)))
}

fn scratch(name: &str) -> PathBuf {
    let d = std::env::temp_dir().join(format!("g2-cli-{}-{name}", std::process::id()));
    let _ = std::fs::remove_dir_all(&d);
    d
}

#[test]
fn fuse_examples() {
    let o = g2(&["fuse", "1,1", "1,1", "--level", "generic"]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout_json(&o), json!({"[0,0]":1,"[1,1]":1,"[2,0]":1,"[3,0]":1,"[2,2]":1}));
    let o = g2(&["fuse", "1,0", "1,0", "--level", "3"]);
    assert_eq!(stdout_json(&o), json!({"[0,0]":1,"[1,0]":1}));
    let o = g2(&["fuse", "9,9", "1,0", "--level", "1"]);
    assert_eq!(code(&o), 2);
    assert!(String::from_utf8_lossy(&o.stderr).contains("alcove"));
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(code(&g2(&["synth", "--n", "99"])), 2);
    assert_eq!(code(&g2(&["synth", "--q", "root:26:2"])), 2);
    assert_eq!(code(&g2(&["synth", "--level", "1", "--q", "float:1.1,0"])), 2);
    assert_eq!(code(&g2(&["synth", "--q", "generic"])), 2);
    assert_eq!(code(&g2(&["fuse", "1,0"])), 2);
    assert_eq!(code(&g2(&["fuse", "1,0", "1,0", "--format", "dot"])), 2);
    assert_eq!(code(&g2(&["verify", "lemma459"])), 2);
    assert_eq!(code(&g2(&["verify", "lemma459", "--ell", "7"])), 2);
}

#[test]
fn dims_generic_polynomial() {
    let o = g2(&["dims", "1,0", "--q", "generic", "--format", "text"]);
    assert_eq!(code(&o), 0);
    assert_eq!(String::from_utf8_lossy(&o.stdout).trim(), "q^10 + q^8 + q^2 + 1 + q^-2 + q^-8 + q^-10");
    let j = stdout_json(&g2(&["dims", "1,0"]));
    assert_eq!(j["classical"], 7);
}

#[test]
fn synth_float_passes() {
    let o = g2(&["synth", "--mu", "2,1", "--n", "4", "--q", "float:1.1,0", "--mode", "float"]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let j = stdout_json(&o);
    assert_eq!(j["pass"], true);
    assert_eq!(j["representation"]["paths"].as_array().unwrap().len(), 8);
    assert!(j["verdicts"].as_array().unwrap().iter().all(|v| v["pass"] == true));
}

#[test]
fn synth_root_of_unity_has_cyclotomic_entries() {
    let o = g2(&["synth", "--mu", "1,0", "--n", "3", "--q", "root:26:1", "--level", "1"]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let j = stdout_json(&o);
    assert_eq!(j["config"]["mode"], "exact");
    let blocks: Vec<&Value> = j["representation"]["generators"]
        .as_array()
        .unwrap()
        .iter()
        .flat_map(|g| g["blocks"].as_array().unwrap())
        .collect();
    let exact: Vec<&Value> = blocks.iter().filter(|b| !b["exact"].is_null()).copied().collect();
    assert!(!exact.is_empty());
    assert!(exact.iter().all(|b| b["exact"].to_string().contains("zeta_26")));
}

#[test]
fn verification_failure_exits_4() {
    let o = g2(&["verify", "tl-obstruction", "--ell", "4"]);
    assert_eq!(code(&o), 4);
    assert_eq!(stdout_json(&o)[0]["pass"], false);
}

#[test]
fn verify_checks_pass() {
    let o = g2(&["verify", "lemma459", "--ell", "5"]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout_json(&o)[0]["check"], "lemma459");
    assert_eq!(code(&g2(&["verify", "recent", "--level", "9"])), 0);
    assert_eq!(code(&g2(&["verify", "distinctness", "--level", "1"])), 0);
    let o = g2(&["verify", "rep", "--mu", "1,1", "--n", "3", "--format", "text"]);
    assert_eq!(code(&o), 0);
    assert!(String::from_utf8_lossy(&o.stdout).contains("PASS burnside"));
}

#[test]
fn bratteli_dot_is_deterministic() {
    let a = g2(&["bratteli", "4", "--format", "dot"]);
    let b = g2(&["bratteli", "4", "--format", "dot"]);
    assert_eq!(code(&a), 0);
    assert!(a.stdout.starts_with(b"digraph"));
    assert_eq!(a.stdout, b.stdout);
    let t = String::from_utf8(g2(&["bratteli", "2", "--format", "text"]).stdout).unwrap();
    assert_eq!(t.lines().nth(2).unwrap(), "2: [0,0]x1 [1,0]x1 [1,1]x1 [2,0]x1");
}

#[test]
fn synth_output_is_reproducible() {
    let args = ["synth", "--mu", "1,0", "--n", "4", "--seed", "7"];
    assert_eq!(g2(&args).stdout, g2(&args).stdout);
}

#[test]
fn catalog_case_two_at_zeta30() {
    let j = stdout_json(&g2(&["catalog", "w", "--q", "root:30:1"]));
    assert_eq!(j["at_q"]["w"]["id"], 2);
    assert_eq!(j["at_q"]["w"]["theta"], "omega");
    let j = stdout_json(&g2(&["catalog", "w", "--q", "float:1.1,0"]));
    assert_eq!(j["at_q"]["w"]["kind"], "irreducible");
    assert_eq!(j["w_cases"].as_array().unwrap().len(), 9);
}

#[test]
fn cache_round_trip() {
    let dir = scratch("cache");
    let d = dir.to_str().unwrap();
    let plain = g2(&["fuse", "2,0", "2,0", "--level", "4"]);
    let first = g2(&["fuse", "2,0", "2,0", "--level", "4", "--cache", d]);
    let file = dir.join("fusion.json");
    let stored: Value = serde_json::from_str(&std::fs::read_to_string(&file).unwrap()).unwrap();
    assert!(stored["version"].as_str().unwrap().starts_with("g2-fusion-cache/"));
    assert!(!stored["entries"].as_array().unwrap().is_empty());
    let second = g2(&["fuse", "2,0", "2,0", "--level", "4", "--cache", d]);
    assert_eq!(plain.stdout, first.stdout);
    assert_eq!(first.stdout, second.stdout);

    std::fs::write(&file, r#"{"version":"other","entries":[]}"#).unwrap();
    let stale = g2(&["fuse", "2,0", "2,0", "--level", "4", "--cache", d]);
    assert_eq!(code(&stale), 0);
    assert_eq!(stale.stdout, plain.stdout);
    assert!(String::from_utf8_lossy(&stale.stderr).contains("ignoring"));
    std::fs::write(&file, "not json").unwrap();
    assert_eq!(g2(&["fuse", "2,0", "2,0", "--level", "4", "--cache", d]).stdout, plain.stdout);
    let _ = std::fs::remove_dir_all(&dir);
}
