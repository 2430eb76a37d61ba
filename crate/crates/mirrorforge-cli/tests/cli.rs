use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_mirrorforge")).args(args).env_remove("MIRRORFORGE_SEED").output().expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).expect("JSON report")
}

fn examples(dir: &Path) {
    let o = run(&["examples", "--out", dir.to_str().unwrap()]);
    assert_eq!(code(&o), 0);
}

fn path(dir: &Path, f: &str) -> String {
    dir.join(f).to_str().unwrap().to_string()
}

#[test]
fn potential_of_cp1() {
    let o = run(&["potential", "--builtin", "CP1", "--format", "json"]);
    assert_eq!(code(&o), 0);
    let notes = json(&o)["notes"].to_string();
    assert!(notes.contains("T^(1/2)*(y1 + y1^-1)"), "{notes}");
}

#[test]
fn malformed_json_reports_the_position() {
    let dir = tempfile::tempdir().unwrap();
    let f = dir.path().join("bad.json");
    std::fs::write(&f, "{\"name\": \"CP1\",\n \"dim\": }").unwrap();
    let o = run(&["potential", f.to_str().unwrap()]);
    assert_eq!(code(&o), 2);
    let err = String::from_utf8_lossy(&o.stderr);
    assert!(err.contains("line 2 column"), "{err}");
}

#[test]
fn non_primitive_normal_is_invalid() {
    let dir = tempfile::tempdir().unwrap();
    examples(dir.path());
    let mut p: Value = serde_json::from_str(&std::fs::read_to_string(dir.path().join("polytope-CP1.json")).unwrap()).unwrap();
    p["facets"][0]["normal"] = serde_json::json!([2]);
    let f = dir.path().join("cp1-bad.json");
    std::fs::write(&f, p.to_string()).unwrap();
    let o = run(&["potential", f.to_str().unwrap()]);
    assert_eq!(code(&o), 2);
    assert!(String::from_utf8_lossy(&o.stderr).contains("invalid fan"));
}

#[test]
fn mirror_check_on_builtins() {
    for (name, dim) in [("CP1", 2), ("CP2", 3)] {
        let o = run(&["mirror-check", "--builtin", name, "--format", "json"]);
        assert_eq!(code(&o), 0, "{}", stdout(&o));
        let r = json(&o);
        assert!(r["notes"].to_string().contains(&format!("dim Jac = {dim}")));
        assert_eq!(r["params"]["t0"], "1/4");
    }
    assert_eq!(code(&run(&["mirror-check", "--builtin", "CP1", "--t0", "2"])), 2);
}

#[test]
fn corrupted_relations_fail_with_a_witness() {
    let dir = tempfile::tempdir().unwrap();
    examples(dir.path());
    let mut p: Value = serde_json::from_str(&std::fs::read_to_string(dir.path().join("polytope-CP1.json")).unwrap()).unwrap();
    p["qh_relations"] = serde_json::json!(["z1 - z2", "z1*z2 - 2*T"]);
    let f = dir.path().join("cp1-wrong.json");
    std::fs::write(&f, p.to_string()).unwrap();
    let o = run(&["mirror-check", f.to_str().unwrap(), "--format", "json"]);
    assert_eq!(code(&o), 1);
    let checks = json(&o)["checks"].clone();
    let ks = checks.as_array().unwrap().iter().find(|c| c["passed"] == false).unwrap();
    assert!(ks["witness"].as_str().unwrap().contains("maps to"));
}

#[test]
fn theorem_passes_and_rmax_zero_keeps_the_base_identities() {
    let dir = tempfile::tempdir().unwrap();
    examples(dir.path());
    let o = run(&["theorem", &path(dir.path(), "setup-clifford1-u.json"), "--format", "json"]);
    assert_eq!(code(&o), 0, "{}", stdout(&o));
    let r = json(&o);
    assert_eq!(r["params"]["rmax"], "3");
    let names: Vec<String> = r["checks"].as_array().unwrap().iter().map(|c| c["name"].as_str().unwrap().to_string()).collect();
    assert!(names.iter().any(|n| n.starts_with("(moduleandxi)")));

    let o = run(&["theorem", "--builtin", "clifford1-w", "--rmax", "0", "--format", "json"]);
    assert_eq!(code(&o), 0);
    let names = json(&o)["checks"].to_string();
    assert!(names.contains("(qm1m1q) = -(deltaxi)") && !names.contains("(moduleandxi)"));
}

#[test]
fn theorem_with_a_corrupted_family_is_invalid() {
    let dir = tempfile::tempdir().unwrap();
    examples(dir.path());
    let mut s: Value = serde_json::from_str(&std::fs::read_to_string(dir.path().join("setup-clifford1-w.json")).unwrap()).unwrap();
    s["family"]["m"].as_array_mut().unwrap().push(serde_json::json!({"k": 1, "inputs": ["1"], "output": [["e1", "t"]]}));
    let f = dir.path().join("setup-bad.json");
    std::fs::write(&f, s.to_string()).unwrap();
    let o = run(&["theorem", f.to_str().unwrap()]);
    assert_eq!(code(&o), 2, "{}", String::from_utf8_lossy(&o.stderr));
}

#[test]
fn hochschild_exit_codes() {
    let o = run(&["hochschild", "--builtin", "clifford-e2", "--format", "json"]);
    assert_eq!(code(&o), 0);
    assert!(json(&o)["notes"].to_string().contains("HH^0 = 1, HH^1 = 0"));
    let o = run(&["hochschild", "--builtin", "dual-numbers", "--format", "json"]);
    assert_eq!(code(&o), 3);
    assert!(json(&o)["warnings"][0].as_str().unwrap().contains("NotStabilized"));
}

#[test]
fn mf_with_a_bad_q_fails() {
    let dir = tempfile::tempdir().unwrap();
    examples(dir.path());
    let f = path(dir.path(), "mf-x2.json");
    assert_eq!(code(&run(&["mf", &f])), 0);
    let mut list: Value = serde_json::from_str(&std::fs::read_to_string(&f).unwrap()).unwrap();
    list[0]["Q01"][0][0] = Value::String("2*x".into());
    std::fs::write(&f, list.to_string()).unwrap();
    assert_eq!(code(&run(&["mf", &f])), 1);
}

#[test]
fn gamma_on_x_squared() {
    let dir = tempfile::tempdir().unwrap();
    examples(dir.path());
    let o = run(&["gamma", &path(dir.path(), "gamma-x2.json"), "--format", "json"]);
    assert_eq!(code(&o), 0, "{}", stdout(&o));
    assert_eq!(json(&o)["params"]["order (dmax)"], "3");
}

#[test]
fn reports_are_deterministic_and_seeded() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.md");
    let b = dir.path().join("b.md");
    for f in [&a, &b] {
        let o = run(&["hochschild", "--builtin", "clifford2", "--out", f.to_str().unwrap()]);
        assert_eq!(code(&o), 0);
    }
    assert_eq!(std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
    let o = Command::new(env!("CARGO_BIN_EXE_mirrorforge"))
        .args(["gamma", "--builtin", "x2", "--format", "json"])
        .env("MIRRORFORGE_SEED", "11")
        .output()
        .unwrap();
    assert_eq!(code(&o), 0);
    assert_eq!(json(&o)["params"]["seed"], "11");
    let o = Command::new(env!("CARGO_BIN_EXE_mirrorforge")).args(["gamma", "--builtin", "x2"]).env("MIRRORFORGE_SEED", "x").output().unwrap();
    assert_eq!(code(&o), 2);
}

#[test]
fn missing_input_is_invalid() {
    assert_eq!(code(&run(&["theorem"])), 2);
    assert_eq!(code(&run(&["theorem", "--builtin", "nope"])), 2);
}
