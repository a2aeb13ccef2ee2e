use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;
use tensorion_core::report::ReportSet;

fn tensorion(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_tensorion"))
        .args(args)
        .env_remove("TENSORION_CACHE_DIR")
        .output()
        .expect("run tensorion")
}

fn path(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn read_json(p: &Path) -> Value {
    serde_json::from_slice(&std::fs::read(p).unwrap()).unwrap()
}

#[test]
fn algebra_build_then_inspect() {
    let dir = tempfile::tempdir().unwrap();
    let f = dir.path().join("t.json");
    let out = tensorion(&["algebra", "build", "--spec", "C*H*O", "--out", path(&f)]);
    assert_eq!(out.status.code(), Some(0));
    let j = read_json(&f);
    assert_eq!(j["labels"].as_array().unwrap().len(), 64);
    assert_eq!(j["labels"][1], "o1");
    assert_eq!(j["labels"][63], "c1h3o7");

    let out = tensorion(&["algebra", "inspect", path(&f)]);
    assert_eq!(out.status.code(), Some(0));
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["dim"], 64);
    assert_eq!(v["profile"]["alternative"]["holds"], false);
    assert_eq!(v["center_dim"], 2);
}

#[test]
fn jordan_build_reports_non_closure() {
    let dir = tempfile::tempdir().unwrap();
    let f = dir.path().join("j.json");
    let ok = tensorion(&["jordan", "build", "--coeff", "C*O", "--involution", "gamma-tilde", "--out", path(&f)]);
    assert_eq!(ok.status.code(), Some(0), "{}", String::from_utf8_lossy(&ok.stderr));
    assert_eq!(read_json(&f)["labels"].as_array().unwrap().len(), 54);

    let bad = tensorion(&["jordan", "build", "--coeff", "C*O", "--involution", "gamma", "--out", path(&dir.path().join("x.json"))]);
    assert_eq!(bad.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&bad.stderr).contains("not closed"));
    assert!(!dir.path().join("x.json").exists());
}

#[test]
fn derive_and_lie_analyze() {
    let dir = tempfile::tempdir().unwrap();
    let j = dir.path().join("j3h.json");
    let d = dir.path().join("der.json");
    let r = dir.path().join("report.json");
    assert_eq!(tensorion(&["jordan", "build", "--coeff", "H", "--out", path(&j)]).status.code(), Some(0));
    assert_eq!(tensorion(&["jordan", "check", path(&j)]).status.code(), Some(0));
    assert_eq!(tensorion(&["derive", "--algebra", path(&j), "--out", path(&d)]).status.code(), Some(0));
    let out = tensorion(&["lie", "analyze", path(&d), "--report", path(&r)]);
    assert_eq!(out.status.code(), Some(0));
    let set: ReportSet = serde_json::from_value(read_json(&r)).unwrap();
    let killing = set.checks.iter().find(|c| c.name == "killing").unwrap();
    assert_eq!(killing.actual["inertia"], serde_json::json!([0, 0, 21]));

    let co = dir.path().join("co.json");
    let out = tensorion(&["derive", "--algebra", "C*O", "--out", path(&co)]);
    assert!(String::from_utf8_lossy(&out.stdout).contains("dim 14 (full derivation algebra: 28)"));
    tensorion(&["derive", "--algebra", "C*O", "--full-derivations", "--out", path(&co)]);
    assert_eq!(read_json(&co)["dim"], 28);
}

#[test]
fn tits_build_and_verify() {
    let dir = tempfile::tempdir().unwrap();
    let f = dir.path().join("e6.json");
    let out = tensorion(&["tits", "build", "--A", "C", "--derA", "full", "--B", "O", "--out", path(&f)]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let r = dir.path().join("verify.json");
    let out = tensorion(&["tits", "verify", "--algebra", path(&f), "--report", path(&r)]);
    assert_eq!(out.status.code(), Some(0));
    let v = read_json(&r);
    assert_eq!(v["tally"]["fail"], 0);
    assert_eq!(v["checks"][1]["actual"]["triples_checked"], 76076);

    // The factor-wise der(C⊗H) does not contain every D_(a,b).
    let out = tensorion(&["tits", "build", "--A", "C*H", "--B", "O", "--out", path(&dir.path().join("a1.json"))]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn sampled_mode_requires_a_seed() {
    let dir = tempfile::tempdir().unwrap();
    let out = tensorion(&["reproduce", "--out", path(dir.path()), "--jacobi", "sample"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("--seed"));
    assert_eq!(tensorion(&["no-such-command"]).status.code(), Some(2));
}

#[test]
fn coset_audit_with_custom_manifest() {
    let dir = tempfile::tempdir().unwrap();
    let m = dir.path().join("m.json");
    std::fs::write(&m, r#"[{"name": "g2 + su2", "lhs": [14, 3], "rhs": [17]}, {"name": "off by one", "lhs": [[7, 26]], "rhs": [183]}]"#).unwrap();
    let out = tensorion(&["coset", "audit", "--manifest", path(&m)]);
    assert_eq!(out.status.code(), Some(1));
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.contains("1 pass, 1 fail"), "{text}");
    assert_eq!(tensorion(&["coset", "audit"]).status.code(), Some(0));
}

#[test]
fn reproduce_writes_reports_and_reuses_the_cache() {
    let dir = tempfile::tempdir().unwrap();
    let out = tensorion(&["reproduce", "--out", path(dir.path())]);
    // The (C⊗H, γ) case fails, so the exit code is 1.
    assert_eq!(out.status.code(), Some(1));
    assert!(!String::from_utf8_lossy(&out.stderr).contains(" 0 misses"));
    let set: ReportSet = serde_json::from_value(read_json(&dir.path().join("report.json"))).unwrap();
    assert!(set.checks.iter().all(|c| c.is_well_formed() && c.wall_time_ms.is_some()));
    assert!(set.checks.iter().all(|c| c.config == set.fingerprint));
    let summary = std::fs::read_to_string(dir.path().join("summary.txt")).unwrap();
    assert_eq!(summary.lines().count(), set.checks.len() + 3);

    let again = tensorion(&["reproduce", "--out", path(dir.path())]);
    let stderr = String::from_utf8_lossy(&again.stderr);
    assert!(stderr.contains(" 0 misses"), "{stderr}");
}

#[test]
fn bullet_coefficient_changes_the_fingerprint() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a");
    let b = dir.path().join("b");
    tensorion(&["reproduce", "--out", path(&a), "--canonical"]);
    tensorion(&["reproduce", "--out", path(&b), "--canonical", "--bullet-coeff", "1/2"]);
    let (ra, rb) = (read_json(&a.join("report.json")), read_json(&b.join("report.json")));
    assert_ne!(ra["fingerprint"], rb["fingerprint"]);
    let find = |r: &Value, n: &str| r["checks"].as_array().unwrap().iter().find(|c| c["name"] == n).unwrap().clone();
    assert_eq!(find(&ra, "jordan.bullet_trace_zero")["status"], "pass");
    assert_eq!(find(&rb, "jordan.bullet_trace_zero")["status"], "fail");
}
