use std::process::{Command, Output};

fn data(name: &str) -> String {
    format!("{}/data/{name}", env!("CARGO_MANIFEST_DIR"))
}

fn kha(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_kha")).args(args).env("KHA_THREADS", "2").output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn shuffle_mul_prints_canonical_value() {
    let o = kha(&["shuffle-mul", &data("quiver_a1.json"), "--left", "1:0", "--right", "1:0"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "qh^1 + qh^-1\n");
}

#[test]
fn shuffle_mul_json() {
    let o = kha(&["shuffle-mul", &data("quiver_a1.json"), "--left", "1:0", "--right", "1:0", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["schema"], 1);
    assert_eq!(v["command"], "shuffle-mul");
    assert_eq!(v["result"]["degree"], serde_json::json!([2]));
    assert_eq!(v["result"]["value"], "qh^1 + qh^-1");
    assert_eq!(v["ok"], true);
}

#[test]
fn verify_relations_a1() {
    let o = kha(&["verify-relations", &data("quiver_a1.json"), "--w", "1", "--vmax", "1", "--dmin", "-2", "--dmax", "2"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(stdout(&o).ends_with("8 passed, 0 failed, 0 skipped\n"));
}

#[test]
fn wheel_check_rejects_non_member() {
    let o = kha(&["wheel-check", &data("quiver_jordan.json"), "--rf", "1", "--degree", "3"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).starts_with("FAIL wheel: nonzero at z[1,1] = q*z[1,3]/t[1] = q*z[1,2]"));
}

#[test]
fn wheel_check_accepts_shuffle_image() {
    let o = kha(&["wheel-check", &data("quiver_jordan.json"), "--word", "1:0,1:1,1:-1"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
}

#[test]
fn act_lowers_and_raises() {
    let o = kha(&["act", &data("quiver_a1.json"), "--w", "1", "--label", "{1}", "--op", "f:1:0"]);
    assert_eq!(stdout(&o), "I[{}]: 1\n");
    let o = kha(&["act", &data("quiver_a1.json"), "--w", "1", "--label", "{}", "--op", "e:1:0"]);
    assert_eq!(stdout(&o), "I[{1}]: 1\n");
    // Rightmost operator acts first.
    let o = kha(&["act", &data("quiver_a1.json"), "--w", "1", "--label", "{}", "--op", "f:1:0,e:1:0"]);
    assert_eq!(stdout(&o), "I[{}]: 1\n");
}

#[test]
fn act_h_series() {
    let o = kha(&["act", &data("quiver_a1.json"), "--w", "1", "--label", "{}", "--op", "h+:1", "--order", "1"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert_eq!(out.lines().count(), 2);
    assert!(out.starts_with("h+[1,0]: qh^1\n"), "{out}");
}

#[test]
fn pair_a1_unit_entry() {
    let o = kha(&["pair", &data("quiver_a1.json"), "--w", "1", "--v", "1"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("I[{1}]: 1\n"));
}

#[test]
fn rmatrix_limits() {
    let o = kha(&["rmatrix", &data("quiver_a1.json"), "--w", "2", "--block", "f", "--v", "1", "--limit", "inf"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(stdout(&o).contains("PASS limit LowerF u->inf at I[{2}]"));
    let o = kha(&["rmatrix", &data("quiver_a1.json"), "--w", "2", "--vmax", "2", "--w2", "1", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["ok"], true);
}

#[test]
fn unsupported_sectors_surface_verbatim() {
    let o = kha(&["verify-relations", &data("quiver_a2.json"), "--w", "1,1", "--vmax", "1,1", "--scope", "full"]);
    assert_eq!(o.status.code(), Some(2));
    assert_eq!(String::from_utf8(o.stderr).unwrap(), "error: unsupported: non-Grassmannian fixed points\n");
    let o = kha(&["verify-relations", &data("quiver_a2.json"), "--w", "1,1", "--vmax", "1,1"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("SKIP rel5 w=(1,1) v=(1,0): unsupported: non-Grassmannian fixed points"));
}

#[test]
fn verify_action_jordan() {
    let o = kha(&["verify-action", &data("quiver_jordan.json"), "--w", "1", "--vmax", "1", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["checks"].as_array().unwrap().len(), 8);
}

#[test]
fn bad_input_is_an_error() {
    let o = kha(&["shuffle-mul", &data("quiver_a1.json"), "--left", "7:0", "--right", "1:0"]);
    assert_eq!(o.status.code(), Some(2));
    let o = kha(&["shuffle-mul", "/nonexistent.json", "--left", "1:0", "--right", "1:0"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn output_is_deterministic() {
    let args = ["act", &data("quiver_a1.json"), "--w", "2", "--label", "{1,2}", "--op", "f:1:1"];
    let a = stdout(&kha(&args));
    let b = stdout(&Command::new(env!("CARGO_BIN_EXE_kha")).args(args).env("KHA_THREADS", "1").output().unwrap());
    assert_eq!(a, b);
    assert_eq!(a.lines().count(), 2);
}
