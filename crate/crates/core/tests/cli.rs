use std::fs;

use diskfactor::cli::run;

fn run_in(dir: &std::path::Path, args: &[&str]) -> i32 {
    let mut argv = vec!["diskfactor", "--grid", "512", "--out", dir.to_str().unwrap()];
    argv.extend_from_slice(args);
    run(argv)
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    assert_eq!(run_in(d, &["carleson", "--set", "points:1"]), 0);
    assert_eq!(run_in(d, &["carleson", "--set", "full"]), 0);
    assert_eq!(run_in(d, &["verify-fpr2", "--seed", "7", "--trials", "50"]), 0);
    assert_eq!(run_in(d, &["verify-mollifier", "--seed", "1", "--deltas", "1e-1,1e-2,1e-3"]), 0);
    // shipped negative controls
    assert_eq!(run_in(d, &["verify-mollifier", "--seed", "1", "--control"]), 1);
    assert_eq!(run_in(d, &["verify-prop1", "--control"]), 1);
    assert_eq!(run_in(d, &["membership", "-f", "z", "--set", "points:1"]), 1);
    // usage errors
    assert_eq!(run_in(d, &["carleson", "--set", "nowhere"]), 2);
    assert_eq!(run_in(d, &["factor", "-f", "sin"]), 2);
    assert_eq!(run_in(d, &["membership", "-f", "z", "--set", "full", "--inner", "{bad"]), 2);
    assert_eq!(run_in(d, &["tamrazov", "-f", "z"]), 2);
    assert_eq!(run_in(d, &["--tol", "nope=1", "carleson", "--set", "full"]), 2);
    assert_eq!(run_in(d, &["carleson", "--set", "full", "--frobnicate"]), 2);
}

#[test]
fn artifacts_embed_config() {
    let dir = tempfile::tempdir().unwrap();
    assert_eq!(run_in(dir.path(), &["--tol", "stability=1e-3", "carleson", "--set", "points:1,-1"]), 0);
    let doc: serde_json::Value = serde_json::from_str(&fs::read_to_string(dir.path().join("carleson.json")).unwrap()).unwrap();
    assert_eq!(doc["config"]["grid"], 512);
    assert_eq!(doc["config"]["tolerances"]["stability"], 1e-3);
    assert_eq!(doc["config"]["inputs"]["set"], "points:1,-1");
    assert_eq!(doc["pass"], true);

    assert_eq!(run_in(dir.path(), &["factor", "-f", "oneminusz"]), 0);
    let outer = fs::read_to_string(dir.path().join("outer.csv")).unwrap();
    let mut lines = outer.lines();
    assert!(lines.next().unwrap().starts_with("# config: {"));
    assert_eq!(lines.next().unwrap(), "k,theta,u,u_conjugate,clipped_flag");
}

#[test]
fn prop_commands_default_to_scenario_seed() {
    let (a, b) = (tempfile::tempdir().unwrap(), tempfile::tempdir().unwrap());
    assert_eq!(run_in(a.path(), &["verify-prop1"]), 0);
    assert_eq!(run_in(b.path(), &["--seed", "1", "verify-prop1"]), 0);
    for name in ["prop1.csv", "prop1.json"] {
        assert_eq!(fs::read(a.path().join(name)).unwrap(), fs::read(b.path().join(name)).unwrap());
    }
}
