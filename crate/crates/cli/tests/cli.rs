use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn flagproj(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_flagproj")).args(args).output().expect("binary runs")
}

fn json_file(path: &Path) -> Value {
    serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap()
}

#[test]
fn gen_polytope_shapes_and_determinism() {
    let dir = tempfile::tempdir().unwrap();
    let cube = dir.path().join("cube.json");
    assert!(flagproj(&["gen-polytope", "cube", "--dim", "3", "--out", cube.to_str().unwrap()]).status.success());
    assert_eq!(json_file(&cube)["vertices"].as_array().unwrap().len(), 8);

    let out = flagproj(&["gen-polytope", "simplex", "--dim", "4"]);
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["vertices"].as_array().unwrap().len(), 5);

    let a = flagproj(&["gen-polytope", "random", "--dim", "3", "--seed", "7"]);
    let b = flagproj(&["gen-polytope", "random", "--dim", "3", "--seed", "7"]);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let c = flagproj(&["gen-polytope", "random", "--dim", "3", "--seed", "8"]);
    assert_ne!(a.stdout, c.stdout);
}

#[test]
fn usage_errors_exit_with_two() {
    assert_eq!(flagproj(&["gen-polytope", "cube", "--dim", "7"]).status.code(), Some(2));
    assert_eq!(flagproj(&["verify", "nonsense"]).status.code(), Some(2));
    assert_eq!(flagproj(&["project", "/no/such/file.json", "--k", "1"]).status.code(), Some(2));
    assert_eq!(flagproj(&["frobnicate"]).status.code(), Some(2));
}

#[test]
fn project_cube_diagonal_plane() {
    let dir = tempfile::tempdir().unwrap();
    let cube = dir.path().join("cube.json");
    flagproj(&["gen-polytope", "cube", "--dim", "3", "--out", cube.to_str().unwrap()]);
    // The plane with normal (1,1,1).
    let basis = "1,-1,0;1,1,-2";
    let args = ["project", cube.to_str().unwrap(), "--basis", basis, "--samples", "2000"];
    let out = flagproj(&args);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    for route in ["direct", "exact", "prop31", "th1", "th2"] {
        let x = v["estimates"][route]["value"].as_f64().unwrap();
        assert!((x - 3f64.sqrt()).abs() < 1e-9, "{route}: {x}");
    }
    assert_eq!(flagproj(&args).stdout, out.stdout);
}

#[test]
fn project_axis_line_skips_estimators() {
    let dir = tempfile::tempdir().unwrap();
    let cube = dir.path().join("cube.json");
    flagproj(&["gen-polytope", "cube", "--dim", "3", "--out", cube.to_str().unwrap()]);
    let out = flagproj(&["project", cube.to_str().unwrap(), "--basis", "1,0,0"]);
    assert!(out.status.success());
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert!((v["estimates"]["direct"]["value"].as_f64().unwrap() - 1.0).abs() < 1e-12);
    assert!(v["estimates"].get("th2").is_none());
    assert!(v["skipped"].as_str().unwrap().contains("general relative position"));
}

#[test]
fn project_random_subspace_agrees() {
    let dir = tempfile::tempdir().unwrap();
    let cube = dir.path().join("cube.json");
    flagproj(&["gen-polytope", "cube", "--dim", "3", "--out", cube.to_str().unwrap()]);
    let out = flagproj(&["project", cube.to_str().unwrap(), "--k", "1", "--seed", "3", "--samples", "20000"]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    for (pair, z) in v["z_scores"].as_object().unwrap() {
        assert!(z.as_f64().unwrap() < 4.0, "{pair}: {z}");
    }
}

#[test]
fn verify_and_merge_reports() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.json");
    let b = dir.path().join("b.json");
    let merged = dir.path().join("m.json");
    let out = flagproj(&["verify", "combinatorics", "--samples", "20000", "--out", a.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let out = flagproj(&["verify", "combinatorics", "--samples", "20000", "--out", b.to_str().unwrap(), "--workers", "2"]);
    assert_eq!(out.status.code(), Some(0));

    let (ra, rb) = (json_file(&a), json_file(&b));
    assert_eq!(ra["schema"], "flagproj-report/1");
    assert_eq!(ra["records"].as_array().unwrap().len(), 4);
    // The worker count does not change results.
    assert_eq!(ra["records"][0]["observed"], rb["records"][0]["observed"]);

    let out = flagproj(&["report-merge", a.to_str().unwrap(), b.to_str().unwrap(), "--out", merged.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json_file(&merged)["suite"], "combinatorics+combinatorics");

    // A failing record makes the merge exit with 1.
    let mut bad = ra.clone();
    bad["records"][0]["status"] = "fail".into();
    let bad_path = dir.path().join("bad.json");
    std::fs::write(&bad_path, bad.to_string()).unwrap();
    assert_eq!(flagproj(&["report-merge", a.to_str().unwrap(), bad_path.to_str().unwrap()]).status.code(), Some(1));
}
