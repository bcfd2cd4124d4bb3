use std::path::PathBuf;
use std::process::Command;

use serde_json::Value;

fn frieze(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_frieze"))
        .args(args)
        .env_remove("FRIEZE_THREADS")
        .output()
        .expect("binary runs");
    (
        out.status.code().unwrap_or(-1),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

fn json(s: &str) -> Value {
    serde_json::from_str(s).unwrap_or_else(|e| panic!("invalid JSON ({e}): {s}"))
}

fn temp(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("frieze-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

#[test]
fn build_then_validate_round_trip() {
    let path = temp("heptagon.json");
    let (code, _, err) = frieze(&["build", "--first-row", "1,3,2,2,1,4,2", "--out", path.to_str().unwrap()]);
    assert_eq!(code, 0, "{err}");
    let v = json(&std::fs::read_to_string(&path).unwrap());
    assert_eq!(v["n"], 7);
    assert_eq!(v["width"], 4);
    assert_eq!(v["first_row"][1], serde_json::json!({"num": "3", "den": "1"}));
    assert_eq!(v["entries"].as_array().unwrap().len(), 8);
    let (code, out, _) = frieze(&["validate", "--input", path.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert_eq!(json(&out)["passed"], true);
}

#[test]
fn corrupted_file_fails_validation() {
    let path = temp("corrupt.json");
    let (_, out, _) = frieze(&["build", "--first-row", "2,2,4,2,3,18/41,41,30/41"]);
    let mut v = json(&out);
    v["entries"][4][2] = serde_json::json!("7/3");
    std::fs::write(&path, v.to_string()).unwrap();
    let (code, out, _) = frieze(&["validate", "--input", path.to_str().unwrap()]);
    assert_eq!(code, 3);
    let report = json(&out);
    assert_eq!(report["passed"], false);
    assert_eq!(report["failure"]["kind"], "diamond");
}

#[test]
fn exit_codes() {
    let (code, _, err) = frieze(&["build", "--first-row", "1,1,1,1,1"]);
    assert_eq!(code, 3);
    assert!(err.contains("does not close"), "{err}");
    assert_eq!(frieze(&["frobnicate"]).0, 2);
    assert_eq!(frieze(&["build", "--first-row", "1,x,2"]).0, 2);
    assert_eq!(frieze(&["build", "--bogus-flag"]).0, 2);
    assert_eq!(frieze(&["scan", "cc", "--width", "9"]).0, 2);
    assert_eq!(frieze(&["--help"]).0, 0);
}

#[test]
fn cuntz_and_pretty_layout() {
    let (code, out, _) = frieze(&["cuntz"]);
    assert_eq!(code, 0);
    let v = json(&out);
    assert_eq!(v["certificates_verified"], true);
    assert_eq!(v["report"]["violations"][0]["k"], 3);
    assert_eq!(v["report"]["violations"][0]["count"], 0);
    let (code, out, _) = frieze(&["build", "--first-row", "1,3,2,2,1,4,2", "--pretty"]);
    assert_eq!(code, 0);
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines.len(), 6);
    let second: Vec<&str> = lines[1].split_whitespace().collect();
    assert_eq!(second, ["3", "2", "2", "1", "4", "2", "1"]);
}

#[test]
fn csv_outputs() {
    let (code, out, _) = frieze(&["diff", "--a", "1,3,2,2,1,4,2", "--b", "2,1,3,2,2,1,4", "--format", "csv"]);
    assert_eq!(code, 0);
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines[0], "i,value");
    assert_eq!(lines.len(), 8);
    for l in &lines[1..] {
        let (i, v) = l.split_once(',').unwrap();
        i.parse::<usize>().unwrap();
        frieze_core::scalar::parse_rational(v).unwrap();
    }
    let (_, out, _) = frieze(&["enumerate", "--n", "6", "--format", "csv"]);
    assert_eq!(out.lines().count(), 15);
}

#[test]
fn triangulation_file_input() {
    let path = temp("tri.json");
    std::fs::write(&path, r#"{"n": 7, "diagonals": [[1,6],[3,5],[1,5],[2,5]]}"#).unwrap();
    let (code, out, err) = frieze(&["from-triangulation", "--input", path.to_str().unwrap()]);
    assert_eq!(code, 0, "{err}");
    let v = json(&out);
    let first: Vec<String> = v["first_row"].as_array().unwrap().iter().map(|x| x["num"].as_str().unwrap().to_string()).collect();
    assert_eq!(first, ["1", "3", "2", "2", "1", "4", "2"]);
    std::fs::write(&path, r#"{"n": 6, "diagonals": [[0,3],[1,4],[0,2]]}"#).unwrap();
    assert_eq!(frieze(&["from-triangulation", "--input", path.to_str().unwrap()]).0, 3);
}

#[test]
fn theorem_check_and_deform() {
    let (code, out, _) = frieze(&["theorem-check", "--a", "1,3,2,2,1,4,2", "--b", "2,1,3,2,2,1,4"]);
    assert_eq!(code, 0);
    let v = json(&out);
    let checks = v["checks"].as_array().unwrap();
    assert_eq!(checks.len(), 2);
    for c in checks {
        assert!(c["count"].as_u64().unwrap() >= 4);
        assert_eq!(c["verdict"], "satisfies_four");
    }
    let (code, out, _) = frieze(&["deform", "--k", "2", "--q", "1,0,0,0,0"]);
    assert_eq!(code, 0);
    let v = json(&out);
    assert_eq!(v["count"], 4);
    assert_eq!(v["residuals"].as_array().unwrap().len(), 3);
    assert_eq!(frieze(&["deform", "--k", "2", "--q", "seed:4"]).0, 2);
    assert_eq!(frieze(&["deform", "--n", "9", "--k", "8", "--q", "seed:4"]).0, 3);
}

#[test]
fn scans_exit_codes_and_threads() {
    let (code, out, _) = frieze(&["scan", "cc", "--width", "3", "--k", "1", "--threads", "2"]);
    assert_eq!(code, 0);
    assert_eq!(json(&out)["pairs_checked"], 91);
    // Width 6, row 3 has certified pairs whose difference changes sign twice.
    let (code, out, _) = frieze(&["scan", "cc", "--width", "6", "--k", "3"]);
    assert_eq!(code, 4);
    assert!(!json(&out)["violations"].as_array().unwrap().is_empty());
    let (code, out, _) = frieze(&["scan", "cc", "--width", "4", "--k", "1", "--cap", "10"]);
    assert_eq!(code, 3);
    assert_eq!(json(&out)["truncated"], true);
    let a = frieze(&["scan", "random", "--n", "9", "--samples", "200", "--seed", "5"]).1;
    let b = frieze(&["scan", "random", "--n", "9", "--samples", "200", "--seed", "5", "--threads", "3"]).1;
    assert_eq!(a, b);
}

#[test]
fn polygon_verbs() {
    let (code, out, _) = frieze(&["polygon", "random", "--n", "7", "--seed", "2"]);
    assert_eq!(code, 0);
    let v = json(&out);
    let path = temp("poly.json");
    std::fs::write(&path, v["polygon"].to_string()).unwrap();
    let (code, out, _) = frieze(&["polygon", "to-frieze", "--input", path.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert_eq!(json(&out)["entries"], v["frieze"]["entries"]);
    let (code, out, _) = frieze(&["polygon", "project", "--first-row", "1,3,2,2,1,4,2"]);
    assert_eq!(code, 0);
    assert_eq!(json(&out)["angles"].as_array().unwrap().len(), 7);
    let (code, out, _) = frieze(&["polygon", "equilateral", "--n", "6", "--seed", "1"]);
    assert_eq!(code, 0);
    assert_eq!(json(&out)["vertices"].as_array().unwrap().len(), 6);
    let (code, out, _) = frieze(&["polygon", "experiment", "--n", "6,7", "--k", "1,2", "--pairs", "5", "--format", "csv"]);
    assert_eq!(code, 0);
    assert_eq!(out.lines().count(), 1 + 2 * 2 * 5);
}

#[test]
fn library_entry_point_matches_binary() {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let code = frieze_core::cli::run(["frieze", "build", "--first-row", "1,2,2,1,3"], &mut out, &mut err);
    assert_eq!(code, 0);
    assert_eq!(String::from_utf8(out).unwrap(), frieze(&["build", "--first-row", "1,2,2,1,3"]).1);
}
