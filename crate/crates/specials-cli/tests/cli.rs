use std::process::{Command, Output};

use serde_json::Value;

fn specials(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_specials")).args(args).output().expect("binary runs")
}

fn stdout_json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

#[test]
fn hj_prints_alphas_and_iseries() {
    let out = specials(&["hj", "23/18"]);
    assert_eq!(out.status.code(), Some(0));
    let v = stdout_json(&out);
    assert_eq!(v["alphas"], serde_json::json!([2, 2, 2, 3, 3]));
    assert_eq!(v["iseries"][4], 3);
}

#[test]
fn bad_input_exits_one() {
    for args in [&["hj", "6/4"][..], &["classify", "D:5,5"], &["classify", "Q:1"], &["nonsense"], &["hj"]] {
        assert_eq!(specials(args).status.code(), Some(1), "{args:?}");
    }
}

#[test]
fn help_exits_zero() {
    assert_eq!(specials(&["--help"]).status.code(), Some(0));
    assert_eq!(specials(&["--version"]).status.code(), Some(0));
}

#[test]
fn fundcycle_of_binary_tetrahedral_twist() {
    let out = specials(&["fundcycle", "T:1"]);
    assert_eq!(out.status.code(), Some(0));
    let v = stdout_json(&out);
    let mut zf: Vec<u64> = v["zf"].as_array().unwrap().iter().map(|c| c.as_u64().unwrap()).collect();
    zf.sort();
    assert_eq!(zf, vec![1, 1, 2, 2, 2, 3]);
}

#[test]
fn classify_json_passes() {
    let out = specials(&["classify", "D:5,2", "--json"]);
    assert_eq!(out.status.code(), Some(0));
    let v = stdout_json(&out);
    assert_eq!(v["pass"], true);
    assert_eq!(v["specials_by_counting"].as_array().unwrap().len(), 5);
}

#[test]
fn syzygy_by_name_and_dual() {
    let out = specials(&["syzygy", "D:14,9", "V3"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout_json(&out)["cover_rank"].as_u64().unwrap() > 0);
    let out = specials(&["syzygy", "D:5,2", "W+*"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
}

#[test]
fn quiver_formats() {
    let json = stdout_json(&specials(&["quiver", "D:5,2"]));
    assert_eq!(json["vertices"].as_array().unwrap().len(), 15);
    let dot = specials(&["quiver", "D:5,2", "--format", "dot"]);
    assert!(String::from_utf8_lossy(&dot.stdout).starts_with("digraph"));
    let ascii = specials(&["quiver", "T:1", "--format", "ascii"]);
    assert_eq!(ascii.status.code(), Some(0));
}

#[test]
fn ext1_json_has_every_vertex() {
    let v = stdout_json(&specials(&["ext1", "D:5,2", "--json"]));
    assert_eq!(v.as_object().unwrap().len(), 15);
}

#[test]
fn freeexp_runs() {
    let out = specials(&["freeexp", "T:7", "--steps", "5"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout_json(&out)["steps"].as_array().unwrap().len(), 6);
}

#[test]
fn batch_writes_jsonl() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("d.jsonl");
    let out = specials(&["batch", "--family", "D", "--max-n", "8", "--out", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let text = std::fs::read_to_string(&path).unwrap();
    assert!(text.lines().count() > 5);
    for line in text.lines() {
        let v: Value = serde_json::from_str(line).unwrap();
        assert_eq!(v["pass"], true);
    }
}

#[test]
fn verify_fixtures_reports_corruption() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(
        dir.path().join("bad.json"),
        r#"{"id":"bad_zf","kind":"zf","group":"T:1","locus":"","payload":{"zf":[1,1,1,1,1,1]}}"#,
    )
    .unwrap();
    let out = specials(&["verify-fixtures", "--dir", dir.path().to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2), "{}", String::from_utf8_lossy(&out.stdout));
    assert!(String::from_utf8_lossy(&out.stdout).contains("FAIL  bad_zf"));
    assert_eq!(specials(&["verify-fixtures"]).status.code(), Some(0));
}
