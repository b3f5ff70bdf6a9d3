use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn catrep(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_catrep"))
        .args(args)
        .output()
        .unwrap()
}

fn json_of(args: &[&str]) -> Value {
    let mut all = args.to_vec();
    all.extend(["--format", "json"]);
    let out = catrep(&all);
    assert!(
        out.status.success(),
        "{args:?}: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_slice(&out.stdout).unwrap()
}

fn path(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn help_and_version_exit_zero() {
    assert_eq!(catrep(&["--help"]).status.code(), Some(0));
    assert_eq!(catrep(&["--version"]).status.code(), Some(0));
    assert_eq!(catrep(&["cells", "--help"]).status.code(), Some(0));
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(catrep(&[]).status.code(), Some(2));
    assert_eq!(catrep(&["no-such-command"]).status.code(), Some(2));
    assert_eq!(catrep(&["build-dihedral"]).status.code(), Some(2));
    assert_eq!(
        catrep(&["build-group", "--group", "Q99"]).status.code(),
        Some(2)
    );
}

#[test]
fn b2_cells_from_a_built_file() {
    let dir = tempfile::tempdir().unwrap();
    let b2 = dir.path().join("b2.json");
    let out = catrep(&["build-dihedral", "--n", "4", "--output", path(&b2)]);
    assert!(out.status.success());
    let cells = json_of(&["cells", "--input", path(&b2), "--side", "two-sided"]);
    assert_eq!(
        cells["cells"],
        serde_json::json!([["e"], ["s", "t", "st", "ts", "sts", "tst"], ["stst"]])
    );
    let left = json_of(&["cells", "--input", path(&b2), "--side", "left"]);
    assert_eq!(left["cells"].as_array().unwrap().len(), 4);

    let sr = json_of(&[
        "strong-regularity",
        "--input",
        path(&b2),
        "--cell",
        "s,t,st,ts,sts,tst",
    ]);
    assert_eq!(sr["strongly_regular"], false);
    assert_eq!(sr["witness"]["size"], 2);

    let valid = json_of(&["validate", "--input", path(&b2)]);
    assert_eq!(valid["valid"], true);

    let c = json_of(&[
        "compose",
        "--input",
        path(&b2),
        "--left",
        "s",
        "--right",
        "s",
    ]);
    assert_eq!(c["result"], serde_json::json!({ "s": 2 }));
}

#[test]
fn a_cell_that_is_not_two_sided_is_refused() {
    let dir = tempfile::tempdir().unwrap();
    let b2 = dir.path().join("b2.json");
    assert!(
        catrep(&["build-dihedral", "--n", "4", "--output", path(&b2)])
            .status
            .success()
    );
    let out = catrep(&["strong-regularity", "--input", path(&b2), "--cell", "s,sts"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("two-sided cell"));
}

#[test]
fn classify_qi_and_b2_demo() {
    let qi = json_of(&["classify-qi", "--m", "3"]);
    assert_eq!(qi["solutions"].as_array().unwrap().len(), 4);
    let b2 = json_of(&["b2-demo"]);
    assert_eq!(b2["certificate"]["x_listed"].as_array().unwrap().len(), 9);
    assert_eq!(b2["certificate"]["pairs"].as_array().unwrap().len(), 2);
    assert_eq!(b2["certificate"]["stages"].as_array().unwrap().len(), 7);
}

#[test]
fn malformed_json_reports_line_and_column() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, "{\n  \"objects\": [\"a\",]\n}\n").unwrap();
    let out = catrep(&["validate", "--input", path(&bad)]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("line 2"), "{err}");
    assert!(err.contains("column"), "{err}");

    let missing = catrep(&["validate", "--input", path(&dir.path().join("none.json"))]);
    assert_eq!(missing.status.code(), Some(2));
}

#[test]
fn invalid_category_fails_validation_with_a_report() {
    let dir = tempfile::tempdir().unwrap();
    let cat = dir.path().join("cat.json");
    // (F∘F)∘G = F but F∘(F∘G) = G
    std::fs::write(
        &cat,
        r#"{
  "objects": ["a"],
  "one_morphisms": [
    {"name": "1", "dom": "a", "cod": "a", "identity": true},
    {"name": "F", "dom": "a", "cod": "a"},
    {"name": "G", "dom": "a", "cod": "a"}
  ],
  "composition": {
    "F|F": {"G": 1},
    "F|G": {"F": 1},
    "G|F": {"G": 1},
    "G|G": {"F": 1}
  }
}"#,
    )
    .unwrap();
    let report = dir.path().join("report.json");
    let out = catrep(&["validate", "--input", path(&cat), "--output", path(&report)]);
    assert_eq!(out.status.code(), Some(1));
    let doc: Value = serde_json::from_str(&std::fs::read_to_string(&report).unwrap()).unwrap();
    assert_eq!(doc["valid"], false);
    assert!(!doc["violations"].as_array().unwrap().is_empty());
}

#[test]
fn reps_through_files() {
    let dir = tempfile::tempdir().unwrap();
    let b2 = dir.path().join("b2.json");
    assert!(
        catrep(&["build-dihedral", "--n", "4", "--output", path(&b2)])
            .status
            .success()
    );
    let p = dir.path().join("p.json");
    assert!(catrep(&[
        "principal-rep",
        "--input",
        path(&b2),
        "--object",
        "♣",
        "--output",
        path(&p)
    ])
    .status
    .success());
    assert_eq!(
        json_of(&["validate-rep", "--input", path(&p)])["valid"],
        true
    );
    let jh = json_of(&["jh", "--input", path(&p)]);
    assert_eq!(jh["subquotients"].as_array().unwrap().len(), 4);
    assert_eq!(jh["filtration_count"], 2);
    let w = json_of(&["weak-jh-verify", "--input", path(&p), "--seed", "3"]);
    assert_eq!(w["verdict"], true);
    let out = catrep(&["jh", "--input", path(&p), "--filtration", "9"]);
    assert_eq!(out.status.code(), Some(2));

    let cr = dir.path().join("cr.json");
    assert!(catrep(&[
        "cell-rep",
        "--input",
        path(&b2),
        "--cell",
        "s,st,sts",
        "--output",
        path(&cr)
    ])
    .status
    .success());
    assert_eq!(
        json_of(&["validate-rep", "--input", path(&cr)])["valid"],
        true
    );
}

#[test]
fn broken_rep_fails_validation() {
    let dir = tempfile::tempdir().unwrap();
    let qi = dir.path().join("qi.json");
    std::fs::write(
        &qi,
        r#"{"objects": ["a"], "one_morphisms": [{"name": "1", "dom": "a", "cod": "a", "identity": true}, {"name": "F", "dom": "a", "cod": "a"}], "composition": {"F|F": {"F": 2}}}"#,
    )
    .unwrap();
    let rep = dir.path().join("rep.json");
    std::fs::write(
        &rep,
        r#"{"category": "qi.json", "ind_objects": {"a": ["x"]}, "matrices": {"F": [[3]]}}"#,
    )
    .unwrap();
    let out = catrep(&["validate-rep", "--input", path(&rep), "--format", "json"]);
    assert_eq!(out.status.code(), Some(1));
    let doc: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(doc["valid"], false);
    std::fs::write(
        &rep,
        r#"{"category": "qi.json", "ind_objects": {"a": ["x"]}, "matrices": {"F": [[2]]}}"#,
    )
    .unwrap();
    assert_eq!(
        catrep(&["validate-rep", "--input", path(&rep)])
            .status
            .code(),
        Some(0)
    );
}

#[test]
fn builders_and_algebra_commands() {
    let g = json_of(&["build-group", "--group", "S3"]);
    assert_eq!(g["one_morphisms"].as_array().unwrap().len(), 6);
    let c = json_of(&[
        "build-cartan",
        "--cartan",
        "[[1,1],[1,1]]",
        "--sigma",
        "2,1",
    ]);
    assert_eq!(c["objects"].as_array().unwrap().len(), 1);
    assert_eq!(c["one_morphisms"].as_array().unwrap().len(), 5);
    assert_eq!(
        catrep(&[
            "build-cartan",
            "--cartan",
            "[[1,1],[0,1]]",
            "--sigma",
            "1,2"
        ])
        .status
        .code(),
        Some(1)
    );
    assert_eq!(
        catrep(&[
            "build-cartan",
            "--cartan",
            "[[1,1],[1,1]]",
            "--sigma",
            "3,1"
        ])
        .status
        .code(),
        Some(2)
    );

    let pf = json_of(&["pf", "--matrix", "[[1,2],[1,2]]", "--m", "3"]);
    assert_eq!(pf["column_sum_bounds"], serde_json::json!([2, 4]));
    assert_eq!(pf["quasi_idempotent"]["holds"], true);
    let groups = json_of(&["classify-group", "--group", "D4"]);
    assert_eq!(groups["representations"].as_array().unwrap().len(), 8);

    let dir = tempfile::tempdir().unwrap();
    let table = dir.path().join("c2.json");
    std::fs::write(
        &table,
        r#"{"elements": ["e", "g"], "table": [["e", "g"], ["g", "e"]]}"#,
    )
    .unwrap();
    let t = json_of(&["build-group", "--table", path(&table)]);
    assert_eq!(t["one_morphisms"].as_array().unwrap().len(), 2);
}

#[test]
fn human_output_and_stdout_json() {
    let out = catrep(&["pf", "--matrix", "[[2]]", "--m", "2"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("rank: 1"), "{text}");
    let out = catrep(&["pf", "--matrix", "[[2]]", "--m", "2", "--output", "-"]);
    let doc: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(doc["rank"], 1);
}
