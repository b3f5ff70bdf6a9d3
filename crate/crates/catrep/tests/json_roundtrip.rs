use std::process::Command;

use catrep::json::{category_to_doc, load_category, load_rep, rep_to_doc};
use catrep_core::based_cat::{build_cartan_category, build_dihedral_soergel, build_group_category};
use catrep_core::group::MultTable;
use catrep_core::matrix::IntMatrix;

fn catrep(args: &[&str]) -> Vec<u8> {
    let out = Command::new(env!("CARGO_BIN_EXE_catrep"))
        .args(args)
        .output()
        .unwrap();
    assert!(out.status.success(), "{args:?}");
    out.stdout
}

#[test]
fn builder_output_reloads_identically() {
    let dir = tempfile::tempdir().unwrap();
    let builds: [(&str, Vec<&str>); 4] = [
        ("d4.json", vec!["build-dihedral", "--n", "4"]),
        ("d3.json", vec!["build-dihedral", "--n", "3"]),
        ("s3.json", vec!["build-group", "--group", "S3"]),
        ("ca.json", vec!["build-cartan", "--cartan", "[[2,1],[1,2]]"]),
    ];
    let expected = [
        build_dihedral_soergel(4).unwrap(),
        build_dihedral_soergel(3).unwrap(),
        build_group_category(&MultTable::named("S3").unwrap()).unwrap(),
        build_cartan_category(&IntMatrix::from_rows(&[[2, 1], [1, 2]]).unwrap(), None).unwrap(),
    ];
    for ((file, args), want) in builds.iter().zip(&expected) {
        let path = dir.path().join(file);
        let mut all = args.clone();
        all.extend(["--output", path.to_str().unwrap()]);
        catrep(&all);
        let cat = load_category(&path).unwrap();
        assert!(cat.same_structure(want), "{file}");
        assert_eq!(cat.metadata(), want.metadata(), "{file}");
        assert_eq!(category_to_doc(&cat), category_to_doc(want), "{file}");
    }
}

#[test]
fn output_is_deterministic() {
    let a = catrep(&["build-dihedral", "--n", "4", "--output", "-"]);
    let b = catrep(&["build-dihedral", "--n", "4", "--output", "-"]);
    assert_eq!(a, b);
    let a = catrep(&["b2-demo", "--format", "json"]);
    let b = catrep(&["b2-demo", "--format", "json"]);
    assert_eq!(a, b);
}

#[test]
fn reps_round_trip_with_inline_categories() {
    let dir = tempfile::tempdir().unwrap();
    let cat = dir.path().join("d4.json");
    catrep(&[
        "build-dihedral",
        "--n",
        "4",
        "--output",
        cat.to_str().unwrap(),
    ]);
    let rep = dir.path().join("p.json");
    catrep(&[
        "principal-rep",
        "--input",
        cat.to_str().unwrap(),
        "--object",
        "♣",
        "--output",
        rep.to_str().unwrap(),
    ]);
    let loaded = load_rep(&rep).unwrap();
    let again = dir.path().join("again.json");
    std::fs::write(
        &again,
        serde_json::to_string_pretty(&rep_to_doc(&loaded)).unwrap(),
    )
    .unwrap();
    let reloaded = load_rep(&again).unwrap();
    assert_eq!(reloaded.ind_lists(), loaded.ind_lists());
    assert_eq!(reloaded.matrices(), loaded.matrices());
}
