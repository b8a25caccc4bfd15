use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn qgc(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qgc")).args(args).env_remove("QGC_MAX_ORDER").output().expect("binary runs")
}

fn json_of(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("json report")
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p.to_string_lossy().into_owned()
}

fn check<'a>(report: &'a Value, name: &str) -> &'a Value {
    report["checks"].as_array().unwrap().iter().find(|c| c["name"] == name).expect("check present")
}

#[test]
fn z3_all_checks_pass_with_zero_connection() {
    let out = qgc(&["report", "--group", "Z3", "--checks", "all"]);
    assert_eq!(out.status.code(), Some(0));
    let r = json_of(&out);
    let nabla = &check(&r, "solve-lc")["details"]["nabla"];
    assert!(nabla.as_array().unwrap().iter().flat_map(|row| row.as_array().unwrap()).all(|x| x == "0"));
    assert_eq!(r["summary"]["failed"], 0);
}

#[test]
fn non_braiding_raw_spec_names_the_cell() {
    let dir = tempfile::tempdir().unwrap();
    let spec = write(
        dir.path(),
        "bad.json",
        r#"{"labels": ["a", "b"], "sigma": [[1,0,0,0],[1,0,1,0],[0,1,0,0],[0,0,0,1]], "metric": [[1,0],[0,1]]}"#,
    );
    let out = qgc(&["validate", "--spec", &spec]);
    assert_eq!(out.status.code(), Some(1));
    let r = json_of(&out);
    let braid = check(&r, "braid");
    assert_eq!(braid["pass"], false);
    assert!(braid["residual"].as_str().unwrap().contains("row"));
}

#[test]
fn empty_check_list_succeeds() {
    let out = qgc(&["report", "--group", "S3", "--subset", "1,2,5", "--checks", ""]);
    assert_eq!(out.status.code(), Some(0));
    let r = json_of(&out);
    assert_eq!(r["checks"].as_array().unwrap().len(), 0);
    assert_eq!(r["input"]["group"], "S3");
}

#[test]
fn reports_are_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.json");
    let b = dir.path().join("b.json");
    for p in [&a, &b] {
        let out = qgc(&["report", "--group", "S3", "--subset", "1,2,5", "--out", p.to_str().unwrap()]);
        assert_eq!(out.status.code(), Some(0));
    }
    assert_eq!(std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
}

#[test]
fn markdown_has_one_section_per_check() {
    let out = qgc(&["solve-lc", "--group", "Z2xZ2", "--format", "markdown"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    for name in ["braid", "split", "metric", "p23", "solve-lc"] {
        assert!(text.contains(&format!("## {name}: PASS")), "{name}");
    }
    assert!(text.contains("> unique torsion-free connection"));
}

#[test]
fn singular_operator_reports_kernel() {
    let out = qgc(&["solve-lc", "--group", "D4", "--subset", "4,5,6,7"]);
    assert_eq!(out.status.code(), Some(1));
    let r = json_of(&out);
    let lc = check(&r, "solve-lc");
    assert_eq!(lc["details"]["unique"], false);
    assert_eq!(lc["details"]["phi_kernel"].as_array().unwrap().len(), 4);
    let p23 = check(&r, "p23");
    assert_eq!(p23["details"]["agrees_with_phi"], true);
}

#[test]
fn parse_errors_exit_two() {
    let dir = tempfile::tempdir().unwrap();
    let junk = write(dir.path(), "junk.json", "{not json");
    assert_eq!(qgc(&["validate", "--spec", &junk]).status.code(), Some(2));
    let bad_scalar = write(dir.path(), "s.json", r#"{"sigma": [["1/0"]]}"#);
    assert_eq!(qgc(&["validate", "--spec", &bad_scalar]).status.code(), Some(2));
    assert_eq!(qgc(&["report", "--group", "A5"]).status.code(), Some(2));
    assert_eq!(qgc(&["report", "--group", "Z3", "--checks", "braid,nonsense"]).status.code(), Some(2));
    let flip = write(dir.path(), "flip.json", r#"{"sigma": [[1]], "metric": [[1]]}"#);
    assert_eq!(qgc(&["report", "--spec", &flip, "--checks", "hom-dims"]).status.code(), Some(2));
}

#[test]
fn validation_errors_exit_one() {
    assert_eq!(qgc(&["report", "--group", "S3", "--subset", "1,2"]).status.code(), Some(1));
    let out = Command::new(env!("CARGO_BIN_EXE_qgc"))
        .args(["report", "--group", "D4"])
        .env("QGC_MAX_ORDER", "6")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn raw_flip_solves_to_zero() {
    let dir = tempfile::tempdir().unwrap();
    let spec = write(
        dir.path(),
        "flip.json",
        r#"{"labels": ["x", "y"], "sigma": [[1,0,0,0],[0,0,1,0],[0,1,0,0],[0,0,0,1]], "metric": [["3/2","1/3"],["1/3","3/2"]], "mc": [[0,0],[0,0],[0,0],[0,0]]}"#,
    );
    let out = qgc(&["report", "--spec", &spec]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let r = json_of(&out);
    assert_eq!(check(&r, "solve-lc")["details"]["compat_residual"], "0");
    assert_eq!(check(&r, "split")["details"]["d1"], 3);
}

#[test]
fn klein_bicharacter_twist_passes() {
    let dir = tempfile::tempdir().unwrap();
    let co = write(
        dir.path(),
        "co.json",
        r#"{"basis": "character", "table": [[1,1,1,1],[1,1,1,1],[1,-1,1,-1],[1,-1,1,-1]]}"#,
    );
    let spec = write(dir.path(), "g.json", r#"{"group": "Z2xZ2", "subset": [1,2,3], "metric": [[1,0,0],[0,1,0],[0,0,1]]}"#);
    let out = qgc(&["twist", "--mode", "group", "--spec", &spec, "--cocycle", &co]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let r = json_of(&out);
    let t = check(&r, "twist");
    assert_eq!(t["details"]["sigma_unchanged"], true);
    assert_eq!(t["details"]["connection"]["leibniz_all"], true);
    assert_eq!(t["details"]["restored_by_inverse"], true);
}

#[test]
fn subgroup_twist_of_d4_changes_actions() {
    let dir = tempfile::tempdir().unwrap();
    let co = write(
        dir.path(),
        "co.json",
        r#"{"table": "klein-bicharacter", "subgroup": {"group": "Z2xZ2", "embedding": [0, 2, 4, 6]}}"#,
    );
    let out = qgc(&["twist", "--group", "D4", "--subset", "1,3", "--cocycle", &co]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let t = check(&json_of(&out), "twist").clone();
    assert_eq!(t["details"]["module_changed"], true);
    assert_eq!(t["details"]["xi_mutually_inverse"], true);
}

#[test]
fn non_cocycle_rejected() {
    let dir = tempfile::tempdir().unwrap();
    let co = write(dir.path(), "co.json", r#"{"table": [[1,1,1,1],[1,2,1,1],[1,1,1,1],[1,1,1,1]]}"#);
    assert_eq!(qgc(&["twist", "--group", "Z2xZ2", "--cocycle", &co]).status.code(), Some(1));
    assert_eq!(qgc(&["twist", "--group", "Z2xZ2"]).status.code(), Some(1));
}
