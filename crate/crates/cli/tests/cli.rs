use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_vexgeom")).args(args).output().expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("json output")
}

#[test]
fn perm_info_reports_shapes() {
    let out = run(&["perm", "info", "4 1 3 2 5"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["vexillary"], true);
    assert_eq!(v["lambda"], serde_json::json!([3, 1]));
    assert_eq!(v["mu"], serde_json::json!([3, 2, 2]));
    assert_eq!(v["grassmannian_lift"]["perm"], serde_json::json!([1, 3, 6, 2, 4, 5]));
    assert_eq!(v["diagram"], serde_json::json!([[1, 1], [1, 2], [1, 3], [3, 2]]));
}

#[test]
fn refutation_exits_one_with_witness() {
    let out = run(&["groebner", "verify", "2 1 4 3"]);
    assert_eq!(out.status.code(), Some(1));
    let v = json(&out);
    assert_eq!(v["diagonal_gb"], false);
    assert!(!v["witness_spair"]["remainder"]["terms"].as_array().unwrap().is_empty());
    assert_eq!(v["poison_certificate"]["codim"], 1);
}

#[test]
fn schubert_latex_display() {
    let out = run(&["poly", "schubert", "1 4 3 2", "--method", "tableau", "--format", "latex"]);
    assert_eq!(out.status.code(), Some(0));
    let s = String::from_utf8(out.stdout).unwrap();
    assert!(s.starts_with("(x_{2}-y_{2})(x_{2}-y_{3})(x_{3}-y_{2}) + (x_{1}-y_{1})(x_{2}-y_{3})(x_{3}-y_{2})"));
    assert_eq!(s.matches(" + ").count(), 4);
}

#[test]
fn verify_all_small() {
    let v = json(&run(&["verify-all", "3"]));
    assert_eq!((v["vexillary"].as_u64(), v["refuted"].as_u64(), v["skipped"].as_u64()), (Some(6), Some(0), Some(0)));
    let v = json(&run(&["verify-all", "4"]));
    assert_eq!((v["vexillary"].as_u64(), v["non_vexillary"].as_u64()), (Some(23), Some(1)));
    assert_eq!(run(&["verify-all", "1"]).status.code(), Some(0));
}

#[test]
fn usage_and_budget_exit_codes() {
    assert_eq!(run(&["perm", "info", "1 2 2"]).status.code(), Some(2));
    assert_eq!(run(&["perm", "frobnicate"]).status.code(), Some(2));
    assert_eq!(run(&["poly", "schubert", "2 1 4 3", "--method", "tableau"]).status.code(), Some(2));
    assert_eq!(run(&["groebner", "verify", "1 4 3 2", "--max-pairs", "0"]).status.code(), Some(3));
}

#[test]
fn output_is_deterministic_and_written_to_file() {
    let a = run(&["pipedreams", "4 1 3 2 5", "--interior"]);
    let b = run(&["pipedreams", "4 1 3 2 5", "--interior"]);
    assert_eq!(a.stdout, b.stdout);
    let path = std::env::temp_dir().join(format!("vexgeom-cli-{}.json", std::process::id()));
    let out = run(&["gvd", "trace", "1 4 3 2", "--out", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    std::fs::remove_file(&path).ok();
    assert!(v["steps"].as_array().unwrap().iter().all(|s| s["is_gvd"] == true && s["hilbert_equal"] == true));
    assert!(v["final"]["monomial_ideal"].is_array());
}

#[test]
fn gvd_split_of_an_ideal_file() {
    let path = std::env::temp_dir().join(format!("vexgeom-cli-{}.ideal", std::process::id()));
    std::fs::write(&path, "# hyperbola\nring: x1 y1\nx1*y1 - 1\n").unwrap();
    let out = run(&["gvd", "split", path.to_str().unwrap(), "--var", "y1", "--format", "text"]);
    std::fs::remove_file(&path).ok();
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8(out.stdout).unwrap().contains("gvd true"));
}

#[test]
fn buch_specialization_agrees() {
    let v = json(&run(&["poly", "buch", "1", "--k", "2"]));
    assert_eq!(v["agree"], true);
    assert_eq!(v["tableau_sum"]["terms"].as_array().unwrap().len(), 3);
    let t = String::from_utf8(run(&["poly", "buch", "1", "--k", "2", "--format", "text"]).stdout).unwrap();
    assert!(t.starts_with("-x1*x2 + x1 + x2"));
}
