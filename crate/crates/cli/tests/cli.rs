use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_fqrigid"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn json(args: &[&str]) -> (Value, i32) {
    let mut all = vec!["--json"];
    all.extend_from_slice(args);
    let out = run(&all);
    let v = serde_json::from_slice(&out.stdout).unwrap_or_else(|e| {
        panic!("{e}: {}", String::from_utf8_lossy(&out.stderr));
    });
    (v, out.status.code().unwrap())
}

#[test]
fn class_number_examples() {
    let (v, code) = json(&["class-number", "kind=projective-line", "q=7"]);
    assert_eq!(code, 0);
    assert_eq!(v["schema"], 1);
    assert_eq!(v["class_number"], 1);
    let (v, _) = json(&["class-number", "q=2", "kind=artin-schreier", "poly=x^3"]);
    assert_eq!(v["class_number"], 3);
    assert_eq!(v["counts"], serde_json::json!([3, 9]));
    let out = run(&["class-number", "q=2", "kind=elliptic-ish"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(out.stdout.is_empty());
}

#[test]
fn zeta_and_places() {
    let (v, _) = json(&["zeta", "q=3", "kind=hyperelliptic", "poly=x^3+2*x+2"]);
    assert_eq!(v["zeta"], serde_json::json!([1, -3, 3]));
    assert_eq!(v["functional_equation"], true);
    assert_eq!(v["weil_bounds"], true);
    assert_eq!(v["counts"], v["predicted_counts"]);
    let (v, _) = json(&["places", "--degree", "2", "q=2", "kind=projective-line"]);
    assert_eq!(v["count"], 1);
}

#[test]
fn rigid_search_exit_codes() {
    let (v, code) = json(&["rigid-search", "--q", "5", "--genus-max", "1"]);
    assert_eq!(code, 0);
    assert_eq!(v["search"]["exceptional"].as_array().unwrap().len(), 0);
    let (v, code) = json(&["rigid-search", "--q", "2", "--genus-max", "1"]);
    assert_eq!(code, 4);
    assert!(!v["search"]["exceptional"].as_array().unwrap().is_empty());
    assert_eq!(run(&["rigid-search", "--q", "6"]).status.code(), Some(2));
}

#[test]
fn subgroup_examples() {
    let (v, code) = json(&["subgroup", "q=4", "f=x", "gens=[]"]);
    assert_eq!(code, 0);
    let f = &v["frames"][0];
    assert_eq!(f["cusps"], 5);
    assert_eq!(f["level"], serde_json::json!([0, 1]));
    assert_eq!(f["modular"], true);
    assert_eq!(f["classically_modular"], true);

    let (v, _) = json(&["subgroup", "q=3 f=x gens=[1,1,0,1;2,0,0,1;1,0,1,1]"]);
    assert_eq!(v["frames"][0]["index"], 1);
    assert_eq!(v["frames"][0]["modular"], false);

    let out = run(&["subgroup", "q=3 f=x^2 gens=[x,0,0,1]"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(out.stdout.is_empty());
}

#[test]
fn subgroup_reads_frame_files_and_samples() {
    let dir = std::env::temp_dir().join(format!("fqrigid-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("frames.txt");
    std::fs::write(&path, "# two frames\nq=2 f=x gens=[]\nq=3 f=x gens=[]  # Gamma_T\n").unwrap();
    let (v, _) = json(&["subgroup", path.to_str().unwrap()]);
    let frames = v["frames"].as_array().unwrap();
    assert_eq!(frames.len(), 2);
    assert_eq!(frames[0]["cusps"], 3);
    assert_eq!(frames[1]["cusps"], 4);

    let a = run(&["--json", "--seed", "9", "subgroup", "q=3", "f=x^2", "gens=[]", "--random", "2"]);
    let b = run(&["--json", "--seed", "9", "subgroup", "q=3", "f=x^2", "gens=[]", "--random", "2"]);
    assert_eq!(a.stdout, b.stdout);
    let v: Value = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(v["frames"][0]["generators"].as_array().unwrap().len(), 2);
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn belyi_examples() {
    let (v, code) = json(&["belyi", "q=3", "num=x^2"]);
    assert_eq!(code, 0);
    assert_eq!(v["branch_points"], serde_json::json!([0, "inf"]));
    assert_eq!(v["composite_num"], serde_json::json!([0, 0, 1]));
    assert_eq!(v["composite_den"], serde_json::json!([1]));

    let (v, code) = json(&["belyi", "q=5", "num=x^3-x"]);
    assert_eq!(code, 0);
    assert_eq!(v["extension_degree"], 2);
    assert_eq!(v["composite_degree"], 15);
    for b in v["composite_branch_points"].as_array().unwrap() {
        assert!(b["point"] == 0 || b["point"] == "inf");
    }

    let (v, _) = json(&["belyi", "q=2", "num=[0,1,1]", "targets=0,1"]);
    assert_eq!(v["wild_flags"], serde_json::json!([[true]]));

    let out = run(&["belyi", "q=2", "num=x^2"]);
    assert_ne!(out.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&out.stderr).contains("inseparable"));
    assert_eq!(run(&["belyi", "q=3", "num=x^2", "targets=0,7"]).status.code(), Some(2));
}

#[test]
fn oracle_clb_agrees() {
    let (v, code) = json(&["oracle-clB", "--place-degree", "2", "q=2", "kind=projective-line"]);
    assert_eq!(code, 0);
    assert_eq!(v["orders"]["exact-sequence"], 2);
    assert_eq!(v["orders"]["relation-lattice"], 2);
    assert_eq!(v["agree"], true);
    let out = run(&["oracle-clB", "--place-index", "99", "q=2", "kind=projective-line"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn output_is_deterministic() {
    for args in [
        vec!["--json", "rigid-search", "--q", "3", "--genus-max", "2"],
        vec!["--json", "belyi", "q=7", "num=[1,0,0,1]", "den=[0,1]"],
        vec!["--json", "--workers", "1", "rigid-search", "--q", "4", "--genus-max", "1"],
    ] {
        let a = run(&args);
        let b = run(&args);
        assert!(!a.stdout.is_empty());
        assert_eq!(a.stdout, b.stdout);
    }
}

#[test]
fn usage_errors() {
    assert_eq!(run(&[]).status.code(), Some(2));
    assert_eq!(run(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(run(&["--guard", "ten", "zeta", "q=2"]).status.code(), Some(2));
}
