use std::path::PathBuf;
use std::process::{Command, Output};

use alexlin::groups::{kernel_presentation, normalize};
use alexlin::reps::{brute_force_periodic, enumerate_periodic, EnumerateOptions};
use alexlin::{corpus, AugmentedGroupSystem, LaurentPoly};
use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_alexlin")).args(args).output().expect("spawn alexlin")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn scratch(name: &str, body: &str) -> PathBuf {
    let path = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join(name);
    std::fs::write(&path, body).unwrap();
    path
}

#[test]
fn bs_invariant_text() {
    let o = run(&["invariant", "corpus:bs.agp", "--N", "3", "--r", "2"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.contains("D = 4 - 9s + 6s^2 - s^3"), "{out}");
    assert!(out.contains("extends over G"));
}

#[test]
fn seven_three_from_rep_file() {
    let o = run(&["invariant", "corpus:7_3.agp", "--rep", "corpus:7_3_rep.json", "--json"]);
    assert_eq!(o.status.code(), Some(0));
    let doc: Value = serde_json::from_str(&stdout(&o)).unwrap();
    let report = &doc["result"]["reports"][0]["report"];
    assert_eq!((report["N"].clone(), report["r"].clone()), (5.into(), 13.into()));
    assert_eq!(report["s_minus_one_power"], 8);
    let checks = report["checks"].as_array().unwrap();
    assert!(checks.iter().all(|c| c["status"] != "fail"));
}

#[test]
fn json_and_text_agree() {
    let text = stdout(&run(&["invariant", "corpus:bs.agp", "--rep", "corpus:bs_rep.json"]));
    let json = stdout(&run(&["invariant", "corpus:bs.agp", "--rep", "corpus:bs_rep.json", "--json"]));
    let doc: Value = serde_json::from_str(&json).unwrap();
    let report = &doc["result"]["reports"][0]["report"];
    let from_json: LaurentPoly = serde_json::from_value(report["D"].clone()).unwrap();
    assert_eq!(LaurentPoly::parse(report["d_text"].as_str().unwrap(), "s").unwrap(), from_json);
    let line = text.lines().find_map(|l| l.strip_prefix("D = ")).unwrap();
    assert_eq!(LaurentPoly::parse(line, "s").unwrap(), from_json);
    assert_eq!(doc["command"], "invariant");
}

#[test]
fn output_is_reproducible_without_timestamp() {
    let args = ["enumerate", "corpus:trefoil.agp", "--N", "3", "--r", "2", "--json"];
    let a = run(&args);
    let b = run(&args);
    assert_eq!(a.stdout, b.stdout);
    assert!(!stdout(&a).contains("generated_at"));
    let mut stamped = args.to_vec();
    stamped.push("--timestamp");
    assert!(stdout(&run(&stamped)).contains("generated_at"));
}

#[test]
fn enumerate_count_matches_brute_force() {
    let sys = AugmentedGroupSystem::parse(corpus::get("trefoil.agp").unwrap()).unwrap();
    let kp = kernel_presentation(&normalize(&sys)).unwrap();
    let raw = EnumerateOptions {
        raw: true,
        ..EnumerateOptions::default()
    };
    assert_eq!(
        enumerate_periodic(&kp, 3, 2, &raw).unwrap().reps.len(),
        brute_force_periodic(&kp, 3, 2, false).len()
    );
    let expected = enumerate_periodic(&kp, 3, 2, &EnumerateOptions::default()).unwrap().reps.len();
    let o = run(&["enumerate", "corpus:trefoil.agp", "--N", "3", "--r", "2", "--json"]);
    let doc: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(doc["result"]["count"], expected);
}

#[test]
fn failed_check_exits_three() {
    // BS(1,2) flagged as a manifold group: D is not reciprocal.
    let path = scratch("bs_manifold.agp", "gens x a; eps x=1 a=0; rel x a x^-1 a^-2; meta manifold;\n");
    let o = run(&["checks", path.to_str().unwrap(), "--rep", "corpus:bs_rep.json"]);
    assert_eq!(o.status.code(), Some(3));
    assert!(stdout(&o).contains("FAIL"));
}

#[test]
fn input_errors_exit_one() {
    assert_eq!(run(&["invariant", "/nonexistent/file.agp", "--N", "2", "--r", "1"]).status.code(), Some(1));
    assert_eq!(run(&["frobnicate"]).status.code(), Some(1));
    let bad = scratch("bad.agp", "gens x; eps x=1; rel x y;\n");
    assert_eq!(run(&["invariant", bad.to_str().unwrap(), "--N", "2", "--r", "1"]).status.code(), Some(1));
    let rep = scratch("wrong_rep.json", r#"{"N":3,"r":2,"table":{"a":[[[1,2]],[[1,2]]]}}"#);
    let o = run(&["invariant", "corpus:bs.agp", "--rep", rep.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(!o.stderr.is_empty());
}

#[test]
fn torsion_and_corpus_listing() {
    let o = run(&["torsion", "corpus:fig8.agp", "--n", "3"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("n = 3: torsion 16, free rank 0"));
    let names = stdout(&run(&["corpus"]));
    for n in ["bs.agp", "7_3.agp", "fig8.agp"] {
        assert!(names.lines().any(|l| l == n));
    }
}

#[test]
fn mahler_csv_header() {
    let o = run(&["mahler", "corpus:fig8.agp", "--n-max", "6", "--csv"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert_eq!(out.lines().next(), Some("n,b,b_pow"));
    assert_eq!(out.lines().count(), 7);
}
