use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

const STD0: &str = r#"{"kind":"standard","alpha":0}"#;

fn paraprod(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_paraprod"))
        .args(args)
        .env("PARAPROD_THREADS", "2")
        .output()
        .expect("binary runs")
}

fn json(args: &[&str]) -> Value {
    let out = paraprod(args);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("single JSON object")
}

fn tmp(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("paraprod-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

#[test]
fn identities_example() {
    let v = json(&["identities", "--seed", "7", "--cases", "200"]);
    assert_eq!(v["passed"], 200);
    assert_eq!(v["failed"], 0);
}

#[test]
fn decompose_example() {
    let v = json(&["decompose", "--m", "4", "--n", "2", "--j", "0"]);
    assert_eq!((v["q"].as_u64(), v["d"].as_u64()), (Some(2), Some(0)));
    assert_eq!(v["word"], "SSTSST");
}

#[test]
fn norm_example() {
    let v = json(&["norm", "--series", "[[0,0],[1,0]]", "--p", "2", "--weight", STD0]);
    assert!((v["value"].as_f64().unwrap() - 0.5f64.sqrt()).abs() < 1e-15);
    assert_eq!(v["err_est"].as_f64(), Some(0.0));
}

#[test]
fn outputs_are_deterministic() {
    let args = [
        "opnorm",
        "--op",
        r#"[{"coeff":1,"word":"T"}]"#,
        "--symbol",
        "[[0,0],[1,0],[0.25,0]]",
        "--weight",
        STD0,
        "--family",
        r#"{"kind":"random_polys","count":6,"max_degree":5,"seed":3}"#,
        "--refine",
        "20",
        "--seed",
        "11",
    ];
    let a = paraprod(&args);
    let b = paraprod(&args);
    assert!(a.status.success(), "{}", String::from_utf8_lossy(&a.stderr));
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn csv_output_and_manifest() {
    let out = tmp("radicality.csv");
    let o = paraprod(&[
        "radicality",
        "--symbol",
        "[[0,0],[1,0]]",
        "--weight",
        STD0,
        "--family",
        r#"{"kind":"monomials","max_degree":6}"#,
        "--seed",
        "1",
        "--n-max",
        "3",
        "--out",
        out.to_str().unwrap(),
    ]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let text = std::fs::read_to_string(&out).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("m,lower_bound,root,fitted_c"));
    assert_eq!(lines.count(), 3);

    let manifest_path = out.with_file_name("radicality.csv.manifest.json");
    let m: Value = serde_json::from_str(&std::fs::read_to_string(&manifest_path).unwrap()).unwrap();
    assert_eq!(m["command"], "radicality");
    assert_eq!(m["seed"], 1);
    assert_eq!(m["outputs"][0], out.to_str().unwrap());
    let hash = m["versions"]["config_hash"].as_str().unwrap();
    assert_eq!(hash.len(), 64);

    // same inputs, same hash
    let o2 = paraprod(&["--manifest", tmp("again.json").to_str().unwrap(), "radicality", "--symbol", "[[0,0],[1,0]]",
        "--weight", STD0, "--family", r#"{"kind":"monomials","max_degree":6}"#, "--seed", "1", "--n-max", "3",
        "--out", out.to_str().unwrap()]);
    assert!(o2.status.success());
    let m2: Value = serde_json::from_str(&std::fs::read_to_string(tmp("again.json")).unwrap()).unwrap();
    assert_eq!(m2["versions"]["config_hash"], hash);
}

#[test]
fn input_errors_exit_2() {
    for args in [
        vec!["norm", "--series", "[[0,0],[1", "--p", "2", "--weight", STD0],
        vec!["norm", "--series", "[1]", "--p", "2", "--weight", r#"{"kind":"gaussian"}"#],
        vec!["norm", "--series", "[1]", "--p", "0", "--weight", STD0],
        vec!["decompose", "--m", "2"],
        vec!["frobnicate"],
    ] {
        let o = paraprod(&args);
        assert_eq!(o.status.code(), Some(2), "{args:?}");
        assert!(!o.stderr.is_empty());
    }
}

#[test]
fn randomized_commands_require_a_seed() {
    let o = paraprod(&["identities", "--cases", "3"]);
    assert_eq!(o.status.code(), Some(2));
    let o = paraprod(&["tent-norm", "--series", "[1]", "--p", "2", "--weight", STD0, "--mc-samples", "10"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn strict_flags_truncation_limited_seminorms() {
    // (1-z)^{1/4} converges slowly: its Lipschitz quotient keeps moving under cap doubling
    let series = r#"{"kind":"binomial","a":0.25,"cap":64}"#;
    let args = ["seminorm", "--kind", "lip", "--s", "0.5", "--series", series];
    let lax = paraprod(&args);
    assert!(lax.status.success(), "{}", String::from_utf8_lossy(&lax.stderr));
    let v: Value = serde_json::from_slice(&lax.stdout).unwrap();
    assert_eq!(v["truncation"]["truncation_limited"], true);
    let strict: Vec<&str> = std::iter::once("--strict").chain(args).collect();
    assert_eq!(paraprod(&strict).status.code(), Some(3));
}

#[test]
fn degree_explosion_exits_4() {
    // g = z^3000, so g^2 already exceeds the degree limit
    let o = paraprod(&[
        "radicality",
        "--symbol",
        r#"{"kind":"monomial","k":3000}"#,
        "--weight",
        STD0,
        "--family",
        r#"{"kind":"monomials","max_degree":2}"#,
        "--seed",
        "1",
    ]);
    assert_eq!(o.status.code(), Some(4));
}
