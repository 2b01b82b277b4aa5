use std::path::Path;
use std::process::{Command, Output};

use crn_immune::catalog::NamedNetwork;
use crn_immune::CrNetwork;
use serde_json::Value;

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_crn-immune"));
    c.env_remove("CRN_IMMUNE_OUT_DIR");
    c
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p.to_str().unwrap().to_string()
}

fn json_stdout(out: &Output) -> Value {
    assert!(out.status.success(), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).unwrap()
}

const EX1: &str = r#"{"f":[1,3,4],"p":1,"c":1,"b":1,"alpha":0.6666666666666666,"beta":0.4444444444444444}"#;
const GENERIC2: &str = r#"{"f":[2,1],"p":1,"c":1,"b":1,"alpha":0.6,"beta":0.3}"#;

#[test]
fn stability_of_the_stable_branch_point() {
    let dir = tempfile::tempdir().unwrap();
    let params = write(dir.path(), "ex1.json", EX1);
    let out = run(&["stability", "--network", "branch_cycle3", "--params", &params, "--support", "I=1,3", "J=2,3"]);
    let v = json_stdout(&out);
    let rep = &v["report"];
    assert_eq!(rep["verdict"], "stable");
    let eigs: Vec<(f64, f64)> = rep["eigenvalues"]
        .as_array()
        .unwrap()
        .iter()
        .map(|p| (p[0].as_f64().unwrap(), p[1].as_f64().unwrap()))
        .collect();
    for want in [-7.0 / 12.0, -0.5] {
        assert!(eigs.iter().any(|&(re, im)| (re - want).abs() < 1e-9 && im == 0.0), "{want} in {eigs:?}");
    }
    assert_eq!(rep["factor_checks"].as_array().unwrap().len(), 1);
}

#[test]
fn pair_fixed_points() {
    let dir = tempfile::tempdir().unwrap();
    let params = write(dir.path(), "g.json", GENERIC2);
    let v = json_stdout(&run(&["fixed-points", "--network", "asym2", "--params", &params]));
    let sols = v["solutions"].as_array().unwrap();
    assert_eq!(sols.len(), 4);
    let li: Vec<&Value> = sols
        .iter()
        .filter(|s| s["labels"].as_array().unwrap().contains(&Value::from("persistent")))
        .collect();
    assert_eq!(li.len(), 1);
    assert_eq!(li[0]["labels"][1], "altruistic");
    assert_eq!(li[0]["stability"]["verdict"], "unstable");
}

#[test]
fn catalog_networks_round_trip() {
    for net in NamedNetwork::ALL {
        let out = run(&["catalog", "show", net.name(), "--network-only"]);
        assert!(out.status.success());
        let parsed = CrNetwork::from_json(std::str::from_utf8(&out.stdout).unwrap()).unwrap();
        assert_eq!(parsed, net.network());
    }
    let v = json_stdout(&run(&["catalog", "show", "composed5"]));
    assert_eq!(v["network"]["n"], 5);
    assert_eq!(v["network"]["edges"].as_array().unwrap().len(), 6);
    assert_eq!(json_stdout(&run(&["catalog", "list"])).as_array().unwrap().len(), 7);
}

#[test]
fn output_file_and_directory() {
    let dir = tempfile::tempdir().unwrap();
    let target = dir.path().join("nested/out.json");
    let out = run(&["catalog", "list", "--output", target.to_str().unwrap()]);
    assert!(out.status.success() && out.stdout.is_empty());
    assert!(serde_json::from_str::<Value>(&std::fs::read_to_string(&target).unwrap()).is_ok());

    let out = bin()
        .args(["catalog", "show", "asym2"])
        .env("CRN_IMMUNE_OUT_DIR", dir.path())
        .output()
        .unwrap();
    assert!(out.status.success());
    assert!(dir.path().join("asym2.json").exists());
    // Only the final files remain; temporaries were renamed away.
    let names: Vec<_> = std::fs::read_dir(dir.path()).unwrap().map(|e| e.unwrap().file_name()).collect();
    assert_eq!(names.len(), 2, "{names:?}");
}

#[test]
fn simulate_writes_csv() {
    let dir = tempfile::tempdir().unwrap();
    let params = write(dir.path(), "g.json", GENERIC2);
    let out = run(&["simulate", "--network", "asym2", "--params", &params, "--t-end", "5"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(text.lines().next().unwrap(), "t,x1,x2,r1,r2");
    assert!(text.lines().count() > 2);
}

#[test]
fn sweep_is_reproducible() {
    let dir = tempfile::tempdir().unwrap();
    let params = write(dir.path(), "ex1.json", EX1);
    let args = [
        "sweep", "--network", "branch_cycle3", "--params", &params, "--support", "I=1,3 J=2,3", "--samples", "40",
        "--radius", "0.01", "--seed", "5",
    ];
    let a = run(&args);
    let b = run(&[&args[..], &["--sequential"]].concat());
    assert_eq!(a.stdout, b.stdout);
    let v = json_stdout(&a);
    assert_eq!(v["stable_fraction"], 1.0);
    assert_eq!(v["records"].as_array().unwrap().len(), 40);
}

#[test]
fn errors_are_json_with_distinct_codes() {
    let dir = tempfile::tempdir().unwrap();
    let params = write(dir.path(), "g.json", GENERIC2);
    let bad = write(dir.path(), "bad.json", r#"{"f":[1,1],"p":1,"c":1,"b":1,"alpha":0.2,"beta":0.3}"#);
    let cases: [(&[&str], i32, &str); 5] = [
        (&["stability", "--network", "asym2", "--params", "missing.json", "--support", "I=1 J=1"], 3, "input"),
        (&["stability", "--network", "asym2", "--params", &bad, "--support", "I=1 J=1"], 4, "invalid_model"),
        (&["stability", "--network", "asym2", "--params", &params, "--support", "I=2 J=1"], 5, "unavailable"),
        (&["stability", "--network", "nope", "--params", &params, "--support", "I=1 J=1"], 5, "unavailable"),
        (&["stability", "--network", "asym2", "--params", &params, "--support", "I=1"], 3, "input"),
    ];
    for (args, code, kind) in cases {
        let out = run(args);
        assert_eq!(out.status.code(), Some(code), "{args:?}");
        let v: Value = serde_json::from_slice(&out.stderr).unwrap();
        assert_eq!(v["error"]["kind"], kind);
        assert_eq!(v["error"]["exit_code"], code);
    }
    assert_eq!(run(&["frobnicate"]).status.code(), Some(2));
}
