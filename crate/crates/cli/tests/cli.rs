use std::process::{Command, Output};

use serde_json::Value;

fn optseq(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_optseq"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout_json(args: &[&str]) -> Value {
    let out = optseq(args);
    assert!(
        out.status.success(),
        "{args:?}: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_slice(&out.stdout).expect("valid JSON")
}

#[test]
fn scan_lists_family() {
    let v = stdout_json(&["scan", "--max-n", "700"]);
    let ns: Vec<u64> = v
        .as_array()
        .unwrap()
        .iter()
        .map(|p| p["n"].as_u64().unwrap())
        .collect();
    assert_eq!(ns, vec![5, 37, 101, 197, 677]);
    assert_eq!(stdout_json(&["scan", "--max-n", "4"]), Value::Array(vec![]));
    let csv = optseq(&["scan", "--max-n", "200", "--format", "csv"]);
    assert_eq!(
        String::from_utf8(csv.stdout).unwrap(),
        "N,f,y\n5,1,1\n37,9,3\n101,25,5\n197,49,7\n"
    );
}

#[test]
fn gen_both_variants() {
    let v = stdout_json(&["gen", "--n", "5", "--case", "0,1,2", "--variant", "sprime"]);
    assert_eq!(v["sequence"], "1011100001");
    assert_eq!(v["balanced"], true);
    assert_eq!(v["beta"], 2);
    let v = stdout_json(&["gen", "--n", "5", "--variant", "s"]);
    assert_eq!(v["sequence"], "0011100001");
    assert_eq!(v["weight"], 4);
    let text = optseq(&["gen", "--n", "5", "--format", "text"]);
    assert!(String::from_utf8(text.stdout)
        .unwrap()
        .starts_with("1011100001\n"));
}

#[test]
fn gen_rejects_bad_parameters() {
    let out = optseq(&["gen", "--n", "13"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("not a perfect square"));
    let out = optseq(&["gen", "--n", "5", "--case", "0,1,3"]);
    assert_ne!(out.status.code(), Some(0));
    let out = optseq(&["gen", "--n", "5", "--beta", "4"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn spectrum_csv_and_json() {
    let out = optseq(&["spectrum", "--seq", "1011100001", "--format", "csv"]);
    let csv = String::from_utf8(out.stdout).unwrap();
    assert!(csv.starts_with("tau,value\n0,10\n1,2\n2,-2\n"));
    assert_eq!(csv.lines().count(), 11);
    let v = stdout_json(&["spectrum", "--n", "5", "--variant", "s"]);
    assert_eq!(
        v["histogram"],
        serde_json::json!({"-2": 6, "2": 3, "10": 1})
    );
}

#[test]
fn lc_reports_both_methods() {
    let v = stdout_json(&["lc", "--seq", "00101"]);
    assert_eq!(v["lc"], 4);
    assert_eq!(v["bm_lc"], 4);
    assert_eq!(v["minimal_polynomial"], "x^4 + x^3 + x^2 + x + 1");
    assert_eq!(v["minimal_polynomial_hex"], "1f");
    assert_eq!(v["gcd_with_xn_minus_1"], "x + 1");
    let v = stdout_json(&["lc", "--n", "197"]);
    assert_eq!(v["lc"], v["bm_lc"]);
    assert!(v["lc"].as_u64().unwrap() >= 390);
}

#[test]
fn verify_single_and_all() {
    let v = stdout_json(&["verify", "--n", "5"]);
    let reports = v.as_array().unwrap();
    assert_eq!(reports.len(), 8);
    for r in reports {
        assert!(r["hard_failures"].as_array().unwrap().is_empty());
        assert_eq!(r["theorem1_matches"], false);
    }
    let v = stdout_json(&["verify", "--all", "--max-n", "200"]);
    assert_eq!(v.as_array().unwrap().len(), 32);
}

#[test]
fn verify_rejects_composite() {
    let out = optseq(&["verify", "--n", "25"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("not prime"));
}

#[test]
fn verify_is_deterministic_and_honors_beta() {
    let a = optseq(&["verify", "--n", "37", "--beta", "5"]);
    let b = optseq(&["verify", "--n", "37", "--beta", "5"]);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let v: Value = serde_json::from_slice(&a.stdout).unwrap();
    assert!(v.as_array().unwrap().iter().all(|r| r["beta"] == 5));
}

#[test]
fn out_flag_writes_file() {
    let dir = std::env::temp_dir().join(format!("optseq-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("spectrum.csv");
    let out = optseq(&[
        "spectrum",
        "--n",
        "5",
        "--format",
        "csv",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
    let body = std::fs::read_to_string(&path).unwrap();
    assert!(body.starts_with("tau,value\n0,10\n"));
    std::fs::remove_dir_all(dir).unwrap();
}
