use std::process::Command;

use serde_json::Value;

fn plane_lct(args: &[&str]) -> (Value, i32) {
    let out = Command::new(env!("CARGO_BIN_EXE_plane-lct"))
        .args(args)
        .args(["--format", "json"])
        .output()
        .expect("binary runs");
    let text = if out.status.success() {
        out.stdout
    } else {
        out.stderr
    };
    let report: Value = serde_json::from_slice(&text).expect("json report");
    (report, out.status.code().expect("exit code"))
}

#[test]
fn report_shape() {
    let (report, code) = plane_lct(&["lct", "x^2+y^3"]);
    assert_eq!(code, 0);
    assert_eq!(report["status"], "ok");
    assert_eq!(report["payload"]["lct"], "5/6");
    assert_eq!(report["payload"]["method"], "classifier");
    assert!(report["diagnostics"].as_array().unwrap().is_empty());
}

#[test]
fn high_multiplicity_point() {
    let (report, _) = plane_lct(&["lct", "y^4+x^5", "--point", "0,0"]);
    assert_eq!(report["payload"]["lct"], "9/20");
    assert_eq!(report["payload"]["method"], "highmult");
}

#[test]
fn translated_point() {
    let (report, _) = plane_lct(&["classify", "(x-1)^3 + (y+1/2)^4", "--point", "1,-1/2"]);
    assert_eq!(report["payload"]["symbol"], "E6");
    assert_eq!(report["payload"]["lct"], "7/12");
}

#[test]
fn invariants() {
    assert_eq!(plane_lct(&["milnor", "x^3+y^5"]).0["payload"]["mu"], "8");
    assert_eq!(
        plane_lct(&["imult", "y-x^2", "y"]).0["payload"]["imult"],
        "2"
    );
    assert_eq!(
        plane_lct(&["imult", "x*y", "x"]).0["payload"]["imult"],
        "inf"
    );
    let (report, _) = plane_lct(&["wbound", "x^2+y^3", "--weights", "3,2"]);
    assert_eq!(report["payload"]["bound"], "5/6");
}

#[test]
fn witness_and_value_set() {
    let (report, _) = plane_lct(&["lambda-set", "4"]);
    let values: Vec<&str> = report["payload"]["values"]
        .as_array()
        .unwrap()
        .iter()
        .map(|v| v.as_str().unwrap())
        .collect();
    assert_eq!(values, ["5/9", "7/12", "3/5", "5/8", "2/3"]);
    let (report, code) = plane_lct(&["witness", "5", "7/15"]);
    assert_eq!(code, 0);
    let poly = report["payload"]["polynomial"]
        .as_str()
        .unwrap()
        .to_string();
    let (check, _) = plane_lct(&["lct", &poly]);
    assert_eq!(check["payload"]["lct"], "7/15");
}

#[test]
fn resolve_writes_dot() {
    let dir = std::env::temp_dir().join(format!("plane-lct-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let dot = dir.join("cusp.dot");
    let (report, code) = plane_lct(&["resolve", "x^2+y^3", "--dot", dot.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert_eq!(report["payload"]["lct"], "5/6");
    assert_eq!(report["payload"]["divisors"].as_array().unwrap().len(), 3);
    let text = std::fs::read_to_string(&dot).unwrap();
    assert!(text.starts_with("digraph resolution {"));
    assert!(text.contains("E1 -> E2;"));
    std::fs::remove_dir_all(dir).unwrap();
}

#[test]
fn error_exit_codes() {
    let (report, code) = plane_lct(&["lct", "x^2 +* y"]);
    assert_eq!(code, 2);
    assert_eq!(report["status"], "error");
    assert!(!report["diagnostics"].as_array().unwrap().is_empty());
    assert_eq!(plane_lct(&["classify", "x^2*y^2 + x^7 + y^7"]).1, 3);
    assert_eq!(plane_lct(&["lct", "(x+y)^2*(x-y)"]).1, 3);
    assert_eq!(plane_lct(&["resolve", "(x^2+y^2)^2 + x^5"]).1, 4);
    assert_eq!(plane_lct(&["resolve", "x^2+y^90", "--cap", "4"]).1, 5);
}

#[test]
fn selftest_is_deterministic() {
    let (a, code) = plane_lct(&["selftest", "--seed", "2"]);
    assert_eq!(code, 0);
    let (b, _) = plane_lct(&["selftest", "--seed", "2"]);
    assert_eq!(a, b);
    assert_eq!(a["payload"]["criteria"].as_array().unwrap().len(), 8);
    assert!(a["payload"]["total_checked"].as_u64().unwrap() >= 400);
}
