use std::process::{Command, Output};

use serde_json::{json, Value};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_polyinv"))
        .args(args)
        .output()
        .expect("run polyinv")
}

fn code(args: &[&str]) -> i32 {
    run(args).status.code().unwrap()
}

fn stdout(args: &[&str]) -> String {
    String::from_utf8(run(args).stdout).unwrap()
}

fn json(args: &[&str]) -> (i32, Value) {
    let mut full = vec!["--json"];
    full.extend_from_slice(args);
    let out = run(&full);
    let v = serde_json::from_slice(&out.stdout).expect("stdout is JSON");
    (out.status.code().unwrap(), v)
}

#[test]
fn envelope_keys_in_order() {
    let out = stdout(&["--json", "catalan", "5"]);
    let c = out.find("\"command\"").unwrap();
    let s = out.find("\"status\"").unwrap();
    let d = out.find("\"data\"").unwrap();
    assert!(c < s && s < d);
}

#[test]
fn classify_granville_map() {
    let (code, v) = json(&["classify", "-(x+y+z)"]);
    assert_eq!(code, 0);
    assert_eq!(v["command"], "classify");
    assert_eq!(v["status"], "ok");
    let d = &v["data"];
    assert_eq!(d["variant"], "Adequate");
    assert_eq!(d["m"], 2);
    assert_eq!(d["q"], "-1");
    assert_eq!(d["r"], "-x - y");
    assert_eq!(d["orbit"], json!(["z", "-x - y - z"]));
    assert_eq!(d["generator"], "-x*z - y*z - z^2");
    assert_eq!(d["coprimality"][0]["coprime"], true);
}

#[test]
fn classify_nonlinear() {
    let (code, v) = json(&["classify", "z^2"]);
    assert_eq!(code, 0);
    assert_eq!(v["data"]["variant"], "NonlinearInZ");
    assert!(v["data"]["explanation"]
        .as_str()
        .unwrap()
        .contains("B = K[x]"));
    assert!(stdout(&["classify", "z^2"]).contains("B = K[x]"));
}

#[test]
fn classify_cyclotomic() {
    let (code, v) = json(&["--field", "3", "classify", "w*z+x"]);
    assert_eq!(code, 0);
    assert_eq!(v["data"]["variant"], "Adequate");
    assert_eq!(v["data"]["m"], 3);
    assert_eq!(v["data"]["orbit"].as_array().unwrap().len(), 3);
}

#[test]
fn classify_text_lists_orbit() {
    let out = stdout(&["classify", "-z"]);
    assert!(out.contains("classification: Adequate"));
    assert!(out.contains("p_1 = -z"));
    assert!(out.contains("b = -z^2"));
}

#[test]
fn usage_errors() {
    assert_eq!(code(&["classify", "z^"]), 2);
    assert_eq!(code(&["classify", "w*z"]), 2);
    assert_eq!(code(&["classify", "q"]), 2);
    assert_eq!(code(&["--vars", "x,y", "classify", "y"]), 2);
    assert_eq!(code(&["--vars", "x,x,z", "classify", "z"]), 2);
    assert_eq!(code(&["--field", "0", "classify", "z"]), 2);
    assert_eq!(code(&["frobnicate"]), 2);
    let (c, v) = json(&["classify", "z +"]);
    assert_eq!(c, 2);
    assert_eq!(v["status"], "usage_error");
}

#[test]
fn parse_error_reports_position() {
    let out = run(&["classify", "z + $"]);
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("position 4"), "{err}");
}

#[test]
fn custom_vars() {
    let (code, v) = json(&["--vars", "a,b,z", "classify", "-z + a*b"]);
    assert_eq!(code, 0);
    assert_eq!(v["data"]["generator"], "a*b*z - z^2");
}

#[test]
fn decompose_constructed_invariant() {
    // x*y + (-1)*b with b = -z^2 - x*z - y*z
    let (code, v) = json(&["decompose", "-(x+y+z)", "z^2+x*z+y*z+x*y"]);
    assert_eq!(code, 0);
    let d = &v["data"];
    assert_eq!(d["coefficients"], json!(["x*y", "-1"]));
    assert_eq!(d["verified"], true);
    assert!(d["indexing"].as_str().unwrap().contains("generator^j"));
}

#[test]
fn decompose_sign_map() {
    let (code, v) = json(&["decompose", "-z", "z^2"]);
    assert_eq!(code, 0);
    assert_eq!(v["data"]["coefficients"], json!(["0", "-1"]));
    assert_eq!(v["data"]["generator"], "-z^2");
}

#[test]
fn decompose_with_supplied_generator() {
    let (status, v) = json(&[
        "decompose",
        "-(x+y+z)",
        "z^2+x*z+y*z+x*y",
        "--generator",
        "z*(x+y+z)",
    ]);
    assert_eq!(status, 0);
    assert_eq!(v["data"]["coefficients"], json!(["x*y", "1"]));
    assert_eq!(v["data"]["generator"], "x*z + y*z + z^2");
    assert_eq!(code(&["decompose", "-z", "z^2", "--generator", "z"]), 1);
}

#[test]
fn decompose_not_invariant() {
    let out = run(&["decompose", "-(x+y+z)", "z"]);
    assert_eq!(out.status.code(), Some(1));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("not invariant"), "{err}");
    let (c, v) = json(&["decompose", "-(x+y+z)", "z"]);
    assert_eq!(c, 1);
    assert_eq!(v["status"], "failed");
}

#[test]
fn decompose_codes() {
    assert_eq!(code(&["decompose", "-z", "z^"]), 2);
    assert_eq!(code(&["decompose", "z^2", "x"]), 1);
    assert_eq!(code(&["decompose", "z", "x*z^3"]), 0);
}

#[test]
fn fermat_five() {
    let (code, v) = json(&["fermat", "5"]);
    assert_eq!(code, 0);
    let d = &v["data"];
    assert_eq!(d["e"], 1);
    assert_eq!(d["cauchy"], "1");
    assert_eq!(
        d["expansion"]["coefficients"],
        json!(["1", "x^2 + x*y + y^2"])
    );
    assert!(d["expansion"]["indexing"]
        .as_str()
        .unwrap()
        .contains("b^(n-j)"));
    assert!(d.get("e3").is_none());
}

#[test]
fn fermat_seven() {
    let (code, v) = json(&["fermat", "7", "--with-e3"]);
    assert_eq!(code, 0);
    let d = &v["data"];
    assert_eq!(d["e"], 2);
    assert_eq!(
        d["expansion"]["coefficients"],
        json!([
            "1",
            "2*x^2 + 3*x*y + 2*y^2",
            "x^4 + 2*x^3*y + 3*x^2*y^2 + 2*x*y^3 + y^4"
        ])
    );
    assert_eq!(d["xy_identity"]["holds"], true);
    assert!(d["e3"]
        .as_str()
        .unwrap()
        .starts_with("x^4 + 2*x^3*y + 2*x^3*z"));
    assert_eq!(d["conjecture"].as_array().unwrap().len(), 2);
    assert_eq!(d["observations"]["second_holds"], true);
}

#[test]
fn fermat_rejects_non_primes() {
    for p in ["9", "3", "2", "1", "0"] {
        assert_eq!(code(&["fermat", p]), 2, "p = {p}");
    }
    assert_eq!(code(&["fermat", "-5"]), 2);
}

#[test]
fn catalan_examples() {
    for n in ["5", "9"] {
        let (code, v) = json(&["catalan", n]);
        assert_eq!(code, 0);
        assert_eq!(v["data"]["equal"], true);
        assert_eq!(v["data"]["lhs"], v["data"]["rhs"]);
    }
    assert_eq!(code(&["catalan", "4"]), 2);
    assert_eq!(code(&["catalan", "3"]), 2);
}

#[test]
fn suite_cauchy() {
    let out = run(&["suite", "cauchy", "--max-p", "31"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("p = 31"));
    assert!(!text.contains("[FAIL]"));
}

#[test]
fn suite_roundtrip() {
    let out = stdout(&["suite", "roundtrip", "--cases", "200", "--seed", "42"]);
    assert!(out.contains("200/200"), "{out}");
}

#[test]
fn suite_all_is_deterministic() {
    let (c1, a) = json(&["suite", "all", "--cases", "40"]);
    let (c2, b) = json(&["suite", "all", "--cases", "40"]);
    assert_eq!((c1, c2), (0, 0));
    assert_eq!(a, b);
    let names: Vec<_> = a["data"]["suites"]
        .as_array()
        .unwrap()
        .iter()
        .map(|s| s["name"].as_str().unwrap())
        .collect();
    assert_eq!(
        names,
        ["cauchy", "granville", "catalan", "roundtrip", "lemmas"]
    );
}

#[test]
fn suite_edge_cases() {
    assert_eq!(code(&["suite", "cauchy", "--max-p", "3"]), 0);
    assert_eq!(code(&["suite", "nonsense"]), 2);
}
