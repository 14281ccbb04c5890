use std::process::Command;

use serde_json::{json, Value};

fn run(args: &[&str]) -> (i32, Value) {
    let out = Command::new(env!("CARGO_BIN_EXE_anisotope"))
        .args(args)
        .output()
        .expect("binary runs");
    let stdout = String::from_utf8(out.stdout).unwrap();
    let v = serde_json::from_str(stdout.trim()).unwrap_or(Value::Null);
    (out.status.code().unwrap(), v)
}

fn assert_subset(got: &Value, want: &Value) {
    for (k, v) in want.as_object().unwrap() {
        assert_eq!(&got[k], v, "key {k} in {got}");
    }
}

#[test]
fn decide_anisotropic_at_seven() {
    let (code, v) = run(&["decide", "--field", "Q", "1", "1", "-7"]);
    assert_eq!(code, 0);
    assert_subset(
        &v,
        &json!({"schema": "1", "verdict": "anisotropic", "place": "7"}),
    );
}

#[test]
fn decide_char_three_witness() {
    let (code, v) = run(&["decide", "--field", "F3(t)", "1", "1", "1", "1", "1"]);
    assert_eq!(code, 0);
    assert_subset(
        &v,
        &json!({"verdict": "isotropic", "witness": ["1", "1", "1", "0", "0"]}),
    );
}

#[test]
fn hilbert_at_two() {
    let (code, v) = run(&["hilbert", "--field", "Q", "-1", "-1", "2"]);
    assert_eq!(code, 0);
    assert_eq!(v, json!({"schema": "1", "symbol": -1}));
    let (_, v) = run(&["hilbert", "--field", "Q", "-1", "-1"]);
    assert_eq!(v["ramified"], json!(["2", "inf"]));
}

#[test]
fn function_field_elements_with_leading_minus() {
    let (code, v) = run(&["hilbert", "--field", "F5(t)", "-t", "2", "t"]);
    assert_eq!(code, 0);
    // -t is a uniformizer and 2 a nonresidue mod 5
    assert_eq!(v["symbol"], json!(-1));
}

#[test]
fn matrix_input() {
    let (code, v) = run(&["decide", "--field", "Q", "0 1; 1 0"]);
    assert_eq!(code, 0);
    assert_eq!(v["verdict"], json!("isotropic"));
    let (code, v) = run(&["decide", "--field", "Q", "1, 0, 0; 0, 1, 0; 0, 0, 1"]);
    assert_eq!(code, 0);
    assert_subset(&v, &json!({"verdict": "anisotropic", "place": "inf"}));
}

#[test]
fn certificates_round_trip_and_mutations_fail() {
    for coeffs in [
        &["1", "1", "-7"][..],
        &["1", "-2", "3", "-5"],
        &["3", "5", "-7", "11", "-13"],
    ] {
        let mut args = vec!["decide", "--field", "Q"];
        args.extend(coeffs);
        let (_, d) = run(&args);
        let cert = d.to_string();
        let mut check = vec!["check", "--field", "Q", "--certificate", &cert];
        check.extend(coeffs);
        let (code, v) = run(&check);
        assert_eq!((code, &v["valid"]), (0, &json!(true)), "{coeffs:?}: {v}");

        let mut bad = d["certificate"].clone();
        match bad["kind"].as_str().unwrap() {
            "isotropic" => bad["witness"][0] = json!("12345"),
            _ => bad["place"] = json!("3"),
        }
        let bad = bad.to_string();
        let mut check = vec!["check", "--field", "Q", "--certificate", &bad];
        check.extend(coeffs);
        let (_, v) = run(&check);
        assert_eq!(v["valid"], json!(false), "{coeffs:?} accepted {bad}");
    }
}

#[test]
fn exit_codes() {
    assert_eq!(run(&["decide", "--field", "Q", "1", "x"]).0, 2);
    assert_eq!(run(&["decide", "--field", "F4(t)", "1"]).0, 2);
    assert_eq!(run(&["frobnicate"]).0, 2);
    let (code, v) = run(&["eval", "--field", "Q", "(exists (x) (poly \"x^2 - 2\"))"]);
    assert_eq!(code, 3);
    assert_eq!(v["result"], json!("undetermined"));
}

#[test]
fn eval_checks_and_searches() {
    let f = "(params (a) (exists (x) (poly \"x^2 - a\")))";
    let (code, v) = run(&["eval", "--field", "Q", f, "a=9", "x=3"]);
    assert_eq!((code, &v["value"]), (0, &json!(true)));
    let (code, v) = run(&["eval", "--field", "Q", f, "a=9"]);
    assert_eq!(code, 0);
    assert_eq!(v["value"], json!(true));
    let x = v["witness"]["x"].as_str().unwrap();
    assert!(x == "3" || x == "-3");
}

#[test]
fn emit_then_eval() {
    let (code, v) = run(&["emit", "--field", "Q", "1", "1", "1", "7"]);
    assert_eq!(code, 0);
    let f = v["formula"].as_str().unwrap().to_string();
    let (code, v) = run(&["eval", "--field", "Q", &f]);
    assert_eq!((code, &v["value"]), (0, &json!(true)));
    let (code, v) = run(&[
        "emit",
        "--field",
        "Q",
        "--kind",
        "isotropy",
        "--flatten",
        "1",
        "-1",
    ]);
    assert_eq!(code, 0);
    assert!(v["formula"]
        .as_str()
        .unwrap()
        .starts_with("(exists (x1 x2 y) (poly"));
}

#[test]
fn constants_file_and_verification() {
    let (code, shown) = run(&["constants", "show", "--field", "Q"]);
    assert_eq!(code, 0);
    assert_subset(&shown, &json!({"a": "17", "b": "41"}));
    let (code, v) = run(&["constants", "verify", "--field", "F3(t)", "--bound", "100"]);
    assert_eq!((code, &v["passed"]), (0, &json!(true)), "{v}");

    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("q.toml");
    std::fs::write(
        &path,
        "field = \"Q\"\na = \"17\"\nb = \"41\"\nmodulus = \"2^3*17*41*inf\"\n",
    )
    .unwrap();
    let p = path.to_str().unwrap();
    let (code, v) = run(&["constants", "show", "--field", "Q", "--constants", p]);
    assert_eq!((code, &v["b"]), (0, &json!("41")));
    let (code, _) = run(&["constants", "show", "--field", "F3(t)", "--constants", p]);
    assert_eq!(code, 2);
}

#[test]
fn output_is_reproducible() {
    let args = ["decide", "--field", "F5(t)", "t", "2", "t+1", "3"];
    assert_eq!(run(&args), run(&args));
}

#[test]
fn selftest_passes() {
    let (code, v) = run(&["selftest"]);
    assert_eq!((code, &v["passed"]), (0, &json!(true)), "{v}");
}
