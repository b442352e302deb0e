use std::process::{Command, Output};

use serde_json::Value;

fn howe(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_howe"))
        .args(args)
        .env_remove("HOWE_MAX_RANK")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).expect("utf-8")
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).expect("JSON on stdout")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exited normally")
}

#[test]
fn enumerate_examples() {
    let o = howe(&["enumerate", "--rank", "1", "--defect", "1"]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout(&o), "[1|]\n[1,0|1]\n");

    let o = howe(&["enumerate", "--special", "--rank", "1", "--defect", "0"]);
    assert_eq!(stdout(&o), "[1|0]\n");

    let o = howe(&["enumerate", "--rank", "0", "--defect", "1"]);
    assert_eq!(stdout(&o), "[0|]\n");

    let o = howe(&["enumerate", "--rank", "2", "--defect", "-1", "--json"]);
    assert_eq!(code(&o), 0);
    let listed: Vec<String> = serde_json::from_value(json(&o)).unwrap();
    assert!(!listed.is_empty());
}

#[test]
fn enumerate_rejects_bad_arguments() {
    assert_eq!(code(&howe(&["enumerate", "--rank", "x", "--defect", "1"])), 2);
    assert_eq!(code(&howe(&["enumerate", "--special", "--rank", "1", "--defect", "2"])), 3);
}

#[test]
fn relation_examples() {
    let o = howe(&["relation", "[1|]", "[1|0]", "D"]);
    assert_eq!(code(&o), 0);
    assert_eq!(json(&o)["pairs"].as_array().unwrap().len(), 2);

    let o = howe(&["relation", "[1|]", "[1|0]", "B", "-"]);
    assert_eq!(code(&o), 0);
    assert!(json(&o)["pairs"].as_array().unwrap().is_empty());

    let o = howe(&["relation", "[1|]", "[2,1|1,0]", "D"]);
    assert_eq!(code(&o), 0);
    assert!(json(&o)["pairs"].as_array().unwrap().is_empty());

    let o = howe(&["relation", "[2,0|1]", "[2|1]", "bar", "+", "--cross-check"]);
    assert_eq!(code(&o), 0);
    let v = json(&o);
    assert!(v["cross_check"]["mismatches"].as_array().unwrap().is_empty());
    assert!(v["cross_check"]["checked"].as_u64().unwrap() > 0);
}

#[test]
fn relation_error_codes() {
    assert_eq!(code(&howe(&["relation", "[1|", "[1|0]", "D"])), 2);
    assert_eq!(code(&howe(&["relation", "[1|]", "[1|0]", "Q"])), 2);
    // defects swapped
    assert_eq!(code(&howe(&["relation", "[1|0]", "[1|]", "D"])), 3);
    // not special
    assert_eq!(code(&howe(&["relation", "[1,0|3]", "[1|0]", "D"])), 3);
}

#[test]
fn cores_examples() {
    let o = howe(&["cores", "[1|]", "[1|0]"]);
    assert_eq!(code(&o), 0);
    let v = json(&o);
    assert_eq!(v["psi0_prime"], serde_json::json!(["(1|0)"]));
    assert_eq!(v["one_to_one"], Value::Bool(false));

    let v = json(&howe(&["cores", "[1,0|1]", "[1|0]"]));
    assert!(v["psi0"].as_array().unwrap().is_empty());
    assert!(v["psi0_prime"].as_array().unwrap().is_empty());
    assert_eq!(v["one_to_one"], Value::Bool(true));

    let o = howe(&["cores", "[1|]", "[1|1]"]);
    assert_eq!(code(&o), 0);
    assert_eq!(json(&o)["D_nonempty"], Value::Bool(true));
}

#[test]
fn verify_examples() {
    for args in [
        &["verify", "--nmax", "1", "--npmax", "1"][..],
        &["verify", "--nmax", "3", "--npmax", "3", "--amr"],
        &["verify", "--nmax", "0", "--npmax", "0"],
    ] {
        let o = howe(args);
        assert_eq!(code(&o), 0, "{args:?}");
        let v = json(&o);
        assert!(v["failures"].as_array().unwrap().is_empty());
        assert!(v["pairs_checked"].as_u64().unwrap() > 0);
    }
    let v = json(&howe(&["verify", "--nmax", "2", "--npmax", "2", "--signs", "-"]));
    assert!(v["verdicts"].as_array().unwrap().iter().all(|x| x["sign"] == "-"));
}

#[test]
fn verify_envelope() {
    assert_eq!(code(&howe(&["verify", "--nmax", "6", "--npmax", "0"])), 3);
    let o = Command::new(env!("CARGO_BIN_EXE_howe"))
        .args(["verify", "--nmax", "6", "--npmax", "0", "--signs", "+"])
        .env("HOWE_MAX_RANK", "6")
        .output()
        .unwrap();
    assert_eq!(code(&o), 0);
    assert_eq!(code(&howe(&["verify", "--signs", "+,x"])), 2);
}

#[test]
fn proptest_suites() {
    let o = howe(&["proptest", "all", "--seed", "7", "--cases", "8"]);
    assert_eq!(code(&o), 0);
    assert_eq!(json(&o)["passed"], Value::Bool(true));

    let v = json(&howe(&["proptest", "relations", "--seed", "1", "--cases", "8"]));
    let names: Vec<&str> = v["checks"].as_array().unwrap().iter().map(|c| c["name"].as_str().unwrap()).collect();
    assert!(names.iter().any(|n| n.contains("transpose flip")), "{names:?}");

    let v = json(&howe(&["proptest", "uniform", "--seed", "1", "--cases", "8"]));
    let names: Vec<&str> = v["checks"].as_array().unwrap().iter().map(|c| c["name"].as_str().unwrap()).collect();
    assert!(names.iter().any(|n| n.contains("norms")));
    assert!(names.iter().any(|n| n.contains("sign rule")));

    assert_eq!(code(&howe(&["proptest", "nonsense"])), 2);
}

#[test]
fn output_is_deterministic() {
    for args in [
        &["verify", "--nmax", "3", "--npmax", "3", "--amr"][..],
        &["verify", "--nmax", "3", "--npmax", "3", "--sequential"],
        &["proptest", "all", "--seed", "3", "--cases", "8"],
        &["relation", "[3,1,0|2]", "[2,1|1]", "bar", "-"],
    ] {
        let a = howe(args);
        let b = howe(args);
        assert_eq!(a.stdout, b.stdout, "{args:?}");
    }
    let par = howe(&["verify", "--nmax", "3", "--npmax", "3"]);
    let seq = howe(&["verify", "--nmax", "3", "--npmax", "3", "--sequential"]);
    assert_eq!(par.stdout, seq.stdout);
}

#[test]
fn json_literals_round_trip() {
    let v = json(&howe(&["relation", "[2,0|1]", "[2|1]", "bar", "+"]));
    for pair in v["pairs"].as_array().unwrap() {
        let (l, r) = (pair[0].as_str().unwrap(), pair[1].as_str().unwrap());
        let left = l.parse::<howe_core::symbol::Symbol>().unwrap();
        let right = r.parse::<howe_core::symbol::Symbol>().unwrap();
        assert_eq!(left.to_string(), l);
        assert_eq!(right.to_string(), r);
    }
}
