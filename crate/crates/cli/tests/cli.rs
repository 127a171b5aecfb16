use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_derivkit"))
        .args(args)
        .env_remove("DERIVKIT_SEED")
        .output()
        .expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let o = run(args);
    assert!(o.status.success(), "{args:?}: {}", String::from_utf8_lossy(&o.stderr));
    String::from_utf8(o.stdout).unwrap()
}

fn code(args: &[&str]) -> i32 {
    run(args).status.code().expect("exited")
}

fn json(args: &[&str]) -> Value {
    serde_json::from_str(&stdout(args)).unwrap()
}

#[test]
fn coeffs_rows() {
    let csv = stdout(&["coeffs", "--max-m", "5", "--format", "csv"]);
    assert!(csv.lines().any(|l| l == "5,2,90,,"));
    let csv = stdout(&["coeffs", "--max-m", "9", "--compare-paper-form"]);
    assert_eq!(csv.lines().next(), Some("m,k,a,paper,agrees"));
    assert!(csv.lines().any(|l| l == "8,1,11025,33075/2,false"));
    assert!(csv.lines().any(|l| l == "5,2,90,90,true"));
    let v = json(&["coeffs", "--max-m", "2", "--format", "json"]);
    let rows: Vec<(u64, u64, String)> = v["rows"]
        .as_array()
        .unwrap()
        .iter()
        .map(|r| (r["m"].as_u64().unwrap(), r["k"].as_u64().unwrap(), r["a"]["num"].as_str().unwrap().to_string()))
        .collect();
    assert_eq!(rows, vec![(1, 0, "1".into()), (2, 1, "1".into())]);
    assert_eq!(code(&["coeffs", "--max-m", "1"]), 2);
    assert_eq!(code(&["coeffs", "--format", "xml"]), 2);
}

#[test]
fn bell_commands() {
    assert_eq!(stdout(&["bell", "--n", "4", "--k", "2"]).trim(), "4*x1*x3 + 3*x2^2");
    assert_eq!(stdout(&["bell", "--n", "8", "--k", "4", "--special"]).trim(), "105");
    assert_eq!(stdout(&["bell", "--n", "5", "--k", "2", "--args", "1,1,1,1"]).trim(), "15");
    assert_eq!(stdout(&["bell", "--n", "3", "--k", "1", "--args", "-1/2,2,3"]).trim(), "3");
    let v = json(&["bell", "--n", "6", "--k", "4", "--special", "--format", "json"]);
    assert_eq!(v["x_power"], 2);
    assert_eq!(v["coefficient"]["num"], "45");
    assert_eq!(code(&["bell", "--n", "2", "--k", "3"]), 2);
    assert_eq!(code(&["bell", "--n", "3", "--k", "2", "--args", "1,x"]), 2);
}

#[test]
fn derive_examples_and_exit_codes() {
    let s = stdout(&["derive", "--function", "arcsin", "--order", "4"]);
    assert_eq!(s.trim(), "9*x*(1-x^2)^(-5/2) + 15*x^3*(1-x^2)^(-7/2)");
    let v = json(&["derive", "--function", "arcsin", "--order", "4", "--format", "json"]);
    let terms = v["terms"].as_array().unwrap();
    assert_eq!(terms.len(), 2);
    assert_eq!(terms[0]["coefficient"]["num"], "9");
    assert_eq!(terms[0]["factors"][1]["exponent"], serde_json::json!({"den": "2", "num": "-5"}));
    assert_eq!(stdout(&["derive", "--function", "exp_sq_plus", "--order", "2", "--at", "0"]).trim(), "2");
    assert_eq!(stdout(&["derive", "--function", "log_ratio", "--order", "1", "--at", "1/3"]).trim(), "9/4");
    assert_eq!(
        stdout(&["derive", "--function", "exp_sq_plus", "--order", "2", "--at", "1/2"]).trim(),
        "3*exp(1/4)"
    );
    assert_eq!(code(&["derive", "--function", "arcsin", "--order", "3", "--at", "2"]), 3);
    assert_eq!(code(&["derive", "--function", "exp_recip_plus", "--order", "3", "--at", "0"]), 3);
    assert_eq!(code(&["derive", "--function", "sinh", "--order", "3"]), 2);
    assert_eq!(code(&["derive", "--function", "pow_1px2", "--order", "3", "--alpha", "2"]), 2);
    assert_eq!(code(&["derive", "--function", "pow_1px2", "--order", "3", "--alpha", "0"]), 2);
    assert_eq!(code(&["derive", "--function", "pow_1px2", "--order", "3"]), 2);
    assert_eq!(code(&["derive", "--function", "tan", "--order", "3", "--alpha", "1/2"]), 2);
    assert_eq!(code(&["derive", "--function", "tan", "--order", "2", "--at", "one"]), 2);
}

#[test]
fn numeric_rendering() {
    let s = stdout(&["derive", "--function", "exp_sq_plus", "--order", "2", "--at", "1/2", "--numeric", "128"]);
    let mut lines = s.lines();
    assert_eq!(lines.next(), Some("3*exp(1/4)"));
    let x: f64 = lines.next().unwrap().parse().unwrap();
    assert!((x - 3.0 * 0.25f64.exp()).abs() < 1e-12);
}

/// Float value of an atom string from the JSON term list.
fn atom(name: &str, x: f64) -> f64 {
    let inner = |s: &str| -> f64 {
        match s {
            "x" => x,
            "-x" => -x,
            "x^2" => x * x,
            "-x^2" => -x * x,
            "1/t" => 1.0 / x,
            "-1/t" => -1.0 / x,
            "exp(x)" => x.exp(),
            "exp(-x)" => (-x).exp(),
            _ => {
                let j: f64 = s.strip_suffix('x').unwrap().parse().unwrap();
                j * x
            }
        }
    };
    let call = |f: &str| name.strip_prefix(f).and_then(|r| r.strip_prefix('(')).and_then(|r| r.strip_suffix(')'));
    match name {
        "x" | "t" => x,
        "(1-x^2)" => 1.0 - x * x,
        "(1+x^2)" => 1.0 + x * x,
        "(x+1)" => x + 1.0,
        "(x-1)" => x - 1.0,
        "(1-x)" => 1.0 - x,
        "arcsin(x)" => x.asin(),
        "arccos(x)" => x.acos(),
        "arctan(x)" => x.atan(),
        _ => {
            if let Some(a) = call("sin") {
                inner(a).sin()
            } else if let Some(a) = call("cos") {
                inner(a).cos()
            } else if let Some(a) = call("exp") {
                inner(a).exp()
            } else {
                panic!("unexpected atom {name}")
            }
        }
    }
}

fn rational(v: &Value) -> f64 {
    let n: f64 = v["num"].as_str().unwrap().parse().unwrap();
    let d: f64 = v["den"].as_str().unwrap().parse().unwrap();
    n / d
}

#[test]
fn evaluation_matches_term_list() {
    let cases: &[(&str, &[&str], &str)] = &[
        ("arcsin", &[], "1/3"),
        ("arccos", &[], "-1/2"),
        ("invsqrt1mx2", &[], "2/5"),
        ("tan", &[], "1/5"),
        ("cot", &[], "3/4"),
        ("arctan", &[], "2"),
        ("exp_recip_plus", &[], "2"),
        ("exp_recip_minus", &[], "-3/2"),
        ("exp_sq_plus", &[], "1/2"),
        ("exp_sq_minus", &[], "-1/3"),
        ("sin_sq", &[], "1/2"),
        ("cos_sq", &[], "2/3"),
        ("log_ratio", &[], "1/3"),
        ("log_1px2", &[], "3/2"),
        ("log_1mx2", &[], "-1/4"),
        ("pow_1px2", &["--alpha", "-3/2"], "1/2"),
        ("pow_1mx2", &["--alpha", "1/3"], "1/3"),
        ("sin_exp_plus", &[], "1/3"),
        ("sin_exp_minus", &[], "0"),
        ("cos_exp_plus", &[], "-1/2"),
        ("cos_exp_minus", &[], "1/4"),
    ];
    for (name, extra, at) in cases {
        for order in [1u32, 4, 7] {
            let o = order.to_string();
            let mut base = vec!["derive", "--function", name, "--order", &o, "--format", "json"];
            base.extend_from_slice(extra);
            let terms = json(&base);
            let x: f64 = {
                let (n, d) = at.split_once('/').unwrap_or((at, "1"));
                n.parse::<f64>().unwrap() / d.parse::<f64>().unwrap()
            };
            let mut want = 0.0;
            for t in terms["terms"].as_array().unwrap() {
                let mut v = rational(&t["coefficient"]);
                for f in t["factors"].as_array().unwrap() {
                    v *= atom(f["atom"].as_str().unwrap(), x).powf(rational(&f["exponent"]));
                }
                want += v;
            }
            let mut at_args = base.clone();
            at_args.extend_from_slice(&["--at", at, "--numeric", "128"]);
            let v = json(&at_args);
            let got: f64 = v["numeric"]["value"].as_str().unwrap().parse().unwrap();
            let tol = 1e-9 * want.abs().max(1.0);
            assert!((got - want).abs() < tol, "{name} order {order} at {at}: {got} vs {want}");
        }
    }
}

#[test]
fn verify_reports() {
    let v = json(&["verify", "--suite", "coeffs", "--max-order", "40"]);
    assert!(v["summary"]["known"].as_u64().unwrap() >= 1);
    assert_eq!(v["summary"]["fail"], 0);
    assert_eq!(v["seed"], 1729);
    let v = json(&["verify", "--suite", "bell", "--max-order", "12"]);
    assert_eq!(v["summary"]["fail"], 0);

    let text = stdout(&["verify", "--suite", "all", "--max-order", "10", "--format", "json"]);
    let v: Value = serde_json::from_str(&text).unwrap();
    assert_eq!(serde_json::to_string(&v).unwrap(), text.trim_end());
    let keys: Vec<&String> = v.as_object().unwrap().keys().collect();
    assert_eq!(keys, ["results", "seed", "summary"]);
    for r in v["results"].as_array().unwrap() {
        let o = r.as_object().unwrap();
        let keys: Vec<&String> = o.keys().collect();
        assert_eq!(keys, ["check_id", "lhs", "location", "rhs", "status"]);
        assert!(["pass", "known-discrepancy"].contains(&o["status"].as_str().unwrap()));
    }
    let mut counts = [0u64; 3];
    for r in v["results"].as_array().unwrap() {
        counts[usize::from(r["status"] == "known-discrepancy")] += 1;
    }
    assert_eq!(v["summary"]["pass"], counts[0]);
    assert_eq!(v["summary"]["known"], counts[1]);

    let text = stdout(&["verify", "--suite", "stirling", "--max-order", "6", "--format", "text"]);
    assert!(text.starts_with("seed 1729\n"));
    assert_eq!(code(&["verify", "--suite", "everything"]), 2);
    assert_eq!(code(&["verify", "--max-order", "0"]), 2);
}

#[test]
fn seed_flag_and_environment() {
    let a = stdout(&["verify", "--suite", "bell", "--max-order", "6", "--seed", "99"]);
    let b = Command::new(env!("CARGO_BIN_EXE_derivkit"))
        .args(["verify", "--suite", "bell", "--max-order", "6"])
        .env("DERIVKIT_SEED", "99")
        .output()
        .unwrap();
    assert_eq!(a.as_bytes(), b.stdout.as_slice());
    let v: Value = serde_json::from_str(&a).unwrap();
    assert_eq!(v["seed"], 99);
}
