use std::process::{Command, Output};

fn moduli(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_moduli"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn json(out: &Output) -> serde_json::Value {
    serde_json::from_slice(&out.stdout).expect("valid JSON")
}

#[test]
fn betti_example() {
    let out = moduli(&["betti", "--genus", "0", "--points", "5", "--method", "all"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["coefficients"], serde_json::json!([1, 0, 6, 0, 1]));
    assert_eq!(v["methods_agree"], true);
}

#[test]
fn even_points_is_a_usage_error() {
    let out = moduli(&["betti", "--points", "4"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("n must be odd"));
    assert!(out.stdout.is_empty());
}

#[test]
fn excluded_and_off_degree_inputs() {
    assert_eq!(moduli(&["betti", "--points", "1"]).status.code(), Some(2));
    assert_eq!(
        moduli(&["pairing", "--points", "5", "--r", "1", "--s", "0"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        moduli(&["hilbert", "--points", "11"]).status.code(),
        Some(2)
    );
}

#[test]
fn base_relation() {
    let out = moduli(&["relations", "--points", "1"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["relation"]["display"], "1");
    assert_eq!(v["methods_agree"], true);
}

#[test]
fn rationals_are_strings() {
    let v = json(&moduli(&["volume", "--points", "5"]));
    assert_eq!(v["volume"], "1/2");
    let v = json(&moduli(&[
        "relations",
        "--points",
        "9",
        "--method",
        "hankel",
    ]));
    assert_eq!(v["relation"]["display"], "α^4 - 14α^2β + 9β^2");
    assert!(v["relation"]["terms"]
        .as_array()
        .unwrap()
        .iter()
        .all(|t| t["coeff"].is_string()));
    let v = json(&moduli(&["euler", "--max", "10"]));
    assert_eq!(v["euler"][10], "-50521");
}

#[test]
fn output_is_deterministic_and_round_trips() {
    let runs: &[&[&str]] = &[
        &["betti", "--genus", "2", "--points", "3"],
        &["relations", "--points", "7", "--full"],
        &["hilbert", "--points", "7"],
        &["orthopoly", "--depth", "4"],
        &["euler", "--max", "12"],
        &["verify"],
    ];
    for args in runs {
        let a = moduli(args);
        let b = moduli(args);
        assert_eq!(a.status.code(), Some(0), "{args:?}");
        assert_eq!(a.stdout, b.stdout, "{args:?}");
        let text = String::from_utf8(a.stdout).unwrap();
        let again = serde_json::to_string_pretty(
            &serde_json::from_str::<serde_json::Value>(&text).unwrap(),
        )
        .unwrap();
        assert_eq!(again + "\n", text, "{args:?}");
    }
}

#[test]
fn table_format() {
    let out = moduli(&[
        "--format", "table", "betti", "--points", "5", "--method", "closed",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text
        .lines()
        .any(|l| l.starts_with("coefficients") && l.ends_with("1 0 6 0 1")));
}

#[test]
fn corrupted_table_names_the_failing_check() {
    let out = moduli(&["verify", "--corrupt-euler", "4"]);
    assert_eq!(out.status.code(), Some(1));
    let v = json(&out);
    assert_eq!(v["overall"], "fail");
    assert!(String::from_utf8_lossy(&out.stderr).contains("first failing check: "));
}
