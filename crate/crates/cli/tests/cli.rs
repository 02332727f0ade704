use std::process::{Command, Output};

fn ptc(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ptc"))
        .args(args)
        .output()
        .expect("ptc runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn json(out: &Output) -> serde_json::Value {
    serde_json::from_slice(&out.stdout).expect("valid JSON output")
}

const P202: [&str; 6] = ["--n", "2", "--s", "0", "--k", "2"];
const P311: [&str; 6] = ["--n", "3", "--s", "1", "--k", "1"];

fn with(params: &[&str], args: &[&str]) -> Output {
    let all: Vec<&str> = args.iter().chain(params).copied().collect();
    ptc(&all)
}

#[test]
fn info_reports_order_and_basis_size() {
    let out = with(&P202, &["info", "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["d"], 2);
    assert_eq!(v["basis_size"], 4);
    assert_eq!(v["q"], "zeta_4^2");

    let v = json(&ptc(&["info", "--n", "2", "--s", "1", "--k", "1", "--format", "json"]));
    assert_eq!(v["d"], 4);
    assert_eq!(v["basis_size"], 8);
    assert!(v["green_ring"].as_str().unwrap().contains("x^2 - 1"));

    let text = stdout(&with(&P202, &["info"]));
    assert!(text.contains("d = 2") && text.contains("basis size = 4"));
}

#[test]
fn invalid_parameters_exit_with_usage_code() {
    assert_eq!(ptc(&["info", "--n", "2", "--s", "1", "--k", "2"]).status.code(), Some(2));
    assert_eq!(ptc(&["info", "--n", "1", "--s", "0", "--k", "0"]).status.code(), Some(2));
    assert_eq!(ptc(&["info", "--n", "2"]).status.code(), Some(2));
    assert_eq!(ptc(&["verify", "--level", "quick", "--n", "3", "--s", "5", "--k", "2"]).status.code(), Some(2));
    assert_eq!(ptc(&["frobnicate"]).status.code(), Some(2));
}

#[test]
fn cg_examples() {
    assert_eq!(stdout(&with(&P202, &["cg", "0", "1", "0", "1"])), "V(0,1) ⊕ V(1,1)\n");
    assert_eq!(stdout(&with(&P202, &["cg", "0", "0", "1", "0"])), "V(1,0)\n");

    let out = ptc(&["cg", "0", "1", "0", "2", "--oracle", "--n", "3", "--s", "0", "--k", "3"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("formula: V(0,2) ⊕ V(1,2)"), "{text}");
    assert!(text.ends_with("MATCH\n"));

    assert_eq!(with(&P202, &["cg", "0", "2", "0", "0"]).status.code(), Some(2));
    assert_eq!(with(&P202, &["cg", "2", "0", "0", "0"]).status.code(), Some(2));
}

#[test]
fn cg_oracle_matches_everywhere_for_one_params_set() {
    for (i, e, j, f) in [(0, 3, 1, 4), (2, 8, 1, 8), (1, 5, 2, 0), (0, 4, 0, 4)] {
        let args = [i, e, j, f].map(|x: usize| x.to_string());
        let mut all: Vec<&str> = vec!["cg", "--oracle", "--format", "json"];
        all.extend(args.iter().map(String::as_str));
        let v = json(&with(&P311, &all));
        assert_eq!(v["verdict"], "MATCH");
        assert_eq!(v["decomposition"], v["oracle"]);
    }
}

#[test]
fn table_rows_are_ordered_and_conserve_dimension() {
    let out = with(&P202, &["table"]);
    assert_eq!(out.status.code(), Some(0));
    let mut rdr = csv::Reader::from_reader(out.stdout.as_slice());
    assert_eq!(rdr.headers().unwrap(), vec!["i", "e", "j", "f", "summands"]);
    let rows: Vec<Vec<String>> = rdr
        .records()
        .map(|r| r.unwrap().iter().map(str::to_string).collect())
        .collect();
    assert_eq!(rows.len(), 16);
    let keys: Vec<[usize; 4]> = rows
        .iter()
        .map(|r| [0, 1, 2, 3].map(|c| r[c].parse().unwrap()))
        .collect();
    assert!(keys.windows(2).all(|w| w[0] < w[1]));
    let mut by_key = std::collections::BTreeMap::new();
    for (k, r) in keys.iter().zip(&rows) {
        let dim: usize = r[4]
            .split(';')
            .map(|tok| {
                let (class, mult) = tok.split_once(':').unwrap();
                let (_, e) = class.split_once(',').unwrap();
                (e.parse::<usize>().unwrap() + 1) * mult.parse::<usize>().unwrap()
            })
            .sum();
        assert_eq!(dim, (k[1] + 1) * (k[3] + 1));
        by_key.insert(*k, r[4].clone());
    }
    for ([i, e, j, f], summands) in &by_key {
        assert_eq!(&by_key[&[*j, *f, *i, *e]], summands);
    }
}

#[test]
fn output_is_deterministic_and_strategy_independent() {
    let a = with(&P311, &["table", "--format", "json"]);
    let b = with(&P311, &["table", "--format", "json", "--sequential"]);
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(a.stdout, with(&P311, &["table", "--format", "json"]).stdout);
}

#[test]
fn out_flag_writes_file() {
    let path = std::env::temp_dir().join(format!("ptc-out-{}.csv", std::process::id()));
    let out = with(&P202, &["table", "--out", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let written = std::fs::read(&path).unwrap();
    std::fs::remove_file(&path).unwrap();
    assert_eq!(written, with(&P202, &["table"]).stdout);
}

#[test]
fn pathmul_reports_product() {
    let out = with(&P202, &["pathmul", "0", "1", "1", "1", "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["terms"], serde_json::json!([]));
    let text = stdout(&ptc(&["pathmul", "0", "1", "1", "1", "--n", "2", "--s", "1", "--k", "1"]));
    assert!(text.starts_with("p_0^1 * p_1^1 = ") && text.contains("p_1^2"), "{text}");
}

#[test]
fn green_simple_generator_has_order_n() {
    let simple = r#"{"terms":[{"i":1,"l":0,"mult":1}]}"#;
    let v = json(&with(&P311, &["green", "mul", simple, simple, simple]));
    assert_eq!(v, serde_json::json!({"terms":[{"i":0,"l":0,"mult":1}]}));
}

#[test]
fn green_normal_form_of_relations_is_zero() {
    let zero = |v: &serde_json::Value| {
        v["coeffs"]
            .as_array()
            .unwrap()
            .iter()
            .flat_map(|r| r.as_array().unwrap())
            .all(|c| c == 0)
    };
    assert!(zero(&json(&with(&P311, &["green", "normal-form", "x^n-1"]))));
    assert!(zero(&json(&with(&P202, &["green", "normal-form", "(y-x-1)*y"]))));
    let poly = r#"{"terms":[{"x":3,"y":0,"coeff":1},{"x":0,"y":0,"coeff":-1}]}"#;
    assert!(zero(&json(&with(&P311, &["green", "normal-form", poly]))));
}

#[test]
fn green_round_trip_through_polynomials() {
    let u = r#"{"terms":[{"i":0,"l":2,"mult":3},{"i":1,"l":5,"mult":4},{"i":2,"l":8,"mult":-1}]}"#;
    let nf = with(&P311, &["green", "to-poly", u]);
    assert_eq!(nf.status.code(), Some(0));
    let nf = stdout(&nf);
    let back = json(&with(&P311, &["green", "from-poly", nf.trim()]));
    assert_eq!(back, serde_json::from_str::<serde_json::Value>(u).unwrap());

    let path = std::env::temp_dir().join(format!("ptc-nf-{}.json", std::process::id()));
    std::fs::write(&path, &nf).unwrap();
    let arg = format!("@{}", path.display());
    let from_file = json(&with(&P311, &["green", "from-poly", &arg]));
    std::fs::remove_file(&path).unwrap();
    assert_eq!(from_file, back);
}

#[test]
fn green_rejects_malformed_input() {
    assert_eq!(with(&P311, &["green", "mul", "{bad"]).status.code(), Some(2));
    let out_of_range = r#"{"terms":[{"i":5,"l":0,"mult":1}]}"#;
    assert_eq!(with(&P311, &["green", "mul", out_of_range]).status.code(), Some(2));
    assert_eq!(with(&P311, &["green", "normal-form", "x^^2"]).status.code(), Some(2));
    assert_eq!(with(&P311, &["green", "from-poly", r#"{"n":2,"d":2,"coeffs":[[0,0],[0,0]]}"#]).status.code(), Some(2));
}

#[test]
fn verify_quick_passes() {
    let out = with(&P202, &["verify", "--level", "quick"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.ends_with("ALL PASS\n"));
    for suite in ["oracle", "identities", "green-ring", "ring-laws", "comodule", "counting"] {
        assert!(text.lines().any(|l| l.contains("PASS") && l.contains(suite)), "{suite}");
    }
    let v = json(&with(&P311, &["verify", "--level", "quick", "--format", "json"]));
    assert_eq!(v["level"], "quick");
}
