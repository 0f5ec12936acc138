use std::process::{Command, Output};

use serde_json::Value;

fn stiefel(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_stiefel-mw")).args(args).output().expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = stiefel(args);
    assert_eq!(out.status.code(), Some(0), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

#[test]
fn basis_plain() {
    let text = stdout(&["basis", "5", "2", "--format=plain"]);
    let rows: Vec<&str> = text.lines().skip(1).collect();
    assert_eq!(rows.len(), 4);
    assert!(rows[3].ends_with("β_{4,3} (16,9) MW"), "{text}");
}

#[test]
fn basis_json_records() {
    let v: Value = serde_json::from_str(&stdout(&["basis", "7", "4", "--format=json"])).unwrap();
    let rows = v["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 16);
    let got: Vec<(String, i64, i64)> = rows
        .iter()
        .map(|r| (r["ring"].as_str().unwrap().to_string(), r["p"].as_i64().unwrap(), r["q"].as_i64().unwrap()))
        .collect();
    let expected = [
        ("MW", 0, 0),
        ("etaM", 7, 4),
        ("M", 9, 5),
        ("etaM", 11, 6),
        ("M", 13, 7),
        ("MW", 16, 9),
        ("etaM", 18, 10),
        ("M", 20, 11),
        ("etaM", 20, 11),
        ("M", 22, 12),
        ("MW", 24, 13),
        ("etaM", 27, 15),
        ("M", 29, 16),
        ("etaM", 31, 17),
        ("M", 33, 18),
        ("MW", 40, 22),
    ];
    let expected: Vec<(String, i64, i64)> = expected.iter().map(|&(k, p, q)| (k.to_string(), p, q)).collect();
    assert_eq!(got, expected);
    assert_eq!(rows[5]["label"], "β_{4,3}");
    assert_eq!(rows[15]["label"], "β_{6,5}β_{4,3}");
}

#[test]
fn basis_domain_guard() {
    let out = stiefel(&["basis", "3", "3"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("1 <= k <= n-1"));
}

#[test]
fn groups_single_cells() {
    assert_eq!(stdout(&["groups", "7", "3", "--p", "8", "--q", "4"]), "K^MW_{-1}(K)\n");
    assert_eq!(stdout(&["groups", "5", "2", "--p", "0", "--q", "0"]), "K^MW_0(K)\n");
    assert_eq!(stdout(&["groups", "5", "2", "--p", "7", "--q", "4"]), "2K^M_0(K)\n");
    assert_eq!(stdout(&["groups", "5", "2", "--p", "9", "--q", "5"]), "Z\n");
    assert_eq!(stdout(&["groups", "7", "4", "--p", "6", "--q", "3"]), "0\n");
}

#[test]
fn groups_grid_suppresses_zero_rows() {
    let sparse = stdout(&["groups", "5", "2", "--p-range", "0..9", "--q-range", "0..5"]);
    let full = stdout(&["groups", "5", "2", "--p-range", "0..9", "--q-range", "0..5", "--all"]);
    assert_eq!(full.lines().count(), 1 + 10 * 6);
    assert!(sparse.lines().count() < full.lines().count());
    assert!(sparse.lines().skip(1).all(|l| !l.ends_with(" 0")), "{sparse}");
}

#[test]
fn groups_flags_change_answers() {
    let default = stdout(&["groups", "5", "2", "--p", "9", "--q", "5"]);
    let relaxed = stdout(&["groups", "5", "2", "--p", "9", "--q", "5", "--no-mw-subdiagonal-vanishing"]);
    assert_eq!(default, "Z\n");
    assert_eq!(relaxed, "Z ⊕ H_MW^{-7,-4}(K)\n");
    let json: Value =
        serde_json::from_str(&stdout(&["groups", "5", "2", "--p", "9", "--q", "5", "--format", "json"])).unwrap();
    assert_eq!(json["flags"]["coconnected"], true);
    assert_eq!(json["cells"][0]["group"]["type"], "Z");
}

#[test]
fn euler_reports() {
    assert_eq!(stdout(&["euler", "7", "3"]), "e(f_{7,3}) = eta*beta_{4} in degree (8,4)\n");
    assert_eq!(stdout(&["euler", "7", "4"]), "e(f_{7,4}) = 0\n");
    assert_eq!(stdout(&["euler", "6", "1"]), "e(f_{6,1}) = 0\n");
    let v: Value = serde_json::from_str(&stdout(&["euler", "7", "3", "--format", "json"])).unwrap();
    assert_eq!(v, serde_json::json!({"n": 7, "k": 3, "zero": false, "expr": "eta*beta_{4}", "degree": [8, 4]}));
    let v: Value = serde_json::from_str(&stdout(&["euler", "7", "4", "--format", "json"])).unwrap();
    assert_eq!(v, serde_json::json!({"n": 7, "k": 4, "zero": true}));
}

#[test]
fn crosscheck_derived_all_true() {
    let v: Value =
        serde_json::from_str(&stdout(&["crosscheck", "--n-max", "16", "--cone-shift", "derived", "--format", "json"]))
            .unwrap();
    assert_eq!(v["pairs"], 120);
    assert_eq!(v["a_eq_b"], true);
    assert_eq!(v["runs"][0]["all_a_eq_c"], true);
    assert_eq!(v["runs"][0]["conventions"]["cone_shift_delta"], -1);
    assert_eq!(v["version"], env!("CARGO_PKG_VERSION"));
}

#[test]
fn crosscheck_zero_shift_reports_but_exits_zero() {
    let out = stiefel(&["crosscheck", "--n-max", "5", "--cone-shift", "paper", "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    let run = &v["runs"][0];
    assert_eq!(run["all_a_eq_c"], false);
    let m = run["a_c_mismatches"]
        .as_array()
        .unwrap()
        .iter()
        .find(|m| m["n"] == 5 && m["k"] == 2)
        .expect("(5,2) mismatch recorded");
    let has = |side: &str, p: i64, q: i64| {
        m[side].as_array().unwrap().iter().any(|r| r["kind"] == "M" && r["p"] == p && r["q"] == q)
    };
    assert!(has("only_in_a", 9, 5));
    assert!(has("only_in_other", 10, 5));
}

#[test]
fn crosscheck_small() {
    let text = stdout(&["crosscheck", "--n-max", "3"]);
    for pair in ["   2    1  true   true", "   3    1  true   true", "   3    2  true   true"] {
        assert!(text.contains(pair), "{text}");
    }
}

#[test]
fn crosscheck_both_conventions() {
    let v: Value =
        serde_json::from_str(&stdout(&["crosscheck", "--n-max", "6", "--both", "--format", "json"])).unwrap();
    let runs = v["runs"].as_array().unwrap();
    assert_eq!(runs.len(), 2);
    assert_eq!(runs[0]["conventions"]["cone_shift"], "paper");
    assert_eq!(runs[0]["all_a_eq_c"], false);
    assert_eq!(runs[1]["all_a_eq_c"], true);
}

#[test]
fn outputs_are_byte_stable() {
    for args in [
        &["crosscheck", "--n-max", "12", "--both", "--format", "json"][..],
        &["crosscheck", "--n-max", "12", "--both", "--serial", "--format", "json"][..],
        &["report", "9", "5", "--format", "json"][..],
        &["basis", "8", "5", "--format", "csv"][..],
    ] {
        assert_eq!(stiefel(args).stdout, stiefel(args).stdout);
    }
    let parallel = stiefel(&["crosscheck", "--n-max", "12", "--both", "--format", "json"]).stdout;
    let serial = stiefel(&["crosscheck", "--n-max", "12", "--both", "--serial", "--format", "json"]).stdout;
    assert_eq!(parallel, serial);
}

#[test]
fn motive_and_report() {
    let text = stdout(&["motive", "7", "4"]);
    assert!(text.starts_with("M(V_4(A^7)) = HS_7 ⊗ HS_5\n"), "{text}");
    assert!(text.contains("C(10)[18] ⊕ C(11)[20]"), "{text}");

    let v: Value = serde_json::from_str(&stdout(&["report", "7", "4", "--format", "json"])).unwrap();
    assert_eq!(v["a_eq_b"], true);
    assert_eq!(v["a_eq_c"], true);
    assert_eq!(v["closed_form"].as_array().unwrap().len(), 16);

    let out = stiefel(&["report", "5", "2", "--cone-shift", "paper"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&out.stdout).contains("A=C: false"));

    let latex = stdout(&["motive", "5", "2", "--format", "latex"]);
    assert!(latex.contains(r"C_\eta(4)[7]"), "{latex}");
}

#[test]
fn out_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("basis.tex");
    let out = stiefel(&["basis", "5", "2", "--format", "latex", "--braced", "--out", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let written = std::fs::read_to_string(&path).unwrap();
    assert!(written.contains(r"\begin{tabular}"));
    assert!(written.contains(r"$(7, \{9\})$"));
}

#[test]
fn unsupported_format_is_usage_error() {
    assert_eq!(stiefel(&["crosscheck", "--n-max", "4", "--format", "csv"]).status.code(), Some(1));
    assert_eq!(stiefel(&["basis", "5", "2", "--format", "yaml"]).status.code(), Some(1));
}

#[test]
fn enumeration_is_bounded() {
    let out = stiefel(&["basis", "63", "40"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("2^40"));
    assert_eq!(stiefel(&["crosscheck", "--n-max", "22"]).status.code(), Some(1));
    assert_eq!(stdout(&["euler", "63", "40"]), "e(f_{63,40}) = 0\n");
}
