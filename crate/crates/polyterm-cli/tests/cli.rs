use polyterm::{
    build_single_rule_trs, parse_poly, serialize_trs, theorem_lin_interpretation, Interpretation,
    TrsFormat, Witness,
};
use polyterm_cli::run;

fn invoke(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let code = run(args, &mut out, &mut err);
    (
        code,
        String::from_utf8(out).expect("stdout is UTF-8"),
        String::from_utf8(err).expect("stderr is UTF-8"),
    )
}

fn scratch_file(name: &str, content: &str) -> std::path::PathBuf {
    let path = std::env::temp_dir().join(format!("polyterm-cli-{}-{}", std::process::id(), name));
    std::fs::write(&path, content).expect("temp file writable");
    path
}

#[test]
fn build_single_matches_the_library_serializer() {
    let (code, out, err) = invoke(&[
        "polyterm", "build", "single", "-P", "2*x1", "-Q", "x1^2 + 1", "--format", "tpdb",
    ]);
    assert_eq!(code, 0, "stderr: {}", err);
    let p = parse_poly("2*x1").unwrap();
    let q = parse_poly("x1^2 + 1").unwrap();
    let expected = serialize_trs(&build_single_rule_trs(&p, &q).unwrap(), TrsFormat::Tpdb);
    assert_eq!(out, format!("{}\n", expected));
}

#[test]
fn reduce_reports_a_witness() {
    let (code, out, _) = invoke(&["polyterm", "reduce", "-R", "x1 - 1", "--bound", "10"]);
    assert_eq!(code, 0);
    assert!(out.contains("witness v = (1)"), "output: {}", out);
    assert!(out.contains("verdict: witness found"), "output: {}", out);
}

#[test]
fn reduce_reports_an_honest_none() {
    let (code, out, _) = invoke(&["polyterm", "reduce", "-R", "x1^2 + 1"]);
    assert_eq!(code, 1);
    assert!(out.contains("verdict: none up to bound"), "output: {}", out);
}

#[test]
fn reduce_json_is_parseable_and_stable() {
    let (code, out, _) = invoke(&["polyterm", "reduce", "-R", "x^2 + x - 6", "--json"]);
    assert_eq!(code, 0);
    let doc: serde_json::Value = serde_json::from_str(&out).expect("valid JSON");
    assert_eq!(doc["verdict"], "witness-found");
    assert_eq!(doc["r"], "x^2 + x - 6");
    let branches = doc["branches"].as_array().unwrap();
    assert_eq!(branches.len(), 3);
    assert_eq!(branches[0]["witness"], serde_json::json!([3]));
    assert_eq!(branches[2]["witness"], serde_json::json!([2]));
    // The split polynomials round-trip through the parser.
    for branch in branches {
        parse_poly(branch["q"].as_str().unwrap().replace('x', "x1").as_str()).unwrap();
    }
}

#[test]
fn encode_prints_the_expected_term() {
    let (code, out, _) = invoke(&["polyterm", "encode", "-P", "X^3 + 2*X + 2"]);
    assert_eq!(code, 0);
    assert_eq!(
        out.trim_end(),
        "a(X(X(X(a(y,z)))), a(X(a(y,a(y,z))), a(a(y,a(y,z)), z)))"
    );
}

#[test]
fn malformed_polynomial_is_an_input_error() {
    let (code, out, err) = invoke(&["polyterm", "encode", "-P", "2*+x1"]);
    assert_eq!(code, 2);
    assert!(out.is_empty());
    assert!(err.contains("bad polynomial"), "stderr: {}", err);
}

#[test]
fn negative_coefficients_cannot_be_encoded() {
    let (code, _, err) = invoke(&["polyterm", "encode", "-P", "x1 - 1"]);
    assert_eq!(code, 2);
    assert!(!err.is_empty());
}

#[test]
fn check_accepts_an_orienting_interpretation() {
    let p = parse_poly("x1^2").unwrap();
    let q = parse_poly("x1 + 1").unwrap();
    let trs = build_single_rule_trs(&p, &q).unwrap();
    let trs_path = scratch_file("orient-trs.json", &serialize_trs(&trs, TrsFormat::Json));
    let interp = theorem_lin_interpretation(&Witness::new(vec![2]).unwrap());
    let interp_path = scratch_file("orient-interp.json", &interp.to_json_string());

    let (code, out, err) = invoke(&[
        "polyterm",
        "check",
        "--trs",
        trs_path.to_str().unwrap(),
        "--interp",
        interp_path.to_str().unwrap(),
    ]);
    assert_eq!(code, 0, "stderr: {}", err);
    assert!(out.contains("orients all 1 rule(s)"), "output: {}", out);
    let _ = std::fs::remove_file(trs_path);
    let _ = std::fs::remove_file(interp_path);
}

#[test]
fn check_rejects_a_non_orienting_interpretation() {
    // P(v) = v < 2v = Q(v) for every positive v, so no witness point can
    // orient the gadget built from P = x1, Q = 2*x1.
    let p = parse_poly("x1").unwrap();
    let q = parse_poly("2*x1").unwrap();
    let trs = build_single_rule_trs(&p, &q).unwrap();
    let trs_path = scratch_file("reject-trs.json", &serialize_trs(&trs, TrsFormat::Json));
    let interp = theorem_lin_interpretation(&Witness::new(vec![1]).unwrap());
    let interp_path = scratch_file("reject-interp.json", &interp.to_json_string());

    let (code, out, _) = invoke(&[
        "polyterm",
        "check",
        "--trs",
        trs_path.to_str().unwrap(),
        "--interp",
        interp_path.to_str().unwrap(),
    ]);
    assert_eq!(code, 1);
    assert!(out.contains("does not orient"), "output: {}", out);
    assert!(out.contains("coefficient"), "output: {}", out);
    let _ = std::fs::remove_file(trs_path);
    let _ = std::fs::remove_file(interp_path);
}

#[test]
fn check_json_reports_the_certificates() {
    let p = parse_poly("x1^2").unwrap();
    let q = parse_poly("x1").unwrap();
    let trs = build_single_rule_trs(&p, &q).unwrap();
    let trs_path = scratch_file("json-trs.json", &serialize_trs(&trs, TrsFormat::Json));
    let interp = theorem_lin_interpretation(&Witness::new(vec![2]).unwrap());
    let interp_path = scratch_file("json-interp.json", &interp.to_json_string());

    let (code, out, _) = invoke(&[
        "polyterm",
        "check",
        "--json",
        "--trs",
        trs_path.to_str().unwrap(),
        "--interp",
        interp_path.to_str().unwrap(),
    ]);
    assert_eq!(code, 0);
    let doc: serde_json::Value = serde_json::from_str(&out).expect("valid JSON");
    assert_eq!(doc["oriented"], true);
    assert_eq!(doc["monotone"], true);
    // P(2) − Q(2) = 4 − 2 = 2, so the rule difference is 2·y3 + 1.
    assert_eq!(doc["rules"][0]["difference"], "2*y3 + 1");
    let _ = std::fs::remove_file(trs_path);
    let _ = std::fs::remove_file(interp_path);
}

#[test]
fn search_witness_both_outcomes() {
    let (code, out, _) =
        invoke(&["polyterm", "search", "witness", "-P", "2*x1", "-Q", "x1^2 + 1"]);
    assert_eq!(code, 0);
    assert!(out.contains("witness v = (1)"), "output: {}", out);

    let (code, out, _) = invoke(&[
        "polyterm", "search", "witness", "-P", "x1", "-Q", "2*x1", "--bound", "5",
    ]);
    assert_eq!(code, 1);
    assert!(out.contains("none up to bound 5"), "output: {}", out);
}

#[test]
fn search_linear_finds_and_serializes_an_interpretation() {
    let (code, out, _) = invoke(&[
        "polyterm", "search", "linear", "-P", "x1^2", "-Q", "x1", "--json",
    ]);
    assert_eq!(code, 0);
    let doc: serde_json::Value = serde_json::from_str(&out).expect("valid JSON");
    let interp_doc = doc["interpretation"].clone();
    let text = serde_json::to_string(&interp_doc).unwrap();
    let interp = Interpretation::from_json_str(&text).expect("round-trips");
    let p = parse_poly("x1^2").unwrap();
    let q = parse_poly("x1").unwrap();
    let trs = build_single_rule_trs(&p, &q).unwrap();
    assert!(interp.orients_all(&trs).is_ok());
}

#[test]
fn search_linear_reports_an_exhausted_space() {
    let (code, out, _) =
        invoke(&["polyterm", "search", "linear", "-P", "x1", "-Q", "2*x1"]);
    assert_eq!(code, 1);
    assert!(out.contains("no interpretation"), "output: {}", out);
}

#[test]
fn minimal_h_reports_the_frozen_value() {
    let (code, out, _) = invoke(&[
        "polyterm", "minimal-h", "-P", "2*x", "-Q", "x^2 + 1", "--witness", "1",
    ]);
    assert_eq!(code, 0);
    assert!(out.contains("h = 3"), "output: {}", out);

    let (code, out, _) = invoke(&[
        "polyterm", "minimal-h", "-P", "2*x", "-Q", "x^2 + 1", "--witness", "1", "--json",
    ]);
    assert_eq!(code, 0);
    let doc: serde_json::Value = serde_json::from_str(&out).expect("valid JSON");
    assert_eq!(doc["h"], 3);
}

#[test]
fn config_file_supplies_defaults_and_flags_win() {
    let config_path = scratch_file("bounds.toml", "bound = 2\n");

    // Root at 3 is outside the configured bound.
    let (code, _, _) = invoke(&[
        "polyterm", "reduce", "-R", "x - 3", "--config", config_path.to_str().unwrap(),
    ]);
    assert_eq!(code, 1);

    // An explicit flag overrides the file.
    let (code, out, _) = invoke(&[
        "polyterm",
        "reduce",
        "-R",
        "x - 3",
        "--config",
        config_path.to_str().unwrap(),
        "--bound",
        "5",
    ]);
    assert_eq!(code, 0);
    assert!(out.contains("witness v = (3)"), "output: {}", out);
    let _ = std::fs::remove_file(config_path);
}

#[test]
fn unknown_config_keys_are_rejected() {
    let config_path = scratch_file("typo.toml", "bonud = 2\n");
    let (code, _, err) = invoke(&[
        "polyterm", "reduce", "-R", "x - 1", "--config", config_path.to_str().unwrap(),
    ]);
    assert_eq!(code, 2);
    assert!(err.contains("bad config"), "stderr: {}", err);
    let _ = std::fs::remove_file(config_path);
}

#[test]
fn threads_flag_does_not_change_the_report() {
    let single = invoke(&["polyterm", "reduce", "-R", "x1*x2 - 4", "--json"]);
    let multi = invoke(&[
        "polyterm", "reduce", "-R", "x1*x2 - 4", "--json", "--threads", "3",
    ]);
    assert_eq!(single.0, multi.0);
    assert_eq!(single.1, multi.1);
}

#[test]
fn help_and_bad_flags_use_the_documented_exit_codes() {
    let (code, out, _) = invoke(&["polyterm", "--help"]);
    assert_eq!(code, 0);
    assert!(out.contains("reduce"), "output: {}", out);

    let (code, _, err) = invoke(&["polyterm", "reduce"]);
    assert_eq!(code, 2);
    assert!(!err.is_empty());

    let (code, _, err) = invoke(&["polyterm", "frobnicate"]);
    assert_eq!(code, 2);
    assert!(!err.is_empty());
}
