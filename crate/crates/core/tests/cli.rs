use std::path::PathBuf;

use beliefcheck::cli::run_with;
use beliefcheck::dsl::parse_model_spec;

fn golden(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests/golden")
        .join(name)
        .display()
        .to_string()
}

fn run(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("beliefcheck").chain(args.iter().copied());
    let code = run_with(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

#[test]
fn axioms_text_report() {
    let (code, out, _) = run(&["axioms", &golden("three_state.bm"), "--player", "1"]);
    assert_eq!(code, 0);
    assert_eq!(out, std::fs::read_to_string(golden("three_state_axioms.txt")).unwrap());
    assert!(out.contains("TruthAxiom ✓"));
    assert!(out.contains("NegativeIntrospection ✗ witness w3/{w1}"));
}

#[test]
fn json_reports_share_a_header() {
    for args in [
        vec!["axioms", "THREE"],
        vec!["common-belief", "THREE", "--event", "{w1, w2}"],
        vec!["certainty", "THREE", "--signal", "constant", "--common"],
        vec!["meta", "THREE"],
        vec!["game", "PD"],
        vec!["enumerate", "--states", "2", "--filter", "reflexive"],
        vec!["audit", "--claim", "prop1-1b", "--states", "2"],
        vec!["claims"],
    ] {
        let (three, pd) = (golden("three_state.bm"), golden("prisoners_dilemma.bm"));
        let mut full: Vec<&str> = args
            .iter()
            .map(|a| match *a {
                "THREE" => three.as_str(),
                "PD" => pd.as_str(),
                a => a,
            })
            .collect();
        full.extend(["--format", "json"]);
        let (code, out, err) = run(&full);
        assert_eq!(code, 0, "{args:?}: {err}");
        let v: serde_json::Value = serde_json::from_str(&out).unwrap();
        let keys: Vec<&str> = v.as_object().unwrap().keys().map(String::as_str).collect();
        assert_eq!(keys, ["tool-version", "check", "verdict", "witnesses", "details"], "{args:?}");
    }
}

#[test]
fn certainty_failure_exits_one() {
    let (code, out, _) = run(&["certainty", &golden("three_state.bm"), "--signal", "alternating", "--player", "1"]);
    assert_eq!(code, 1);
    assert!(out.contains("fails at w3 for observation {a}"));
    let (code, _, err) = run(&["certainty", &golden("three_state.bm"), "--signal", "alternating"]);
    assert_eq!(code, 2);
    assert!(err.contains("--player"));
}

#[test]
fn common_belief_of_the_empty_event() {
    let (code, out, _) = run(&["common-belief", &golden("prisoners_dilemma.bm"), "--event", "{}"]);
    assert_eq!(code, 0);
    assert!(out.starts_with("common-belief: {}\n"));
}

#[test]
fn audit_exit_codes() {
    assert_eq!(run(&["audit", "--claim", "prop1-1a", "--mode", "exhaustive", "--states", "2"]).0, 0);
    // a counterexample claim that finds nothing fails
    let (code, out, _) = run(&["audit", "--claim", "common-belief-strict-inclusion", "--states", "2"]);
    assert_eq!(code, 1);
    assert!(out.starts_with("audit:common-belief-strict-inclusion: failed"));
    assert_eq!(run(&["audit", "--claim", "prop1-1a", "--states", "5"]).0, 2);
    assert_eq!(run(&["audit", "--claim", "nope"]).0, 2);
    assert_eq!(run(&["audit", "--claim", "thm2", "--mode", "exhaustive"]).0, 2);
    let (code, out, _) = run(&[
        "audit", "--claim", "thm2-conjunction-needed", "--mode", "from-files",
        "--file", &golden("conjunction_counterexample.bm"),
    ]);
    assert_eq!(code, 0, "{out}");
}

#[test]
fn fixed_seed_audits_are_reproducible() {
    let args = [
        "audit", "--claim", "epistemic-iesda", "--mode", "sampled-games", "--states", "4", "--actions", "3",
        "--seed", "11", "--count", "500", "--format", "json",
    ];
    let (_, first, _) = run(&args);
    let (_, second, _) = run(&args);
    let mut seq = args.to_vec();
    seq.push("--sequential");
    let (_, third, _) = run(&seq);
    assert_eq!(first, second);
    assert_eq!(first, third);
}

#[test]
fn out_flag_writes_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("report.json");
    let (code, out, _) = run(&["meta", &golden("three_state.bm"), "--format", "json", "--out", path.to_str().unwrap()]);
    assert_eq!((code, out.as_str()), (0, ""));
    let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap();
    assert_eq!(v["verdict"], "not commonly certain");
}

#[test]
fn input_errors_exit_two() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.bm");
    std::fs::write(&bad, "states w1 w2 w3;\nplayer 1 { kripke { w1: {w1}; w3: {w3}; } }\n").unwrap();
    let (code, _, err) = run(&["axioms", bad.to_str().unwrap()]);
    assert_eq!(code, 2);
    assert!(err.contains("`w2`"), "{err}");
    let (code, _, err) = run(&["common-belief", &golden("three_state.bm"), "--event", "{w9}"]);
    assert_eq!(code, 2);
    assert!(err.contains("w9"), "{err}");
    assert_eq!(run(&["axioms", "/no/such/file.bm"]).0, 2);
    assert_eq!(run(&["frobnicate"]).0, 2);
    assert_eq!(run(&["--help"]).0, 0);
}

#[test]
fn fmt_is_canonical() {
    for name in ["three_state.bm", "prisoners_dilemma.bm", "conjunction_counterexample.bm"] {
        let (code, out, _) = run(&["fmt", &golden(name)]);
        assert_eq!(code, 0);
        assert_eq!(out, std::fs::read_to_string(golden(name)).unwrap());
    }
}

#[test]
fn parse_errors_carry_positions() {
    let e = parse_model_spec("").unwrap_err();
    assert_eq!(e.to_string(), "1:1: syntax error: expected `states`, found end of input");
}
