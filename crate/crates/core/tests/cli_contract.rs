use std::io::Write;
use std::path::PathBuf;
use std::process::{Command, Stdio};

use adjunct_core::cli::{
    exit_code, outcome_of, parse_case, parse_document, run_document, CaseFile, Options, Outcome, EXIT_INPUT,
    EXIT_INTERNAL, EXIT_OK,
};
use adjunct_core::Error;
use serde_json::{json, Value};

fn corpus_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../cases")
}

fn corpus(sub: &str) -> Vec<(String, String)> {
    let mut files: Vec<_> = std::fs::read_dir(corpus_dir().join(sub))
        .unwrap()
        .map(|e| e.unwrap().path())
        .filter(|p| p.extension().is_some_and(|x| x == "json"))
        .collect();
    files.sort();
    files
        .into_iter()
        .map(|p| (p.file_name().unwrap().to_string_lossy().into_owned(), std::fs::read_to_string(&p).unwrap()))
        .collect()
}

fn run_file(name: &str) -> Value {
    let text = std::fs::read_to_string(corpus_dir().join(name)).unwrap();
    let report = run_document(&text, &Options::default());
    assert_eq!(report.exit_code(), EXIT_OK, "{name}: {:#}", report.to_json());
    report.to_json()
}

fn verdict<'a>(result: &'a Value, id: &str) -> &'a Value {
    result["verdicts"].as_array().unwrap().iter().find(|v| v["theorem_id"] == id).unwrap()
}

fn binary() -> Command {
    Command::new(env!("CARGO_BIN_EXE_adjunct"))
}

#[test]
fn corpus_round_trips() {
    let opts = Options::default();
    let valid = corpus("");
    assert!(valid.len() >= 10);
    for (name, text) in valid {
        for parsed in parse_document(&text, &opts).unwrap() {
            let case = parsed.unwrap_or_else(|e| panic!("{name}: {e:?}"));
            let once = serde_json::to_string(&case).unwrap();
            let again: CaseFile = parse_case(&once, &opts).unwrap();
            assert_eq!(again, case, "{name}");
            assert_eq!(serde_json::to_string(&again).unwrap(), once, "{name}");
        }
    }
}

#[test]
fn invalid_corpus_names_its_rule() {
    let expected = [
        ("chamber_required.json", "chamber_required"),
        ("non_primitive.json", "non_primitive"),
        ("unknown_field.json", "unknown_field"),
        ("wu_parity.json", "wu_parity"),
    ];
    let files = corpus("invalid");
    assert_eq!(files.len(), expected.len());
    for ((name, text), (want_name, rule)) in files.iter().zip(expected) {
        assert_eq!(name, want_name);
        let report = run_document(text, &Options::default());
        assert_eq!(report.exit_code(), EXIT_INPUT);
        match &report.outcomes[0] {
            Outcome::InputError(errs) => assert_eq!(errs[0].rule, rule, "{name}"),
            other => panic!("{name}: {other:?}"),
        }
    }
}

#[test]
fn lenient_mode_turns_unknown_fields_into_warnings() {
    let text = std::fs::read_to_string(corpus_dir().join("invalid/unknown_field.json")).unwrap();
    let report = run_document(&text, &Options { lenient: true, ..Options::default() });
    assert_eq!(report.exit_code(), EXIT_OK);
    let v = report.to_json();
    assert_eq!(v["warnings"][0]["rule"], "unknown_field");
    assert_eq!(v["warnings"][0]["path"], "manifold.b2_minus");
}

#[test]
fn worked_genus_bound_report() {
    let v = run_file("genus_bound_b1_one.json");
    let r = &v["results"][0];
    assert_eq!(verdict(r, "th1")["genus_lower_bound"], 5);
    assert_eq!(verdict(r, "th4")["applicable"], true);
    assert_eq!(verdict(r, "th4")["genus_lower_bound"], 6);
    assert_eq!(verdict(r, "th3")["genus_lower_bound"], 7);
    assert_eq!(v["best_bound"], 7);
    for verdict in r["verdicts"].as_array().unwrap() {
        let keys: Vec<&str> = verdict.as_object().unwrap().keys().map(String::as_str).collect();
        assert_eq!(keys, ["applicable", "failed_hypotheses", "genus_lower_bound", "lhs", "theorem_id"]);
    }
}

#[test]
fn zero_blow_up_echoes_the_input() {
    let v = run_file("blowup_identity.json");
    let blown = &v["result"]["blown_up"];
    for block in ["manifold", "surface", "spinc"] {
        assert_eq!(blown[block], v["input"][block], "{block}");
    }
    let two = run_file("blowup_two.json");
    assert_eq!(two["result"]["blown_up"]["surface"]["self_intersection"], 0);
    assert_eq!(two["result"]["blown_up"]["spinc"][0]["d_s"], 0);
    assert_eq!(two["result"]["blown_up"]["spinc"][0]["pairing_e"], -8);
}

#[test]
fn l_invariant_reports() {
    assert_eq!(run_file("l_invariant_zero_map.json")["l_invariant"], 2);
    assert_eq!(run_file("l_invariant_rational.json")["l_invariant"], 1);
    assert_eq!(run_file("genus_bound_embedding.json")["l_invariant"], 2);
}

#[test]
fn complete_primitive_report() {
    let v = run_file("complete_primitive.json");
    let r = &v["result"];
    let kinds: Vec<&str> = r["steps"].as_array().unwrap().iter().map(|s| s["kind"].as_str().unwrap()).collect();
    assert_eq!(kinds, ["lemma21", "lemma21", "pair_completion"]);
    assert_eq!(r["final_basis"][0], json!([6, 10, 15, 0, 0, 0]));
    assert_eq!(r["verified"], true);
}

#[test]
fn batches_keep_input_order() {
    let v = run_file("batch.json");
    let items = v.as_array().unwrap();
    assert_eq!(items.len(), 2);
    assert_eq!(items[0]["query"], "complete_primitive");
    assert_eq!(items[1]["query"], "genus_bound");
    assert_eq!(items[1]["results"][0]["l_sigma"]["source"], "supplied");
}

#[test]
fn mixed_batch_reports_every_case() {
    let text = format!(
        "[{}, {}]",
        std::fs::read_to_string(corpus_dir().join("complete_primitive.json")).unwrap(),
        std::fs::read_to_string(corpus_dir().join("invalid/wu_parity.json")).unwrap()
    );
    let report = run_document(&text, &Options::default());
    assert_eq!(report.exit_code(), EXIT_INPUT);
    assert_eq!(report.to_json()[0]["status"], "ok");
    assert_eq!(report.to_json()[1]["status"], "input_error");
}

#[test]
fn floats_and_syntax_errors_are_input_errors() {
    let text = r#"{"query": "complete_primitive", "primitive": {"coeffs": [1.5, 2]}}"#;
    let errs = parse_case(text, &Options::default()).unwrap_err();
    assert_eq!(errs[0].rule, "float_not_allowed");
    assert_eq!(errs[0].path, "primitive.coeffs[0]");
    assert_eq!(run_document("{not json", &Options::default()).exit_code(), EXIT_INPUT);
}

#[test]
fn internal_errors_map_to_three() {
    let internal = outcome_of(Err(Error::Invariant("verify_basis failed".into())));
    assert_eq!(internal.exit_code(), EXIT_INTERNAL);
    assert_eq!(outcome_of(Err(Error::CorruptTrace("x".into()))).exit_code(), EXIT_INTERNAL);
    assert_eq!(outcome_of(Err(Error::Precondition("x".into()))).exit_code(), EXIT_INPUT);
    assert_eq!(exit_code(&[outcome_of(Ok(Value::Null)), internal]), EXIT_INTERNAL);
}

#[test]
fn binary_exit_codes() {
    let dir = corpus_dir();
    let status = |args: &[&str]| binary().args(args).output().unwrap().status.code();
    assert_eq!(status(&["--input", dir.join("genus_bound_basic.json").to_str().unwrap()]), Some(EXIT_OK));
    assert_eq!(status(&["--input", dir.join("invalid/wu_parity.json").to_str().unwrap()]), Some(EXIT_INPUT));
    assert_eq!(status(&["--input", dir.join("does_not_exist.json").to_str().unwrap()]), Some(EXIT_INPUT));
    assert_eq!(
        status(&["--lenient", "--input", dir.join("invalid/unknown_field.json").to_str().unwrap()]),
        Some(EXIT_OK)
    );
    assert_eq!(status(&["--self-check", "--seed", "3"]), Some(EXIT_OK));
}

#[test]
fn binary_reads_stdin_and_prints_tables() {
    let mut child = binary()
        .args(["--format", "table"])
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .spawn()
        .unwrap();
    let text = std::fs::read_to_string(corpus_dir().join("genus_bound_b1_one.json")).unwrap();
    child.stdin.take().unwrap().write_all(text.as_bytes()).unwrap();
    let out = child.wait_with_output().unwrap();
    assert_eq!(out.status.code(), Some(EXIT_OK));
    let stdout = String::from_utf8(out.stdout).unwrap();
    assert!(stdout.contains("best_bound 7"), "{stdout}");
    assert!(stdout.lines().any(|l| l.trim_start().starts_with("th4") && l.contains(" 6 ")), "{stdout}");
}
