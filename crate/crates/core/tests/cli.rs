mod common;

use std::path::{Path, PathBuf};
use std::process::Command as Process;

use common::*;
use serde_json::Value;
use symorder::builders;
use symorder::bundle::Bundle;
use symorder::report::{run, Command, Options, Status};
use symorder::Error;

fn fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures").join(name)
}

fn fixtures() -> Vec<PathBuf> {
    let mut v: Vec<PathBuf> = std::fs::read_dir(Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures"))
        .unwrap()
        .map(|e| e.unwrap().path())
        .filter(|p| p.extension().is_some_and(|x| x == "json"))
        .collect();
    v.sort();
    v
}

fn s3_json() -> Value {
    serde_json::from_str(&std::fs::read_to_string(fixture("s3_p3.json")).unwrap()).unwrap()
}

#[test]
fn bundles_round_trip() {
    let b = Bundle::load(&fixture("s3_p3.json")).unwrap();
    let again = Bundle::from_json(&b.to_json()).unwrap();
    assert_eq!(again.to_spec(), b.to_spec());
    assert_eq!(again.order.structure_nested(), b.order.structure_nested());
    let built = Bundle::from_fixture(&builders::symmetric_group_s3(p(3)).unwrap());
    assert_eq!(built.order.structure_nested(), b.order.structure_nested());
    assert_eq!(built.form(None).unwrap().1, b.form(None).unwrap().1);
}

#[test]
fn non_associative_bundle_names_the_triple() {
    let mut v = s3_json();
    v["order"]["structure"][1][1] = serde_json::json!(["0", "0", "0", "0", "0", "1"]);
    let err = Bundle::from_json(&v.to_string()).unwrap_err();
    assert!(matches!(err, Error::NotAssociative { .. }), "{err}");
    assert!(err.to_string().starts_with("not associative at basis triple ("));
}

#[test]
fn malformed_input_is_rejected() {
    assert!(matches!(Bundle::from_json("{"), Err(Error::Parse(_))));
    let mut v = s3_json();
    v["surprise"] = Value::Bool(true);
    assert!(matches!(Bundle::from_json(&v.to_string()), Err(Error::Parse(_))));
    let mut v = s3_json();
    v["prime"] = serde_json::json!(4);
    assert!(matches!(Bundle::from_json(&v.to_string()), Err(Error::NotPrime(4))));
}

#[test]
fn unknown_character_in_a_form_is_a_resolution_error() {
    let mut v = s3_json();
    v["forms"] = serde_json::json!([{ "name": "bad", "combination": { "nonexistent": "1" } }]);
    let err = Bundle::from_json(&v.to_string()).unwrap_err();
    assert!(matches!(&err, Error::Resolution(m) if m.contains("nonexistent")), "{err}");
}

#[test]
fn forms_given_by_character_combinations() {
    let mut v = s3_json();
    let names: Vec<String> =
        v["characters"].as_array().unwrap().iter().map(|c| c["name"].as_str().unwrap().to_string()).collect();
    let combination: serde_json::Map<String, Value> =
        names.iter().zip(["1/3", "2/3", "1/3"]).map(|(n, c)| (n.clone(), Value::from(c))).collect();
    v["forms"] = serde_json::json!([{ "name": "third", "combination": combination }]);
    let b = Bundle::from_json(&v.to_string()).unwrap();
    let (_, form) = b.form(Some("third")).unwrap();
    assert_eq!(form.values[0], s(2));
    assert!(form.values[1..].iter().all(|x| x.is_zero()));
    assert!(matches!(b.form(Some("missing")), Err(Error::Resolution(_))));
}

#[test]
fn psp_report_for_rank2() {
    let b = Bundle::load(&fixture("rank2_m1_p2.json")).unwrap();
    let r = run(Command::Psp, &b, &Options::default());
    let e = r.entry("psp.direct").unwrap();
    assert_eq!((e.verdict.as_str(), e.status), ("yes", Status::Pass));
    assert_eq!(e.details["n"], 1);
    assert!(e.details["witness"].is_array());
    assert_eq!(r.entry("psp").unwrap().verdict, "yes");
    assert_eq!(r.exit_code, 0);
}

#[test]
fn tate_report_for_s3() {
    let b = Bundle::load(&fixture("s3_p3.json")).unwrap();
    let r = run(Command::Tate, &b, &Options::default());
    let e = r.entry("tate.trivial.trivial").unwrap();
    assert_eq!(e.verdict, "perfect");
    assert_eq!(e.details["values"][0][0], "2/3");
    assert!(r.entries.iter().all(|e| e.verdict == "perfect"));
}

#[test]
fn shipped_fixtures_pass_every_check() {
    for path in fixtures() {
        let b = Bundle::load(&path).unwrap();
        let r = run(Command::All, &b, &Options::default());
        let bad: Vec<_> = r.entries.iter().filter(|e| e.status != Status::Pass).map(|e| &e.name).collect();
        assert_eq!(r.exit_code, 0, "{}: {bad:?}", path.display());
        for key in b.expectations.keys() {
            assert!(r.entry(key).is_some(), "{}: {key}", path.display());
        }
    }
}

#[test]
fn reports_are_deterministic() {
    let b = Bundle::load(&fixture("s3_p3.json")).unwrap();
    let one = run(Command::All, &b, &Options::default());
    let two = run(Command::All, &b, &Options::default());
    assert_eq!(one.to_json(), two.to_json());
    assert_eq!(one.to_text(), two.to_text());
}

#[test]
fn command_names_parse() {
    for c in Command::EACH.into_iter().chain([Command::All]) {
        assert_eq!(c.name().parse::<Command>().unwrap(), c);
    }
    assert!(matches!("nope".parse::<Command>(), Err(Error::Resolution(_))));
}

#[test]
fn resource_bounds_are_reported() {
    let b = Bundle::load(&fixture("s3_p3.json")).unwrap();
    let mut options = Options::default();
    options.limits.radical_dim = 1;
    let r = run(Command::Knorr, &b, &options);
    assert!(r.entries.iter().any(|e| e.status == Status::ResourceBound));
    assert_eq!(r.exit_code, 3);
}

fn symorder(args: &[&str]) -> std::process::Output {
    Process::new(env!("CARGO_BIN_EXE_symorder")).args(args).output().unwrap()
}

#[test]
fn binary_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let s3 = fixture("s3_p3.json");

    let out = symorder(&["check", "--bundle", s3.to_str().unwrap(), "--check", "psp"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&out.stdout).contains("psp: yes"));

    // a wrong expectation fails with code 1
    let mut v = s3_json();
    v["expectations"] = serde_json::json!({ "psp": "no" });
    let wrong = dir.path().join("wrong.json");
    std::fs::write(&wrong, v.to_string()).unwrap();
    let report = dir.path().join("report.json");
    let out = symorder(&["check", "--bundle", wrong.to_str().unwrap(), "--check", "psp", "--json", report.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    let parsed: Value = serde_json::from_str(&std::fs::read_to_string(&report).unwrap()).unwrap();
    assert_eq!(parsed["exit_code"], 1);

    let garbage = dir.path().join("garbage.json");
    std::fs::write(&garbage, "not json").unwrap();
    assert_eq!(symorder(&["check", "--bundle", garbage.to_str().unwrap()]).status.code(), Some(2));
    let missing = dir.path().join("missing.json");
    assert_eq!(symorder(&["check", "--bundle", missing.to_str().unwrap()]).status.code(), Some(2));
    assert_eq!(symorder(&["check", "--bundle", s3.to_str().unwrap(), "--form", "nope"]).status.code(), Some(2));
}

#[test]
fn binary_builds_bundles_that_check() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("r.json");
    let out = symorder(&["build", "rank2", "--m", "1", "--p", "2", "--out", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let b = Bundle::load(&path).unwrap();
    assert_eq!(b.order.dim(), 2);
    let out = symorder(&["check", "--bundle", path.to_str().unwrap(), "--check", "psp"]);
    assert_eq!(out.status.code(), Some(0));
    let stdout = symorder(&["build", "s3", "--p", "3"]).stdout;
    assert!(Bundle::from_json(&String::from_utf8(stdout).unwrap()).is_ok());
}
