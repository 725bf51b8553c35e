use std::path::{Path, PathBuf};
use std::process::Command;

use catfourier::report::anchors;
use catfourier::{Report, Status};
use catfourier_cli::{emit_report, load_spec, parse_spec, run_suite, CliError, Format, RawSpec};

fn manifest(rel: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join(rel)
}

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_catfourier"));
    c.env_remove("CATFOURIER_SEED");
    c
}

const TINY: &str = r#"{
  "scalar": "rational",
  "categories": [{"name": "C", "objects": ["x", "y"], "discrete": true}],
  "functors": [{"name": "F", "slots": [{"category": "C", "variance": "co"}], "dims": [1, 2]}]
}"#;

#[test]
fn z3_hopf_fixture_passes_every_suite() {
    let doc = load_spec(&manifest("examples/z3_hopf.json")).unwrap();
    assert!(doc.kernels.contains_key("hom(k[Z3])"));
    let r = run_suite(&doc, "all", 1).unwrap();
    assert!(!r.is_empty());
    assert!(r.all_passed(), "{:?}", r.failures().collect::<Vec<_>>());
    // Every suite contributed records.
    for suite in catfourier_cli::suite::SUITES.iter().filter(|s| **s != "gamma") {
        assert!(r.records.iter().any(|c| c.id.starts_with(&format!("{suite}/"))), "{suite}");
    }
}

#[test]
fn quotient_restriction_fails_with_two_against_one() {
    let doc = load_spec(&manifest("fixtures/quotient_restriction.json")).unwrap();
    for seed in [1, 7] {
        let r = run_suite(&doc, "kernel", seed).unwrap();
        let fails: Vec<_> = r.failures().collect();
        assert!(!fails.is_empty());
        assert!(fails.iter().all(|f| f.locus.is_some()));
        assert!(fails.iter().any(|f| {
            let l = f.locus.as_ref().unwrap();
            (l.lhs, l.rhs) == (2, 1)
        }));
    }
}

#[test]
fn reports_are_deterministic() {
    let doc = load_spec(&manifest("examples/z3_hopf.json")).unwrap();
    let a = emit_report(&run_suite(&doc, "all", 3).unwrap(), Format::Json);
    let doc = load_spec(&manifest("examples/z3_hopf.json")).unwrap();
    let b = emit_report(&run_suite(&doc, "all", 3).unwrap(), Format::Json);
    assert_eq!(a, b);
    let ids: Vec<_> = serde_json::from_str::<Report>(&a).unwrap().records.into_iter().map(|r| r.id).collect();
    let mut sorted = ids.clone();
    sorted.sort();
    assert_eq!(ids, sorted);
}

#[test]
fn truncated_file_reports_byte_offset() {
    let text = &TINY[..TINY.find("\"functors\"").unwrap() + 5];
    match parse_spec(text) {
        Err(CliError::Parse { offset, .. }) => assert_eq!(offset, text.len()),
        other => panic!("expected a parse error, got {other:?}"),
    }
    // An error in the middle: the offending byte is the stray `}` on line 2.
    let bad = "{\n  \"categories\": }\n}";
    match parse_spec(bad) {
        Err(CliError::Parse { offset, .. }) => assert_eq!(&bad[offset..offset + 1], "}"),
        other => panic!("expected a parse error, got {other:?}"),
    }
}

#[test]
fn comp_shape_conflict_names_the_triple() {
    let text = r#"{"categories": [{"name": "A", "objects": ["*"], "hom": [[2]],
        "comp": [{"at": ["*", "*", "*"], "matrix": [["1", "0", "0"], ["0", "1", "0"]]}],
        "identities": [{"object": "*", "vector": ["1", "0"]}]}]}"#;
    match parse_spec(text) {
        Err(CliError::Invalid { pointer, message }) => {
            assert!(pointer.starts_with("/categories/0/comp/0/matrix"), "{pointer}");
            assert!(message.contains("comp(*,*,*)"), "{message}");
        }
        other => panic!("expected a shape error, got {other:?}"),
    }
}

#[test]
fn unresolved_names_carry_a_pointer() {
    let text = TINY.replace("\"category\": \"C\"", "\"category\": \"D\"");
    match parse_spec(&text) {
        Err(CliError::Unresolved { pointer, name }) => {
            assert_eq!(pointer, "/functors/0/slots/0/category");
            assert_eq!(name, "D");
        }
        other => panic!("expected an unresolved reference, got {other:?}"),
    }
    assert!(matches!(parse_spec(&TINY.replace("\"dims\"", "\"dimz\"")), Err(CliError::Parse { .. })));
}

#[test]
fn caps_are_enforced_at_load() {
    let objects: Vec<String> = (0..17).map(|i| format!("\"o{i}\"")).collect();
    let text = format!(r#"{{"categories": [{{"name": "C", "objects": [{}], "discrete": true}}]}}"#, objects.join(","));
    assert!(matches!(parse_spec(&text), Err(CliError::Oversized(_))));
    let text = r#"{"categories": [{"name": "C", "objects": ["*"], "hom": [[9]]}]}"#;
    assert!(matches!(parse_spec(text), Err(CliError::Oversized(_))));
}

#[test]
fn rationals_parse_and_bad_literals_are_rejected() {
    let doc = parse_spec(TINY).unwrap();
    assert_eq!(doc.modules["F"].dims(), &[1, 2]);
    let text = r#"{"categories": [{"name": "A", "objects": ["*"], "hom": [[1]],
        "comp": [{"at": ["*", "*", "*"], "matrix": [["1/x"]]}],
        "identities": [{"object": "*", "vector": ["1"]}]}]}"#;
    match parse_spec(text) {
        Err(CliError::Invalid { pointer, .. }) => assert_eq!(pointer, "/categories/0/comp/0/matrix/0/0"),
        other => panic!("{other:?}"),
    }
    let half = text.replace("1/x", "2/4");
    let doc = parse_spec(&half).unwrap();
    assert_eq!(doc.categories["A"].comp(0, 0, 0).get(0, 0), catfourier::linalg::ratio(1, 2));
}

#[test]
fn empty_report_is_an_empty_json_array() {
    let s = emit_report(&Report::new(), Format::Json);
    assert_eq!(serde_json::from_str::<serde_json::Value>(&s).unwrap(), serde_json::json!([]));
}

#[test]
fn json_reports_round_trip() {
    let doc = load_spec(&manifest("fixtures/quotient_restriction.json")).unwrap();
    let r = run_suite(&doc, "all", 1).unwrap();
    let back: Report = serde_json::from_str(&emit_report(&r, Format::Json)).unwrap();
    assert_eq!(back, r);
    assert!(back.records.iter().any(|c| c.status == Status::Fail));
}

#[test]
fn every_anchor_is_known() {
    for path in ["examples/z3_hopf.json", "fixtures/quotient_restriction.json"] {
        let r = run_suite(&load_spec(&manifest(path)).unwrap(), "all", 1).unwrap();
        for c in &r.records {
            assert!(anchors::ALL.contains(&c.anchor.as_str()), "{}", c.anchor);
        }
    }
}

#[test]
fn spec_documents_round_trip() {
    let text = std::fs::read_to_string(manifest("examples/z3_hopf.json")).unwrap();
    let raw: RawSpec = serde_json::from_str(&text).unwrap();
    let again: RawSpec = serde_json::from_str(&serde_json::to_string(&raw).unwrap()).unwrap();
    assert_eq!(raw, again);
    let a = parse_spec(&text).unwrap();
    assert_eq!(a.modules.len(), parse_spec(&serde_json::to_string(&again).unwrap()).unwrap().modules.len());
}

#[test]
fn unknown_suite_is_an_error() {
    let doc = parse_spec(TINY).unwrap();
    assert!(matches!(run_suite(&doc, "nonsense", 1), Err(CliError::UnknownSuite(_))));
}

#[test]
fn exit_codes() {
    let ok = bin().args(["check"]).arg(manifest("examples/z3_hopf.json")).output().unwrap();
    assert_eq!(ok.status.code(), Some(0));
    let fail = bin().args(["check", "--suite", "kernel"]).arg(manifest("fixtures/quotient_restriction.json")).output().unwrap();
    assert_eq!(fail.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&fail.stdout).contains("2 vs 1"));

    let dir = tempfile::tempdir().unwrap();
    let truncated = dir.path().join("t.json");
    std::fs::write(&truncated, &TINY[..40]).unwrap();
    let bad = bin().arg("check").arg(&truncated).output().unwrap();
    assert_eq!(bad.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&bad.stderr).contains("byte"));

    let missing = bin().args(["check", "/nonexistent/spec.json"]).output().unwrap();
    assert_eq!(missing.status.code(), Some(2));
    let suite = bin().args(["check", "--suite", "bogus"]).arg(manifest("examples/z3_hopf.json")).output().unwrap();
    assert_eq!(suite.status.code(), Some(2));
    let usage = bin().args(["frobnicate"]).output().unwrap();
    assert_eq!(usage.status.code(), Some(2));
    let emit = bin().args(["gallery", "species", "--trunc", "3", "--emit"]).arg(dir.path().join("s.json")).output().unwrap();
    assert_eq!(emit.status.code(), Some(2));
}

#[test]
fn seed_comes_from_the_environment() {
    let path = manifest("examples/z3_hopf.json");
    let run = |seed: Option<&str>| {
        let mut c = bin();
        c.args(["check", "--suite", "parseval", "--format", "json"]).arg(&path);
        if let Some(s) = seed {
            c.env("CATFOURIER_SEED", s);
        }
        String::from_utf8(c.output().unwrap().stdout).unwrap()
    };
    let default = run(None);
    assert!(default.contains("rand1000"));
    assert_eq!(default, run(Some("1")));
    assert!(run(Some("5")).contains("rand5000"));
}

#[test]
fn gallery_emit_reloads() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("g.json");
    let g = bin().args(["gallery", "group", "--order", "3", "--closed", "--emit"]).arg(&out).output().unwrap();
    assert_eq!(g.status.code(), Some(0));
    let doc = load_spec(&out).unwrap();
    let r = run_suite(&doc, "star-autonomy", 1).unwrap();
    assert!(r.all_passed() && !r.is_empty());
    let r = run_suite(&doc, "gamma", 1).unwrap();
    assert!(r.all_passed() && !r.is_empty(), "{:?}", r.failures().collect::<Vec<_>>());
}

#[test]
fn convolve_and_transform_print_dimensions() {
    let path = manifest("examples/z3_hopf.json");
    let out = bin().arg("convolve").arg(&path).args(["I", "I"]).output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(String::from_utf8_lossy(&out.stdout), "*\t1\n");
    let out = bin().arg("transform").arg(&path).args(["hom(k[Z3])", "I"]).output().unwrap();
    assert_eq!(String::from_utf8_lossy(&out.stdout), "*\t1\n");
    let out = bin().arg("classify").arg(&path).args(["hom(k[Z3])", "--family-size", "2"]).output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&out.stdout).contains("FULLY_FAITHFUL"));
}
