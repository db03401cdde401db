use std::process::Command;

use kmcrystal::path_crystal::CrystalJson;
use kmcrystal::{generate_complete, CartanData, CrystalGraph};
use kmcrystal_cli::{run, Outcome, OUTPUT_DIR_ENV};
use proptest::prelude::*;

fn cli(args: &[&str]) -> Outcome {
    run(std::iter::once("kmcrystal").chain(args.iter().copied()))
}

fn ok(args: &[&str]) -> String {
    let out = cli(args);
    assert_eq!(out.code, 0, "{args:?}: {}", out.stderr);
    out.stdout
}

#[test]
fn signature_example() {
    let out = ok(&["signature", "--cartan", "A1", "--hw", "3,3,3", "--label", "-1,1,1", "--i", "0"]);
    assert!(out.contains("signature: (++−+−−+−−)"));
    assert!(out.contains("reduced:   (++−−−)"));
    assert!(out.contains("crossed positions: 3,4,6,7"));
    assert!(out.contains("h+ = 2, h- = 3"));
    assert!(out.contains("h-_k for k = 1..3: 3,3,2"));
    assert!(out.contains("e acts in factor 1"));
    assert!(out.contains("f acts in factor 2"));
}

#[test]
fn tensor_operator_example() {
    let out = ok(&["tensor-op", "--cartan", "A1", "--hw", "3,3,3", "--label", "-1,1,1", "--op", "e", "--i", "0"]);
    assert_eq!(out.trim(), "e_0 (-1;1;1) = (1;1;1) (acts in factor 1)");
    let out = ok(&["tensor-op", "--cartan", "A1", "--hw", "3,3,3", "--label", "-1,1,1", "--op", "f", "--i", "0"]);
    assert!(out.contains("(-1;-1;1)"), "{out}");
}

#[test]
fn decompose_and_condense_examples() {
    let out = ok(&["decompose", "--cartan", "A2", "--hw", "1,0;0,1"]);
    assert!(out.contains("B(0,0) x1, size 1"));
    assert!(out.contains("B(1,1) x1, size 8 (Cartan component)"));
    let out = ok(&["decompose", "--cartan", "A1", "--hw", "1,1,1"]);
    assert!(out.contains("B(1) x2"));
    assert!(out.contains("B(3) x1"));
    let out = ok(&["condense", "--partition", "7,5,1,1,1,1,1", "--p", "3", "--r", "0"]);
    assert!(out.contains("marked boxes: (0,9) (1,7) (1,4) (2,2) (5,2) (7,1) (9,0)"));
    assert!(out.contains("m: 2,3,2,0,1,1"));
}

#[test]
fn string_param_and_compare() {
    let out = ok(&["string-param", "--cartan", "A2", "--hw", "1,1", "--label=-1,-1"]);
    assert!(out.contains("factor 1: (1,2,1)"));
    assert_eq!(
        ok(&["compare", "--cartan", "A1", "--mode", "tuple", "--a", "1;1", "--b", "3;-1"]).trim(),
        "a is greater than b"
    );
}

#[test]
fn verify_passes_on_small_inputs() {
    let out = ok(&["verify", "--cartan", "A2", "--hw", "1,0;0,1"]);
    assert!(!out.is_empty());
}

#[test]
fn exit_codes() {
    let unknown = cli(&["crystal", "--cartan", "Q7", "--hw", "1"]);
    assert_eq!(unknown.code, 1);
    assert!(unknown.stderr.contains("UnknownCartan"), "{}", unknown.stderr);
    let ambiguous = cli(&["signature", "--cartan", "A2", "--hw", "1,1", "--label", "0,0", "--i", "0"]);
    assert_eq!(ambiguous.code, 1);
    assert!(ambiguous.stderr.contains("AmbiguousElement"));
    assert_eq!(cli(&["crystal", "--cartan", "A1", "--hw", "-1"]).code, 1);
    assert_eq!(cli(&["crystal", "--bogus"]).code, 2);
    assert_eq!(cli(&["crystal", "--cartan", "A1"]).code, 2);
    assert_eq!(cli(&["decompose", "--cartan", "A1", "--hw", "1,1", "--format", "dot"]).code, 2);
    assert_eq!(cli(&["signature", "--cartan", "A1", "--hw", "1", "--label", "x", "--i", "0"]).code, 2);
    assert_eq!(cli(&[]).code, 2);
    let help = cli(&["--help"]);
    assert_eq!(help.code, 0);
    assert!(help.stdout.contains("Usage"));
}

#[test]
fn emitted_configs_replay_identically() {
    let dir = tempfile::tempdir().unwrap();
    let cases: &[&[&str]] = &[
        &["signature", "--cartan", "A1", "--hw", "3,3,3", "--label", "-1,1,1", "--i", "0"],
        &["decompose", "--cartan", "B2", "--hw", "1,0;0,1", "--format", "json"],
        &["crystal", "--cartan-matrix", "2,-1;-3,2", "--hw", "0,1", "--format", "dot"],
        &["condense", "--partition", "4,2,1", "--p", "2", "--r", "1", "--format", "json"],
    ];
    for (k, args) in cases.iter().enumerate() {
        let direct = ok(args);
        let mut with_emit = args.to_vec();
        with_emit.push("--emit-config");
        let config = ok(&with_emit);
        let path = dir.path().join(format!("job{k}.json"));
        std::fs::write(&path, config).unwrap();
        let replay = ok(&["run", "--config", path.to_str().unwrap()]);
        assert_eq!(replay, direct, "{args:?}");
        assert_eq!(ok(args), direct, "{args:?} is not deterministic");
    }
}

#[test]
fn malformed_configs_are_usage_errors() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.json");
    std::fs::write(&path, r#"{"schema_version": 1, "surprise": true}"#).unwrap();
    assert_eq!(cli(&["run", "--config", path.to_str().unwrap()]).code, 2);
    std::fs::write(&path, r#"{"schema_version": 99, "cartan": null, "hw": [], "depth": null, "format": "text", "seed": 0, "command": {"name": "decompose"}}"#).unwrap();
    assert_eq!(cli(&["run", "--config", path.to_str().unwrap()]).code, 2);
    assert_eq!(cli(&["run", "--config", dir.path().join("missing.json").to_str().unwrap()]).code, 1);
}

#[test]
fn json_crystal_export_round_trips() {
    let out = ok(&["crystal", "--cartan", "G2", "--hw", "1,0", "--format", "json"]);
    let json: CrystalJson = serde_json::from_str(&out).unwrap();
    let back = CrystalGraph::from_json(&json).unwrap();
    let original = generate_complete(&CartanData::from_name("G2").unwrap(), &[1, 0]).unwrap();
    assert_eq!(back.sorted_keys(), original.sorted_keys());
    assert_eq!(back.edges().len(), original.edges().len());
}

#[test]
fn dot_output_is_sorted_and_complete() {
    let out = ok(&["crystal", "--cartan", "A2", "--hw", "1,0", "--format", "dot"]);
    assert!(out.starts_with("digraph crystal {"));
    assert_eq!(out.matches(" -> ").count(), 2);
    assert_eq!(out.matches("tooltip").count(), 3);
}

#[test]
fn output_directory_from_environment() {
    let dir = tempfile::tempdir().unwrap();
    let status = Command::new(env!("CARGO_BIN_EXE_kmcrystal"))
        .args(["decompose", "--cartan", "A1", "--hw", "1,1", "--output", "out.txt"])
        .env(OUTPUT_DIR_ENV, dir.path())
        .output()
        .unwrap();
    assert!(status.status.success());
    assert!(status.stdout.is_empty());
    let written = std::fs::read_to_string(dir.path().join("out.txt")).unwrap();
    assert!(written.contains("B(2) x1"));
    let failed = Command::new(env!("CARGO_BIN_EXE_kmcrystal")).args(["crystal", "--cartan", "Q1"]).output().unwrap();
    assert_eq!(failed.status.code(), Some(1));
}

fn token() -> impl Strategy<Value = String> {
    prop_oneof![
        Just("crystal".to_string()),
        Just("signature".to_string()),
        Just("tensor-op".to_string()),
        Just("decompose".to_string()),
        Just("condense".to_string()),
        Just("compare".to_string()),
        Just("string-param".to_string()),
        Just("--cartan".to_string()),
        Just("--hw".to_string()),
        Just("--label".to_string()),
        Just("--i".to_string()),
        Just("--op".to_string()),
        Just("--mode".to_string()),
        Just("--format".to_string()),
        Just("--partition".to_string()),
        Just("--p".to_string()),
        Just("--r".to_string()),
        Just("--word".to_string()),
        Just("--cartan-matrix".to_string()),
        Just("A1".to_string()),
        Just("A2".to_string()),
        Just("A1^(1)".to_string()),
        "[-2-9,;@/]{0,3}",
        "[a-z]{0,4}",
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn flag_parser_never_panics(args in proptest::collection::vec(token(), 0..10)) {
        let out = std::panic::catch_unwind(|| cli(&args.iter().map(String::as_str).collect::<Vec<_>>()));
        prop_assert!(out.is_ok(), "panic on {:?}", args);
        let out = out.unwrap();
        prop_assert!([0, 1, 2].contains(&out.code), "{:?} exited {}", args, out.code);
    }
}
