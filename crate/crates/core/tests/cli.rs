use std::path::PathBuf;
use std::process::Command;

use coxeter_growth::cli::{run, Outcome};

fn systems(name: &str) -> String {
    let root = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../systems");
    root.join(format!("{name}.cox"))
        .to_string_lossy()
        .into_owned()
}

fn coxgrowth(args: &[&str]) -> Outcome {
    run(std::iter::once("coxgrowth").chain(args.iter().copied()))
}

fn schema() -> jsonschema::Validator {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("schema/report.schema.json");
    let schema: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap();
    jsonschema::validator_for(&schema).expect("schema compiles")
}

#[test]
fn growth_of_a2() {
    let out = coxgrowth(&["growth", &systems("a2")]);
    assert_eq!(out.code, 0);
    assert!(
        out.stdout
            .contains("W(t) = (1 + 2*t + 2*t^2 + t^3) / (1)\n"),
        "{}",
        out.stdout
    );
}

#[test]
fn identities_of_the_infinite_dihedral_group() {
    let out = coxgrowth(&["verify", &systems("inf-dihedral"), "--identity", "all"]);
    assert_eq!(out.code, 0);
    let report = out.report.unwrap();
    let statuses: Vec<String> = report
        .checks
        .iter()
        .map(|c| format!("{:?}", c.status))
        .collect();
    assert_eq!(statuses, ["Pass", "NotApplicable", "Pass", "Pass"]);
}

#[test]
fn davis_census_of_tilde_a2() {
    let out = coxgrowth(&[
        "census",
        &systems("tilde-a2"),
        "--complex",
        "davis",
        "--max-length",
        "8",
    ]);
    assert_eq!(out.code, 0, "{}", out.stdout);
    assert!(out.stdout.contains("chi_t = [1, 0, 0, 0, 0, 0, 0, 0, 0]\n"));
}

#[test]
fn catalog_names_work_in_place_of_files() {
    let a = coxgrowth(&["growth", "b3", "--series", "9"]);
    let b = coxgrowth(&["growth", &systems("b3"), "--series", "9"]);
    assert_eq!(a.code, 0);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn self_test_passes() {
    let out = coxgrowth(&["catalog", "--self-test"]);
    assert_eq!(out.code, 0, "{}", out.stdout);
    assert!(out.stdout.ends_with("all checks passed\n"));
}

#[test]
fn exit_codes() {
    assert_eq!(coxgrowth(&["frobnicate"]).code, 2);
    assert_eq!(coxgrowth(&["growth", "a2", "--no-such-flag"]).code, 2);
    assert_eq!(coxgrowth(&["verify", "a2", "--identity", "5"]).code, 2);
    assert_eq!(coxgrowth(&["growth", "no-such-system"]).code, 2);

    let dir = std::env::temp_dir().join(format!("coxgrowth-test-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let bad = dir.join("bad.cox");
    std::fs::write(&bad, "rank 2\nm 1 2 1\n").unwrap();
    let out = coxgrowth(&["growth", bad.to_str().unwrap()]);
    assert_eq!(out.code, 2);
    assert!(out.stderr.contains("line 2"), "{}", out.stderr);
    std::fs::remove_dir_all(&dir).unwrap();

    let out = coxgrowth(&["oracle", "free-product", "--max-length", "40"]);
    assert_eq!(out.code, 1);
    assert!(out.stderr.contains("oracle horizon"), "{}", out.stderr);
    assert_eq!(
        coxgrowth(&["census", "a2", "--complex", "davis", "--max-length", "3"]).code,
        1
    );
}

#[test]
fn output_is_deterministic() {
    let commands: [&[&str]; 4] = [
        &["growth", "triangle-237", "--series", "12"],
        &["chi", "right-angled-4", "--json"],
        &[
            "census",
            "triangle-244",
            "--complex",
            "tits",
            "--max-length",
            "7",
        ],
        &[
            "oracle",
            "h3",
            "--max-length",
            "16",
            "--cross-check",
            "--json",
        ],
    ];
    for args in commands {
        let first = coxgrowth(args);
        let second = coxgrowth(args);
        assert_eq!(first, second, "{args:?}");
    }
}

#[test]
fn json_reports_match_the_schema() {
    let validator = schema();
    let commands: Vec<Vec<&str>> = vec![
        vec!["growth", "a3", "--series", "8"],
        vec!["verify", "tilde-a2", "--identity", "3"],
        vec!["chi", "triangle-244"],
        vec!["census", "a2", "--complex", "coxeter", "--max-length", "3"],
        vec![
            "census",
            "free-product",
            "--complex",
            "davis",
            "--max-length",
            "4",
        ],
        vec!["census", "b3", "--complex", "tits", "--max-length", "9"],
        vec!["oracle", "i2-7", "--max-length", "8", "--cross-check"],
        vec!["catalog"],
        vec!["catalog", "--self-test"],
    ];
    for mut args in commands {
        args.push("--json");
        let out = coxgrowth(&args);
        assert_eq!(out.code, 0, "{args:?}");
        let doc: serde_json::Value = serde_json::from_str(&out.stdout).unwrap();
        if let Err(e) = validator.validate(&doc) {
            panic!("{args:?}: {e}");
        }
        assert_eq!(doc["exit_status"], 0);
        assert_eq!(doc["counterexamples"], serde_json::json!([]));
    }
}

#[test]
fn json_and_text_carry_the_same_verdicts() {
    let text = coxgrowth(&["verify", "h3"]);
    let json = coxgrowth(&["verify", "h3", "--json"]);
    let doc: serde_json::Value = serde_json::from_str(&json.stdout).unwrap();
    for check in doc["checks"].as_array().unwrap() {
        assert!(text.stdout.contains(check["name"].as_str().unwrap()));
    }
    assert_eq!(text.code, json.code);
}

#[test]
fn binary_reports_through_the_process_exit_code() {
    let bin = env!("CARGO_BIN_EXE_coxgrowth");
    let ok = Command::new(bin)
        .args(["growth", &systems("a2")])
        .output()
        .unwrap();
    assert_eq!(ok.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&ok.stdout).contains("W(t) = (1 + 2*t + 2*t^2 + t^3) / (1)"));
    let usage = Command::new(bin).arg("--bogus").output().unwrap();
    assert_eq!(usage.status.code(), Some(2));
    assert!(!usage.stderr.is_empty());
}
