//! End-to-end checks of the binary: exit codes, report shape, determinism.

use std::path::PathBuf;
use std::process::{Command, Output};

fn fixture(name: &str) -> String {
    let p: PathBuf = [env!("CARGO_MANIFEST_DIR"), "tests", "fixtures", name].iter().collect();
    p.to_string_lossy().into_owned()
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_dgalg")).args(args).output().expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = run(args);
    assert!(
        out.status.success(),
        "expected success for {args:?}, stderr: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap()
}

#[test]
fn homology_of_the_mod_two_point() {
    let text = stdout(&["homology", &fixture("mod2_point.txt")]);
    assert!(text.contains("H0: Z/2"), "{text}");
}

#[test]
fn hochschild_report_lists_every_degree_up_to_the_cap() {
    let text = stdout(&["hh", &fixture("trunc_f2.txt"), "--cap", "5"]);
    for d in 0..=5 {
        assert!(text.contains(&format!("H{d}:")), "missing H{d} in {text}");
    }
    assert!(text.contains("exactness: exact"), "{text}");
}

#[test]
fn json_mirrors_the_text_report_field_for_field() {
    let args = ["hh", &fixture("trunc_f2.txt"), "--cap", "5"];
    let text = stdout(&args);
    let json_args: Vec<&str> = std::iter::once("--json").chain(args).collect();
    let json = stdout(&json_args);
    let parsed: serde_json::Value = serde_json::from_str(&json).unwrap();
    let obj = parsed.as_object().unwrap();
    // every text line is a field, and every field appears in the text
    let mut text_keys: Vec<&str> =
        text.lines().filter_map(|l| l.split_once(':').map(|(k, _)| k)).collect();
    text_keys.sort_unstable();
    let mut json_keys: Vec<&str> = obj.keys().map(String::as_str).collect();
    json_keys.sort_unstable();
    assert_eq!(text_keys, json_keys);
    assert_eq!(obj["H5"], "dim 1");
}

#[test]
fn reports_are_byte_identical_across_runs() {
    let cases: Vec<Vec<&str>> = vec![
        vec!["hh", &*Box::leak(fixture("trunc_z.txt").into_boxed_str()), "--cap", "8"],
        vec!["search-basis", &*Box::leak(fixture("ext_z_xy.txt").into_boxed_str())],
        vec![
            "obstruct-square",
            &*Box::leak(fixture("trunc_f2.txt").into_boxed_str()),
            "--cap",
            "4",
            "--control",
        ],
        vec![
            "--json",
            "thh",
            &*Box::leak(fixture("trunc_z.txt").into_boxed_str()),
            &*Box::leak(fixture("thh_z.txt").into_boxed_str()),
            "--cap",
            "8",
        ],
    ];
    for args in &cases {
        let a = run(args);
        let b = run(args);
        assert_eq!(a.stdout, b.stdout, "nondeterministic output for {args:?}");
        assert_eq!(a.status, b.status);
    }
}

#[test]
fn parse_errors_exit_one_with_a_line_number() {
    let dir = std::env::temp_dir().join("dgalg-cli-test");
    std::fs::create_dir_all(&dir).unwrap();
    let bad = dir.join("bad.txt");
    std::fs::write(&bad, "kind presentation\nring F2\ncap 4\ngen x deg 2 kind nope\n").unwrap();
    let out = run(&["hh", bad.to_str().unwrap(), "--cap", "4"]);
    assert_eq!(out.status.code(), Some(1));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("line 4"), "{err}");
}

#[test]
fn missing_files_exit_one() {
    let out = run(&["homology", "/nonexistent/input.txt"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn violated_preconditions_exit_two() {
    let out = run(&[
        "thh",
        &fixture("trunc_z.txt"),
        &fixture("thh_f2.txt"),
        "--cap",
        "8",
    ]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.starts_with("precondition failed:"), "{err}");
}

#[test]
fn negative_verdicts_still_exit_zero() {
    let out = run(&["obstruct-square", &fixture("trunc_f2.txt"), "--cap", "4"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&out.stdout).contains("status: Unsolvable"));
    let out = run(&["search-basis", &fixture("ext_z_xy.txt")]);
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&out.stdout).contains("outcome: ProvenNone"));
}

#[test]
fn the_splitting_flags_integral_torsion() {
    let text = stdout(&[
        "thh",
        &fixture("trunc_z.txt"),
        &fixture("thh_z.txt"),
        "--cap",
        "8",
    ]);
    assert!(text.contains("flag: extension-ambiguous"), "{text}");
    assert!(text.contains("tensor 0: Z"), "{text}");
}

#[test]
fn control_searches_find_their_witnesses() {
    let text = stdout(&[
        "obstruct-square",
        &fixture("trunc_f2.txt"),
        "--cap",
        "4",
        "--control",
    ]);
    assert!(text.contains("status: SolvableWitness"), "{text}");
    assert!(text.contains("witness: xi1"), "{text}");
}

#[test]
fn forced_map_reports_the_unique_survivor() {
    let text = stdout(&[
        "forced-map",
        &fixture("trunc4_f2_x1.txt"),
        "--p",
        "2",
        "--cap",
        "8",
        "--rel",
        "x^4",
    ]);
    assert!(text.contains("survivor count: 1"), "{text}");
}

#[test]
fn power_operations_evaluate_from_the_command_line() {
    let text = stdout(&["apply-dl", "--p", "3", "--op", "bQ1", "--elt", "taubar0", "--cap", "8"]);
    assert!(text.contains("result: 2*zeta1"), "{text}");
    let text = stdout(&[
        "apply-dl", "--p", "2", "--op", "Q2", "--elt", "zeta1", "--cap", "7",
    ]);
    assert!(text.contains("result: zeta2"), "{text}");
}

#[test]
fn extension_status_certifies_the_formal_exterior_dga() {
    let text = stdout(&["extension-status", &fixture("formal_f2_x.txt"), "--formal"]);
    assert!(text.contains("over F2: CertifiedExtension"), "{text}");
}

#[test]
fn canonicalize_round_trips_every_fixture() {
    let dir: PathBuf = [env!("CARGO_MANIFEST_DIR"), "tests", "fixtures"].iter().collect();
    for entry in std::fs::read_dir(&dir).unwrap() {
        let path = entry.unwrap().path();
        let path_str = path.to_string_lossy().into_owned();
        let once = stdout(&["canonicalize", &path_str]);
        // write the canonical form back out and canonicalize again
        let tmp = std::env::temp_dir().join("dgalg-cli-roundtrip.txt");
        std::fs::write(&tmp, &once).unwrap();
        let twice = stdout(&["canonicalize", tmp.to_str().unwrap()]);
        assert_eq!(once, twice, "canonical form of {path_str} is not a fixed point");
    }
}
