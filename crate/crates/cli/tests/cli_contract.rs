//! Exit-code contract of the installed binary, exercised end to end.

use std::io::Write;
use std::process::{Command, Stdio};

fn run(args: &[&str]) -> (i32, String, String) {
    let output = Command::new(env!("CARGO_BIN_EXE_singeq"))
        .args(args)
        .output()
        .expect("binary runs");
    (
        output.status.code().unwrap_or(-1),
        String::from_utf8_lossy(&output.stdout).into_owned(),
        String::from_utf8_lossy(&output.stderr).into_owned(),
    )
}

#[test]
fn classify_equivalent_pair_exits_zero() {
    let (code, out, _) =
        run(&["classify", "--vars", "z0", "z0^3", "--vars", "z0,w1,w2", "z0^3+w1^2+w2^2"]);
    assert_eq!(code, 0);
    assert!(out.contains(r#""outcome":"equivalent""#));
    assert!(out.contains(r#""squares_added":2"#));
}

#[test]
fn classify_parity_obstruction_exits_zero() {
    let (code, out, _) =
        run(&["classify", "--vars", "z0", "z0^3", "--vars", "z0,w1", "z0^3+w1^2"]);
    assert_eq!(code, 0, "negative verdicts are successful computations");
    assert!(out.contains(r#""outcome":"not_equivalent""#));
    assert!(out.contains("parity_obstruction"));
}

#[test]
fn parse_errors_exit_two() {
    let (code, out, err) = run(&["invariants", "--vars", "z0", "z0^"]);
    assert_eq!(code, 2);
    assert!(out.is_empty(), "diagnostics go to stderr only");
    assert!(err.contains("column 4"));
    let (code2, _, _) = run(&["invariants", "--vars", "z0", "z0", "--format", "yaml"]);
    assert_eq!(code2, 2);
    let (code3, _, _) = run(&["no-such-command"]);
    assert_eq!(code3, 2);
}

#[test]
fn precondition_violations_exit_three() {
    let (code, _, err) = run(&["invariants", "--vars", "z0,z1", "z0^2*z1"]);
    assert_eq!(code, 3);
    assert!(err.contains("non-isolated"));
    // order < 2 for classification
    let (code2, _, _) = run(&["classify", "--vars", "z0", "z0", "--vars", "z0", "z0^2"]);
    assert_eq!(code2, 3);
}

#[test]
fn budget_exhaustion_exits_four() {
    let (code, _, err) = run(&[
        "classify",
        "--vars",
        "z0,z1",
        "z0^9+z1^9",
        "--vars",
        "z0,z1",
        "z0^9+z1^8",
        "--degree-cap",
        "3",
    ]);
    assert_eq!(code, 4, "stderr: {err}");
}

#[test]
fn mf_pipeline_through_files() {
    let dir = std::env::temp_dir().join("singeq-cli-contract");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("mf.json");
    std::fs::write(
        &path,
        r#"{"schema_version":"1","ring":{"variables":["z"]},"payload":{"mf":{"A":[["z"]],"B":[["z"]],"f":"z^2"}}}"#,
    )
    .unwrap();
    let p = path.to_str().unwrap();

    let (code, out, _) = run(&["mf-validate", "--input", p]);
    assert_eq!(code, 0);
    assert!(out.contains(r#""f":"z^2""#));

    let (code, out, _) = run(&["mf-knoerrer", "--input", p, "--fresh", "x,y"]);
    assert_eq!(code, 0);
    assert!(out.contains("z^2 + x*y"));

    let (code, out, _) = run(&["mf-hom", "--source", p, "--target", p, "--degree-bound", "4"]);
    assert_eq!(code, 0);
    assert!(out.contains(r#""dimension":1"#));
    assert!(out.contains(r#""stabilized":true"#));

    let (code, out, _) = run(&[
        "mf-cone", "--source", p, "--target", p, "--u", r#"[["1"]]"#, "--v", r#"[["1"]]"#,
    ]);
    assert_eq!(code, 0);
    assert!(out.contains(r#""mf""#));

    // an invalid factorization is a precondition failure
    let bad = dir.join("bad.json");
    std::fs::write(
        &bad,
        r#"{"schema_version":"1","ring":{"variables":["z"]},"payload":{"mf":{"A":[["z"]],"B":[["z"]],"f":"z^3"}}}"#,
    )
    .unwrap();
    let (code, _, err) = run(&["mf-validate", "--input", bad.to_str().unwrap()]);
    assert_eq!(code, 3);
    assert!(err.contains("entry (0, 0)"));
}

#[test]
fn batch_mode_reads_stdin() {
    let mut child = Command::new(env!("CARGO_BIN_EXE_singeq"))
        .args(["classify", "--batch", "--verify"])
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    let lines = concat!(
        r#"{"left":{"variables":["z0"],"germ":"z0^3"},"right":{"variables":["z0"],"germ":"z0^4"}}"#,
        "\n",
        r#"{"left":{"variables":["z0","z1"],"germ":"z0^2+z1^2"},"right":{"variables":["z0","z1"],"germ":"z0*z1"}}"#,
        "\n",
    );
    child.stdin.as_mut().unwrap().write_all(lines.as_bytes()).unwrap();
    let output = child.wait_with_output().unwrap();
    assert_eq!(output.status.code(), Some(0));
    let stdout = String::from_utf8_lossy(&output.stdout);
    let out_lines: Vec<&str> = stdout.lines().collect();
    assert_eq!(out_lines.len(), 2);
    assert!(out_lines[0].contains("not_equivalent"));
    assert!(out_lines[1].contains(r#""outcome":"equivalent""#));
}

#[test]
fn replay_accepts_saved_verdicts_and_rejects_tampering() {
    let dir = std::env::temp_dir().join("singeq-cli-replay");
    std::fs::create_dir_all(&dir).unwrap();
    let (code, out, _) = run(&["classify", "--vars", "z0", "z0^3", "--vars", "z0", "z0^4"]);
    assert_eq!(code, 0);
    let path = dir.join("verdict.json");
    std::fs::write(&path, out.trim()).unwrap();
    let (code, replayed, _) = run(&["classify", "--replay", path.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert_eq!(replayed.trim(), out.trim());

    // tamper with the recorded tau values
    let tampered = out.replace(r#""left":[2]"#, r#""left":[5]"#);
    assert_ne!(tampered, out);
    let bad_path = dir.join("tampered.json");
    std::fs::write(&bad_path, tampered.trim()).unwrap();
    let (code, _, err) = run(&["classify", "--replay", bad_path.to_str().unwrap()]);
    assert_eq!(code, 3);
    assert!(err.contains("replay failed"));
}
