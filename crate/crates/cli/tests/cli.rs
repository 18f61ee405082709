use std::process::{Command, Output};

fn verify(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_verify")).args(args).output().expect("run verify")
}

#[test]
fn orbit_reports_witness() {
    let out = verify(&["orbit", "--x", "0.3", "--y", "1.7"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.contains("equivalent=true witness=-2"), "{text}");
}

#[test]
fn json_mode_keeps_stdout_pure() {
    let out = verify(&["picard", "--x", "2", "--json"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("{\"checks\":[") && text.ends_with("\"version\":\"1\"}\n"), "{text}");
    assert!(text.contains("\"group\":\"Z2\""));
    assert!(String::from_utf8_lossy(&out.stderr).contains("pass picard"));
}

#[test]
fn invalid_input_exits_with_two() {
    assert_eq!(verify(&["relations", "--q", "1.5"]).status.code(), Some(2));
    assert_eq!(verify(&["theta", "--l", "0.3"]).status.code(), Some(2));
    assert_eq!(verify(&["relations", "--alg", "nope"]).status.code(), Some(2));
    assert_eq!(verify(&["bogus"]).status.code(), Some(2));
}

#[test]
fn failing_check_exits_with_one() {
    // A zero tolerance cannot hold against roundoff in the Casimir eigenvectors.
    assert_eq!(verify(&["casimir", "--N", "16", "--tol", "0"]).status.code(), Some(1));
}
