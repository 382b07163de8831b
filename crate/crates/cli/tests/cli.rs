use std::path::PathBuf;
use std::process::{Command, Output};

fn data(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests/data")
        .join(name)
        .to_string_lossy()
        .into_owned()
}

fn rsep(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_rsep"))
        .args(args)
        .output()
        .expect("run rsep")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn first_line(o: &Output) -> String {
    stdout(o).lines().next().unwrap_or_default().to_string()
}

#[test]
fn member_with_certificate() {
    let o = rsep(&["member", &data("ab+.aut"), "(ab)^w a", "--certify"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert_eq!(first_line(&o), "MEMBER");
    assert!(out.contains("witness: (ab)^w a"));
    assert!(out.contains("verified=true"));
}

#[test]
fn non_member_exits_one() {
    let o = rsep(&["member", &data("a+.aut"), "b^w"]);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(first_line(&o), "NOT_MEMBER");
}

#[test]
fn separable_languages_agree_with_oracle() {
    let o = rsep(&[
        "separate",
        &data("a+.aut"),
        &data("b+.aut"),
        "--oracle",
        "2",
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(first_line(&o), "SEPARABLE");
    assert!(stdout(&o).contains("agrees"));
}

#[test]
fn inseparable_languages_print_a_witness() {
    let o = rsep(&[
        "separate",
        &data("ab+.aut"),
        &data("ab-star-a.aut"),
        "--certify",
    ]);
    assert_eq!(o.status.code(), Some(1));
    let out = stdout(&o);
    assert_eq!(first_line(&o), "NOT_SEPARABLE");
    assert!(out.contains("witness: (ab)^w"));
    assert_eq!(out.matches("verified=true").count(), 2);
}

#[test]
fn stats_carry_no_timing_by_default() {
    let args = ["separate", &data("ab+.aut"), &data("ab-star-a.aut")];
    let a = stdout(&rsep(&args));
    let b = stdout(&rsep(&[&args[..], &["--sequential"]].concat()));
    assert_eq!(a, b);
    assert!(!a.contains("elapsed"));
    let timed = stdout(&rsep(&[&args[..], &["--timing"]].concat()));
    assert!(timed.contains("elapsed_ms="));
}

#[test]
fn pointlike_verdicts() {
    let o = rsep(&["pointlike", &data("right-zero.sgp"), "x y"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(first_line(&o), "POINTLIKE");

    let o = rsep(&[
        "pointlike",
        &data("right-zero.sgp"),
        "x",
        "y",
        "--idempotent",
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(first_line(&o), "IDEMPOTENT_POINTLIKE");

    let o = rsep(&["pointlike", &data("left-zero.sgp"), "x", "y"]);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(first_line(&o), "NOT_POINTLIKE");
}

#[test]
fn build_reports_size_and_bound() {
    let o = rsep(&["build", &data("a+.aut"), "--dump"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.starts_with("size: 14\nbound: 6144\n"));
    assert!(out.contains("(ab)^w"));
}

#[test]
fn regex_input() {
    let o = rsep(&["member", "--regex", "--alphabet", "ab", "a(a|b)*", "ab^w"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(first_line(&o), "MEMBER");

    let o = rsep(&["member", "--regex", "--alphabet", "ab", "(ab)*", "a"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn input_errors_exit_two() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.aut");
    std::fs::write(&bad, "alphabet a\nstates 1\ninitial 3\n").unwrap();
    let o = rsep(&["member", bad.to_str().unwrap(), "a"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(!o.stderr.is_empty());

    let o = rsep(&["member", &data("a+.aut"), "c^w"]);
    assert_eq!(o.status.code(), Some(2));

    let o = rsep(&["pointlike", &data("right-zero.sgp"), "z"]);
    assert_eq!(o.status.code(), Some(2));

    let o = rsep(&["separate", &data("a+.aut")]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn capacity_exceeded_exits_three() {
    let o = rsep(&["--cap", "2", "build", &data("ab+.aut")]);
    assert_eq!(o.status.code(), Some(3));
}
