use std::process::{Command, Output};

fn composet(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_composet"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn stderr(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).unwrap()
}

#[test]
fn mobius_line() {
    let out = composet(&["mobius", "--u", "abb", "--w", "aabbab", "--d", "3"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out), "mu=-2 normal=2 oracle=-2\n");
    let out = composet(&["mobius", "--u", "a", "--w", "a"]);
    assert_eq!(stdout(&out), "mu=1 normal=1 oracle=1\n");
}

#[test]
fn empty_word_keyword() {
    let out = composet(&["mobius", "--u", "eps", "--w", "ab"]);
    assert_eq!(stdout(&out), "mu=1 normal=1 oracle=1\n");
    let out = composet(&["mobius", "--u", "", "--w", "aa"]);
    assert_eq!(stdout(&out), "mu=0 normal=0 oracle=0\n");
}

#[test]
fn interval_json() {
    let out = composet(&[
        "interval", "--u", "abb", "--w", "aabbab", "--format", "json",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["bottom"], "abb");
    assert_eq!(v["top"], "aabbab");
    assert_eq!(v["d"], 3);
    assert_eq!(v["elements"].as_array().unwrap().len(), 10);
}

#[test]
fn interval_dot() {
    let out = composet(&["interval", "--u", "", "--w", "ab", "--format", "dot"]);
    let text = stdout(&out);
    assert!(text.starts_with("digraph"));
    assert!(text.contains("\"eps\""));
}

#[test]
fn chains_tags() {
    let out = composet(&["chains", "--u", "abb", "--w", "aabbab"]);
    let text = stdout(&out);
    assert_eq!(text.lines().count(), 9);
    let ascending: Vec<&str> = text.lines().filter(|l| l.starts_with("A\t")).collect();
    assert_eq!(ascending, ["A\taabbab > abbab > abab > abb\t(1,3,5)"]);
    assert_eq!(text.lines().filter(|l| l.starts_with("D\t")).count(), 2);
}

#[test]
fn embeddings_listing() {
    let out = composet(&["embeddings", "--u", "abb", "--w", "aabbab", "--normal"]);
    assert_eq!(stdout(&out), "{2,3,4}\n{2,4,6}\n");
    let out = composet(&["embeddings", "--u", "a", "--w", "aa", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v, serde_json::json!([[1], [2]]));
}

#[test]
fn series_listing() {
    let out = composet(&["series", "--kind", "zeta", "--u", "eps", "--max-len", "1"]);
    assert_eq!(stdout(&out), "eps\t1\na\t1\nb\t1\n");
    let out = composet(&[
        "series",
        "--kind",
        "mobius",
        "--u",
        "a",
        "--max-len",
        "2",
        "--format",
        "json",
    ]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert!(v
        .as_array()
        .unwrap()
        .contains(&serde_json::json!(["ab", -1])));
    assert_eq!(v[0], serde_json::json!(["a", 1]));
}

#[test]
fn automaton_check_and_dot() {
    let out = composet(&["automaton", "--kind", "mobius", "--check", "--max-len", "6"]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    assert!(stdout(&out).contains("check passed"));
    let out = composet(&["automaton", "--kind", "zeta", "--emit", "dot"]);
    let text = stdout(&out);
    assert!(text.starts_with("digraph"));
    assert!(text.contains("+eps⊗eps"));
    assert_eq!(text.matches("shape=").count(), 15);
}

#[test]
fn genfun_json() {
    let out = composet(&[
        "genfun", "--kind", "mobius", "--alpha", "2", "--terms", "3", "--format", "json",
    ]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["coeffs"], serde_json::json!([0, 0, 1, -3]));
    let out = composet(&["genfun", "--kind", "zeta", "--alpha", "2", "--terms", "3"]);
    assert!(stdout(&out).ends_with("coeffs: 0 0 1 3\n"));
}

#[test]
fn validation_errors_exit_one() {
    for args in [
        vec!["mobius", "--u", "bbbb", "--w", "bbbb"],
        vec!["mobius", "--u", "ac", "--w", "a"],
        vec!["interval", "--u", "ab", "--w", "ba"],
        vec!["genfun", "--kind", "zeta", "--alpha", "5"],
        vec!["genfun", "--kind", "zeta", "--alpha", "1,0"],
        vec!["mobius", "--u", "a", "--w", "a", "--d", "0"],
    ] {
        let out = composet(&args);
        assert_eq!(out.status.code(), Some(1), "{args:?}");
        assert_eq!(stderr(&out).lines().count(), 1, "{args:?}");
        assert!(stdout(&out).is_empty());
    }
}

#[test]
fn usage_errors_exit_two() {
    for args in [
        vec!["mobius", "--u", "a"],
        vec!["frobnicate"],
        vec!["series", "--kind", "both", "--u", "a"],
        vec!["mobius", "--u", "a", "--w", "a", "--format", "dot"],
    ] {
        assert_eq!(composet(&args).status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn deterministic_output() {
    let args = ["chains", "--u", "ab", "--w", "aabab", "--format", "json"];
    assert_eq!(composet(&args).stdout, composet(&args).stdout);
}

#[test]
fn quick_selftest() {
    let out = composet(&["selftest", "--quick"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert_eq!(text.lines().filter(|l| l.starts_with("PASS")).count(), 8);
}
