use std::io::Write;
use std::process::{Command, Output, Stdio};

fn occupy(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_occupy"))
        .args(args)
        .env_remove("OCCUPY_SOLVE_CAP")
        .output()
        .unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn first_line(o: &Output) -> String {
    stdout(o).lines().next().unwrap_or_default().to_string()
}

#[test]
fn nim_verdict_and_exit_code() {
    let o = occupy(&["nim", "1", "2", "3"]);
    assert_eq!(first_line(&o), "Truth=0");
    assert_eq!(o.status.code(), Some(1));
    let o = occupy(&["nim", "3", "5"]);
    assert_eq!(first_line(&o), "Truth=1");
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn verify_agrees_on_small_grids() {
    for variant in ["nim", "subtraction"] {
        for sizes in [vec!["1", "2", "3"], vec!["4"], vec!["2", "2"], vec![]] {
            let mut args = vec![variant, "--verify"];
            args.extend(&sizes);
            let o = occupy(&args);
            let text = stdout(&o);
            let truth = text.lines().next().unwrap();
            let bit = truth.strip_prefix("Truth=").unwrap();
            for label in ["closed form", "pile recursion", "explicit game"] {
                assert!(text.contains(&format!("{label} {bit}")), "{text}");
            }
            assert_eq!(o.status.code(), Some(if bit == "1" { 0 } else { 1 }));
        }
    }
}

#[test]
fn reduce_with_witness() {
    let o = occupy(&["reduce", "--weights", "1,2", "--target", "3", "--witness"]);
    assert_eq!(stdout(&o), "Truth=1\nwitness {1,2}\nsum 1+2=3\n");
    assert_eq!(o.status.code(), Some(0));
    let o = occupy(&["reduce", "--weights", "2,2", "--target", "3", "--witness"]);
    assert_eq!(stdout(&o), "Truth=0\nwitness none\n");
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn reduce_warns_on_unreachable_target() {
    let o = occupy(&["reduce", "--weights", "1", "--target", "3"]);
    assert_eq!(first_line(&o), "Truth=0");
    assert!(String::from_utf8_lossy(&o.stderr).contains("warning: target 3 exceeds"));
}

#[test]
fn oracle_verdicts() {
    let o = occupy(&["oracle", "--weights", "2,2", "--target", "3"]);
    assert_eq!(stdout(&o), "false\n");
    assert_eq!(o.status.code(), Some(1));
    let o = occupy(&["oracle", "--weights", "2,2", "--target", "4"]);
    assert_eq!(stdout(&o), "true\n");
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn usage_errors_exit_2() {
    for args in [
        vec!["frobnicate"],
        vec!["oracle", "--weights", "1.5", "--target", "2"],
        vec!["oracle", "--target", "2"],
        vec!["nim", "x"],
        vec!["--cap", "65", "nim", "1"],
    ] {
        assert_eq!(occupy(&args).status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn data_errors_exit_3() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, r#"{"elements": ["a"], "states": {"kind": "all"}, "moves": {"kind": "explicit", "sets": [[]]}, "start": ["a"]}"#).unwrap();
    let missing = dir.path().join("missing.json");
    for args in [
        vec!["oracle", "--weights", "0,1", "--target", "1"],
        vec!["reduce", "--weights", "1", "--target", "0"],
        vec!["solve", bad.to_str().unwrap()],
        vec!["solve", missing.to_str().unwrap()],
        vec!["nim", "20", "20", "--verify"],
    ] {
        let o = occupy(&args);
        assert_eq!(o.status.code(), Some(3), "{args:?}");
        assert!(String::from_utf8_lossy(&o.stderr).starts_with("error: "));
    }
}

#[test]
fn cap_flag_and_environment() {
    let o = occupy(&["--cap", "4", "nim", "3", "2", "--verify"]);
    assert_eq!(o.status.code(), Some(3));
    let o = Command::new(env!("CARGO_BIN_EXE_occupy"))
        .args(["nim", "3", "2", "--verify"])
        .env("OCCUPY_SOLVE_CAP", "4")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(3));
    let o = occupy(&["--cap", "5", "nim", "3", "2", "--verify"]);
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn emitted_gadget_solves_to_the_same_verdict() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("gadget.json");
    let o = occupy(&[
        "reduce",
        "--weights",
        "1,2",
        "--target",
        "3",
        "--emit-game",
        path.to_str().unwrap(),
    ]);
    assert_eq!(first_line(&o), "Truth=1");
    let doc: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(doc["elements"].as_array().unwrap().len(), 20);
    assert_eq!(doc["elements"][0], "v0");
    assert_eq!(doc["states"]["kind"], "band");
    let o = occupy(&["solve", path.to_str().unwrap()]);
    assert_eq!(first_line(&o), "Truth=1");
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).lines().nth(1).unwrap().starts_with("winning move {"));
}

#[test]
fn solve_reports_a_winning_move() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("g.json");
    std::fs::write(
        &path,
        r#"{"elements": ["a", "b"], "states": {"kind": "all"}, "moves": {"kind": "explicit", "sets": [["a"], ["a", "b"]]}, "start": ["a", "b"]}"#,
    )
    .unwrap();
    let o = occupy(&["solve", path.to_str().unwrap()]);
    assert_eq!(stdout(&o), "Truth=1\nwinning move {a}\n");
}

#[test]
fn play_session_over_stdin() {
    let mut child = Command::new(env!("CARGO_BIN_EXE_occupy"))
        .args(["play", "nim", "1", "1"])
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(b"1\n").unwrap();
    let o = child.wait_with_output().unwrap();
    let text = stdout(&o);
    assert!(text.starts_with("Truth=0 for you"), "{text}");
    assert!(text.contains("engine: take 1 from pile 2"));
    assert!(text.ends_with("no moves left for you: the engine wins\n"));
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn play_gadget_with_engine_first() {
    let mut child = Command::new(env!("CARGO_BIN_EXE_occupy"))
        .args(["play", "gadget", "--weights", "1,2", "--target", "3", "--engine-first"])
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(b"q\n").unwrap();
    let o = child.wait_with_output().unwrap();
    let text = stdout(&o);
    assert!(text.contains("engine: O1: remove pile 1 and draw 4 from L"), "{text}");
    assert!(text.contains("1) O2: one from W and one from L"));
}
