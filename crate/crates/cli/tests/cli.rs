//! End-to-end checks of the binary: outputs and the exit-code contract.

use std::io::Write;
use std::path::Path;
use std::process::{Command, Output, Stdio};

use basis_reconfig::ProblemInstance;

const K4: &str = r#"{"matroids":[
 {"type":"graphic","vertices":4,"edges":[[0,1,"01"],[0,2,"02"],[0,3,"03"],[1,2,"12"],[1,3,"13"],[2,3,"23"]]},
 {"type":"graphic","vertices":4,"edges":[[0,1,"01"],[0,2,"02"],[0,3,"03"],[1,2,"12"],[1,3,"13"],[2,3,"23"]]}],
 "source":[["01","12","23"],["02","03","13"]],
 "target":[["02","03","13"],["01","12","23"]]}"#;

const SWAP: &str = r#"{"matroids":[
 {"type":"uniform","elements":["a","b","c"],"rank":1},
 {"type":"uniform","elements":["a","b","c"],"rank":1}],
 "source":[["a"],["b"]],"target":[["b"],["a"]]}"#;

const SET_COVER: &str = r#"{"universe":["a","b","c","d"],"sets":[["a","b"],["c","d"],["a","c"],["b"]]}"#;

fn run(args: &[&str], stdin: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_basis-reconfig"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("binary runs");
    child.stdin.take().unwrap().write_all(stdin.as_bytes()).unwrap();
    child.wait_with_output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p.to_str().unwrap().to_owned()
}

#[test]
fn decide_yes_and_no() {
    let yes = run(&["decide"], SWAP);
    assert_eq!(yes.status.code(), Some(0));
    assert_eq!(stdout(&yes), "YES\n");

    let no = run(&["decide"], K4);
    assert_eq!(no.status.code(), Some(1));
    let text = stdout(&no);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("NO"));
    let cert: serde_json::Value = serde_json::from_str(lines.next().unwrap()).unwrap();
    assert_eq!(cert["coloops"].as_array().unwrap().len(), 6);
    assert_eq!(cert["source"][0], serde_json::json!(["01", "12", "23"]));
}

#[test]
fn solve_pipes_into_verify() {
    let dir = tempfile::tempdir().unwrap();
    let inst = write(dir.path(), "swap.json", SWAP);
    let solved = run(&["solve", "-i", &inst], "");
    assert_eq!(solved.status.code(), Some(0));
    let lines: Vec<serde_json::Value> =
        stdout(&solved).lines().map(|l| serde_json::from_str(l).unwrap()).collect();
    assert_eq!(lines.len(), 3);
    assert_eq!(lines[0]["step"], 0);
    assert!(stdout(&solved).starts_with(r#"{"step":0,"matroid":"#));

    let checked = run(&["verify", "-i", &inst, "--moves", "-"], &stdout(&solved));
    assert_eq!(checked.status.code(), Some(0), "{}", stderr(&checked));
    let report: serde_json::Value = serde_json::from_str(&stdout(&checked)).unwrap();
    assert_eq!(report["ok"], true);
}

#[test]
fn verify_rejects_bad_moves() {
    let dir = tempfile::tempdir().unwrap();
    let inst = write(dir.path(), "swap.json", SWAP);
    let moves = write(dir.path(), "bad.jsonl", "{\"matroid\":0,\"remove\":\"a\",\"add\":\"b\"}\n");
    let out = run(&["verify", "-i", &inst, "-m", &moves], "");
    assert_eq!(out.status.code(), Some(1));
    let report: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(report["failed_step"], 0);
    assert_eq!(report["reason"]["kind"], "overlap");

    let empty = write(dir.path(), "empty.json", "[]");
    let out = run(&["verify", "-i", &inst, "-m", &empty], "");
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout(&out).contains("terminal_mismatch"));
}

#[test]
fn no_instance_solvers_exit_one() {
    assert_eq!(run(&["solve"], K4).status.code(), Some(1));
    assert_eq!(run(&["brute-solve"], K4).status.code(), Some(1));
    let brute = run(&["brute-solve"], SWAP);
    assert_eq!(brute.status.code(), Some(0));
    assert_eq!(stdout(&brute).lines().count(), 3);
}

#[test]
fn input_errors_exit_two() {
    let bogus = run(&["bogus"], "");
    assert_eq!(bogus.status.code(), Some(2));
    assert!(stderr(&bogus).contains("Usage"));

    let parse = run(&["decide"], "{\"matroids\": [");
    assert_eq!(parse.status.code(), Some(2));
    assert!(stderr(&parse).contains("line"));

    let overlap = SWAP.replace(r#""source":[["a"],["b"]]"#, r#""source":[["a"],["a"]]"#);
    let out = run(&["decide"], &overlap);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("source bases 0 and 1 share element a"), "{}", stderr(&out));

    let missing = run(&["coloops", "-i", "/definitely/not/here.json"], "");
    assert_eq!(missing.status.code(), Some(2));

    let cap = run(&["brute-solve", "--cap-states", "1"], SWAP);
    assert_eq!(cap.status.code(), Some(2));
}

#[test]
fn coloop_commands_agree() {
    for seed in 0..15 {
        let inst = run(&["random", "--seed", &seed.to_string(), "-k", "2", "--size", "7"], "");
        assert_eq!(inst.status.code(), Some(0), "{}", stderr(&inst));
        let fast = run(&["coloops"], &stdout(&inst));
        let slow = run(&["brute-coloops"], &stdout(&inst));
        assert_eq!(fast.status.code(), Some(0));
        assert_eq!(stdout(&fast), stdout(&slow));
    }
    assert_eq!(stdout(&run(&["coloops"], K4)), "[\"01\",\"02\",\"03\",\"12\",\"13\",\"23\"]\n");
}

#[test]
fn random_is_deterministic_and_round_trips() {
    let args = ["random", "--seed", "11", "-k", "3", "--profile", "partition", "--size", "9"];
    let a = stdout(&run(&args, ""));
    let b = stdout(&run(&args, ""));
    assert_eq!(a, b);
    let inst = ProblemInstance::from_json(&a).unwrap();
    assert_eq!(inst.to_json().unwrap(), a);

    let walk = run(&["random", "--seed", "4", "--size", "8", "--yes-by-walk"], "");
    assert_eq!(run(&["decide"], &stdout(&walk)).status.code(), Some(0));
    assert_eq!(run(&["random", "-k", "0"], "").status.code(), Some(2));
    assert_eq!(run(&["random", "--profile", "cubic"], "").status.code(), Some(2));
}

#[test]
fn gadget_pipeline() {
    let dir = tempfile::tempdir().unwrap();
    let sc = write(dir.path(), "sc.json", SET_COVER);
    let gadget = run(&["gen-gadget", "-i", &sc], "");
    assert_eq!(gadget.status.code(), Some(0));
    assert!(stderr(&gadget).is_empty());
    let text = stdout(&gadget);
    assert_eq!(ProblemInstance::from_json(&text).unwrap().to_json().unwrap(), text);
    let inst = write(dir.path(), "gadget.json", &text);

    let seq = run(&["cover2seq", "-i", &sc, "--cover", "0,1"], "");
    assert_eq!(seq.status.code(), Some(0));
    // 2|C|L + 7n with L = 2n^2 = 32
    assert_eq!(stdout(&seq).lines().count(), 2 * 2 * 32 + 7 * 4);
    let moves = write(dir.path(), "moves.jsonl", &stdout(&seq));
    assert_eq!(run(&["verify", "-i", &inst, "-m", &moves], "").status.code(), Some(0));
    let back = run(&["seq2cover", "-i", &sc, "-m", &moves], "");
    assert_eq!(back.status.code(), Some(0));
    assert_eq!(stdout(&back), "[0,1]\n");

    let not_cover = run(&["cover2seq", "-i", &sc, "--cover", "0"], "");
    assert_eq!(not_cover.status.code(), Some(2));
    let bad = write(dir.path(), "bad.jsonl", "");
    assert_eq!(run(&["seq2cover", "-i", &sc, "-m", &bad], "").status.code(), Some(1));
}

#[test]
fn small_gadget_warns() {
    let out = run(&["gen-gadget"], r#"{"universe":["u"],"sets":[["u"]]}"#);
    assert_eq!(out.status.code(), Some(0));
    assert!(stderr(&out).contains("warning"));
}

#[test]
fn graph_and_output_file() {
    let dir = tempfile::tempdir().unwrap();
    let target = dir.path().join("g.dot");
    let out = run(&["graph", "-o", target.to_str().unwrap()], SWAP);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).is_empty());
    let dot = std::fs::read_to_string(target).unwrap();
    assert!(dot.starts_with("digraph"));
    assert!(dot.contains("\"a\" -> \"c\""), "{dot}");
}
