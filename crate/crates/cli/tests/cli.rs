use std::fs;
use std::path::PathBuf;
use std::process::{Command, Output};

fn data(name: &str) -> String {
    let p: PathBuf = [env!("CARGO_MANIFEST_DIR"), "tests", "data", name].iter().collect();
    p.display().to_string()
}

fn stnf(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_stnf")).args(args).env_remove("STNF_EPSILON").output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn validate_reports_per_atom() {
    let ok = stnf(&["validate", &data("running.json")]);
    assert_eq!(ok.status.code(), Some(0));
    assert_eq!(stdout(&ok), "running atom 0: ok\nrunning atom 1: ok\n");
    let bad = stnf(&["validate", &data("singular.json")]);
    assert_eq!(bad.status.code(), Some(1));
    assert!(stdout(&bad).contains("singular-at-2"));
}

#[test]
fn malformed_input_exits_2_with_position() {
    let o = stnf(&["validate", &data("malformed.json")]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 2, column 16"));
    let missing = stnf(&["partition", &data("no_such_file.json")]);
    assert_eq!(missing.status.code(), Some(2));
}

#[test]
fn partition_lists() {
    let o = stnf(&["partition", &data("running.json")]);
    assert_eq!(stdout(&o), "[[0,1],[1,2],[3,2],[5,2],[7,2],[4,1]]\n");
    assert_eq!(stdout(&stnf(&["partition", &data("static.json")])), "[[0,1],[4,1]]\n");
    assert_eq!(stdout(&stnf(&["partition", &data("two_intervals.json")])), "[[0,1],[1,1],[2,1],[3,1]]\n");
    let invalid = stnf(&["partition", &data("singular.json")]);
    assert_eq!(invalid.status.code(), Some(1));
}

#[test]
fn triangulate_is_deterministic_and_a_fixpoint() {
    let dir = tempfile::tempdir().unwrap();
    let first = dir.path().join("nf.json");
    let second = dir.path().join("nf2.json");
    let o = stnf(&["triangulate", &data("running.json"), "--out", first.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let again = stnf(&["triangulate", &data("running.json")]);
    assert_eq!(stdout(&again), fs::read_to_string(&first).unwrap());
    stnf(&["triangulate", first.to_str().unwrap(), "--out", second.to_str().unwrap()]);
    assert_eq!(fs::read(&first).unwrap(), fs::read(&second).unwrap());
    // The static part of the first element and the shifted moving part.
    let text = fs::read_to_string(&first).unwrap();
    assert!(text.contains("\"partition\""));
    assert!(text.contains("\"source_id\": \"running\""));
}

#[test]
fn rectangle_splits_give_identical_bytes() {
    let a = stnf(&["triangulate", &data("rect_a.json")]);
    let b = stnf(&["triangulate", &data("rect_b.json")]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn empty_list_gives_empty_output() {
    let o = stnf(&["triangulate", &data("empty.json")]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "[]\n");
}

#[test]
fn diff_exit_codes() {
    let same = stnf(&["diff", &data("rect_a.json"), &data("rect_b.json")]);
    assert_eq!(same.status.code(), Some(0));
    let itself = stnf(&["diff", &data("running.json"), &data("running.json")]);
    assert_eq!(itself.status.code(), Some(0));
    let differ = stnf(&["diff", &data("rect_a.json"), &data("triangle.json")]);
    assert_eq!(differ.status.code(), Some(1));
    let text = stdout(&differ);
    assert!(text.contains("first differing atom"), "{text}");
    assert!(text.contains("snapshots differ at t ="), "{text}");
}

#[test]
fn snapshot_at_times() {
    let o = stnf(&["snapshot", &data("running.json"), "--time", "1/4"]);
    let text = stdout(&o);
    assert!(text.contains("[[[-11,4],[1,1]],[[-3,4],[1,1]],[[-7,4],[3,1]]]"), "{text}");
    assert_eq!(stdout(&stnf(&["snapshot", &data("running.json"), "--time", "5"])), "[]\n");
    let bad = stnf(&["snapshot", &data("running.json"), "--time", "x"]);
    assert_eq!(bad.status.code(), Some(2));
}

#[test]
fn snapshot_of_normal_form_at_event_time() {
    let dir = tempfile::tempdir().unwrap();
    let nf = dir.path().join("nf.json");
    stnf(&["triangulate", &data("running.json"), "--out", nf.to_str().unwrap()]);
    let o = stnf(&["snapshot", nf.to_str().unwrap(), "--time", "1/2"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    // Each triangle of the event-time triangulation is alive alone at 1/2.
    assert!(v.as_array().unwrap().len() >= 4);
}

#[test]
fn render_writes_frames() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("frames");
    let o = stnf(&["render", &data("running.json"), "--frames", "9", "--out", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let mut names: Vec<String> = fs::read_dir(&out).unwrap().map(|e| e.unwrap().file_name().into_string().unwrap()).collect();
    names.sort();
    assert_eq!(names.len(), 9);
    assert_eq!(names[0], "frame_0000.svg");
    let first = fs::read_to_string(out.join("frame_0001.svg")).unwrap();
    assert!(first.starts_with("<?xml"));
    assert!(first.contains("<title>t = 1/2</title>"));
    let again = dir.path().join("again");
    stnf(&["render", &data("running.json"), "--frames", "9", "--out", again.to_str().unwrap()]);
    assert_eq!(fs::read(out.join("frame_0004.svg")).unwrap(), fs::read(again.join("frame_0004.svg")).unwrap());
}

#[test]
fn render_degenerate_and_single_frame() {
    let dir = tempfile::tempdir().unwrap();
    let o = stnf(&["render", &data("degenerate.json"), "--frames", "1", "--out", dir.path().to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let svg = fs::read_to_string(dir.path().join("frame_0000.svg")).unwrap();
    assert!(svg.contains("<line"));
    assert!(svg.contains("<circle"));
    assert!(!svg.contains("<polygon"));
    let zero = stnf(&["render", &data("static.json"), "--frames", "0", "--out", dir.path().to_str().unwrap()]);
    assert_eq!(zero.status.code(), Some(2));
}

#[test]
fn epsilon_flag_and_environment() {
    let bad = stnf(&["--epsilon", "0", "partition", &data("static.json")]);
    assert_eq!(bad.status.code(), Some(2));
    let env = Command::new(env!("CARGO_BIN_EXE_stnf"))
        .args(["partition", &data("static.json")])
        .env("STNF_EPSILON", "1/1024")
        .output()
        .unwrap();
    assert_eq!(env.status.code(), Some(0));
    let bad_env = Command::new(env!("CARGO_BIN_EXE_stnf"))
        .args(["partition", &data("static.json")])
        .env("STNF_EPSILON", "-1")
        .output()
        .unwrap();
    assert_eq!(bad_env.status.code(), Some(2));
}
