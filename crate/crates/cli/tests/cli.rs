use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cliquepack"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn cover_build_histogram() {
    let o = run(&[
        "cover", "build", "--n", "100", "--k", "3", "--verify", "--format", "csv",
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "multiplicity,edges\n3,4950\n");
}

#[test]
fn cover_roundtrip_and_wrong_target() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("cover.jsonl");
    let p = path.to_str().unwrap();
    let o = run(&["cover", "build", "--n", "40", "--k", "2", "--out", p]);
    assert_eq!(o.status.code(), Some(0));

    let ok = run(&[
        "cover", "verify", "--n", "40", "--input", p, "--target", "2",
    ]);
    assert_eq!(ok.status.code(), Some(0), "{}", stdout(&ok));
    let bad = run(&[
        "cover", "verify", "--n", "40", "--input", p, "--target", "1,3",
    ]);
    assert_eq!(bad.status.code(), Some(1));
    assert!(stdout(&bad).contains("FAIL"));
}

#[test]
fn nu_text_and_json() {
    let o = run(&["nu", "--graph6", "C~", "--r", "4"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "5");

    let o = run(&["nu", "--graph6", "C~", "--r", "3", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["nu"], "4");
}

#[test]
fn nu_pair_on_c5_is_zero() {
    let o = run(&["nu", "--graph6", "Dhc", "--r", "4", "--pair"]);
    assert_eq!(stdout(&o).trim(), "0");
}

#[test]
fn bad_graph6_is_usage_error() {
    let o = run(&["nu", "--graph6", "zz", "--r", "4"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("error"));
}

#[test]
fn missing_argument_is_usage_error() {
    let o = run(&["cover", "build", "--n", "10"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn fexhaust_six() {
    let o = run(&["fexhaust", "--n", "6", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["f"]["value"], "2");
}

#[test]
fn design_build_verify() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("design.json");
    let p = path.to_str().unwrap();
    let o = run(&["design", "build", "--n", "100", "--m", "3", "--out", p]);
    assert_eq!(o.status.code(), Some(0));
    let o = run(&["design", "verify", "--input", p, "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["report"]["max_intersection"], 1);
}

#[test]
fn partition_join_and_verify() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("p.json");
    let p = path.to_str().unwrap();
    // C5 joined with three independent vertices: 5*3 - 5 = 10 cliques.
    let o = run(&[
        "partition",
        "join",
        "--graph6",
        "Dhc",
        "--l",
        "3",
        "--out",
        p,
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("size: 10"));

    let host = stdout(&o)
        .lines()
        .next()
        .unwrap()
        .trim_start_matches("host: ")
        .to_string();
    let ok = run(&["partition", "verify", "--graph6", &host, "--input", p]);
    assert_eq!(ok.status.code(), Some(0));

    std::fs::write(&path, "[[0,1],[1,2]]").unwrap();
    let bad = run(&["partition", "verify", "--graph6", &host, "--input", p]);
    assert_eq!(bad.status.code(), Some(1));
}

#[test]
fn join_with_too_few_colours_fails() {
    let o = run(&["partition", "join", "--graph6", "C~", "--l", "1"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn oracle_k4_restricted() {
    let o = run(&[
        "partition",
        "oracle",
        "--graph6",
        "C~",
        "--r",
        "3",
        "--format",
        "json",
    ]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["cp"], 4);
}

#[test]
fn bounds_ramsey_triangles() {
    let o = run(&["bounds", "ramsey", "--r", "3", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["value"], "13/30");
}

#[test]
fn bounds_chain_from_small_seed() {
    let o = run(&[
        "bounds",
        "chain",
        "--seed",
        "f4_8=6",
        "--no-recursions",
        "--format",
        "json",
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("11/28"));
}

#[test]
fn bounds_chain_rejects_bad_seed() {
    let o = run(&["bounds", "chain", "--seed", "g4-20"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn hbuild_sidecar() {
    let dir = tempfile::tempdir().unwrap();
    let side = dir.path().join("parts.json");
    let o = run(&[
        "hbuild",
        "--graph6",
        "Dhc",
        "--l",
        "3",
        "--sidecar",
        side.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("self-complementary: true"));
    let parts: serde_json::Value = serde_json::from_slice(&std::fs::read(side).unwrap()).unwrap();
    assert!(parts.is_object() || parts.is_array());
}

#[test]
fn search_small_with_checkpoint_resume() {
    let dir = tempfile::tempdir().unwrap();
    let ck = dir.path().to_str().unwrap();
    let first = run(&[
        "search",
        "--n0",
        "6",
        "--nmax",
        "7",
        "--checkpoint",
        ck,
        "--format",
        "csv",
    ]);
    assert_eq!(first.status.code(), Some(0));
    let resumed = run(&[
        "search",
        "--n0",
        "6",
        "--nmax",
        "8",
        "--checkpoint",
        ck,
        "--resume",
        "--format",
        "csv",
    ]);
    assert_eq!(resumed.status.code(), Some(0));
    let fresh = run(&["search", "--n0", "6", "--nmax", "8", "--format", "csv"]);
    assert_eq!(stdout(&resumed), stdout(&fresh));
}
