use std::fs;
use std::io::Write;
use std::process::{Command, Output, Stdio};

use serde_json::Value;

fn semistream(args: &[&str], stdin: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_semistream"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(stdin.as_bytes()).unwrap();
    child.wait_with_output().unwrap()
}

fn report(args: &[&str], stdin: &str) -> Value {
    let out = semistream(args, stdin);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).unwrap()
}

#[test]
fn components_of_two_pieces() {
    let v = report(&["run", "--problem", "cc"], "n 5\n0 1\n1 2\n3 4\n");
    assert_eq!(v["verdict"]["components"]["count"], 2);
    assert_eq!(v["verdict"]["components"]["labels"], serde_json::json!([0, 0, 0, 3, 3]));
    assert_eq!(v["metrics"]["total_edges"], 3);
    assert_eq!(v["config"]["group_size"], 5);
}

#[test]
fn tree_is_not_two_vertex_connected() {
    let v = report(&["run", "--problem", "kvconn", "--k", "2", "--group-size", "2"], "n 4\n0 1\n1 2\n1 3\n");
    let check = &v["verdict"]["vertex_connectivity"];
    assert_eq!(check["connected"], false);
    assert_eq!(check["witness"]["separator"]["vertices"], serde_json::json!([1]));
}

#[test]
fn cycle_is_two_edge_connected_with_both() {
    let v = report(&["run", "--problem", "keconn", "--k", "2", "--both"], "n 4\n0 1\n1 2\n2 3\n3 0\n");
    assert_eq!(v["verdict"]["edge_connectivity"]["connected"], true);
    assert_eq!(v["companion"]["vertex_connectivity"]["connected"], true);
}

#[test]
fn msf_of_a_triangle() {
    let v = report(&["run", "--problem", "msf"], "n 3 weighted\n0 1 1\n1 2 2\n0 2 3\n");
    assert_eq!(v["verdict"]["msf"]["weight"], 3);
    assert_eq!(v["verdict"]["msf"]["edges"].as_array().unwrap().len(), 2);
}

#[test]
fn exit_codes() {
    let bad_line = semistream(&["run", "--problem", "cc"], "n 3\n0 1\n1 x\n");
    assert_eq!(bad_line.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&bad_line.stderr).contains("line 3"));
    assert_eq!(semistream(&["run", "--problem", "kvconn"], "n 3\n0 1\n").status.code(), Some(2));
    assert_eq!(semistream(&["run", "--problem", "msf"], "n 3\n0 1\n").status.code(), Some(2));
    assert_eq!(semistream(&["run", "--problem", "cc"], "n 3\n0 1\n2 2\n").status.code(), Some(3));
    let skipped = report(&["run", "--problem", "cc", "--skip-loops"], "n 3\n0 1\n2 2\n");
    assert_eq!(skipped["metrics"]["skipped_loops"], 1);
}

#[test]
fn human_metrics() {
    let out = semistream(&["run", "--problem", "bipartite", "--metrics", "human"], "n 3\n0 1\n1 2\n2 0\n");
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("bipartite: no"), "{text}");
    assert!(text.contains("peak stored edges"));
}

#[test]
fn generate_is_deterministic_and_convert_round_trips() {
    let dir = tempfile::tempdir().unwrap();
    let path = |name: &str| dir.path().join(name).to_str().unwrap().to_owned();
    let gen = |out: &str, seed: &str| {
        let args = [
            "generate", "--n", "50", "--m", "300", "--seed", seed, "--multigraph", "--max-weight", "9", "--output", out,
        ];
        assert!(semistream(&args, "").status.success());
        fs::read(out).unwrap()
    };
    let a = gen(&path("a.txt"), "7");
    assert_eq!(a, gen(&path("b.txt"), "7"));
    assert_ne!(a, gen(&path("c.txt"), "8"));

    let bin = path("a.bin");
    let back = path("back.txt");
    assert!(semistream(&["convert", "--to", "binary", "--output", &bin, &path("a.txt")], "").status.success());
    assert!(semistream(&["convert", "--to", "text", "--output", &back, &bin], "").status.success());
    assert_eq!(fs::read(&back).unwrap(), a);

    // the same stream gives the same verdict in either encoding
    let from_text = report(&["run", "--problem", "msf", &path("a.txt")], "");
    let from_bin = report(&["run", "--problem", "msf", &bin], "");
    assert_eq!(from_text["verdict"], from_bin["verdict"]);
}
