use std::io::Write;
use std::path::PathBuf;
use std::process::{Command, Output, Stdio};

fn corpus(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/corpus").join(name)
}

fn nfree(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_nfree")).args(args).output().unwrap()
}

fn nfree_stdin(args: &[&str], input: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_nfree"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(input.as_bytes()).unwrap();
    child.wait_with_output().unwrap()
}

fn on(cmd: &str, file: &str) -> (i32, String) {
    let path = corpus(file);
    let out = nfree(&[cmd, path.to_str().unwrap()]);
    (out.status.code().unwrap(), String::from_utf8(out.stdout).unwrap())
}

const N: &str = "elements a b c d\norder a<c b<c b<d\n";

#[test]
fn edge_sets_one_per_line() {
    assert_eq!(on("ndiag", "n.poset"), (0, "b<c\n".into()));
    assert_eq!(on("aset", "n.poset"), (0, String::new()));
    assert_eq!(on("ndiag", "p5.poset"), (0, "a<c\na<d\n".into()));
    assert_eq!(on("aset", "p5.poset"), (0, "b<c\nb<d\n".into()));
    assert_eq!(on("nddiag", "p5.poset"), (0, "a<c\na<d\n".into()));
    assert_eq!(on("ndiag", "lattice.json"), (0, "p<r\nq<r\n".into()));
}

#[test]
fn predicates_answer_with_exit_zero() {
    assert_eq!(on("nfree", "n.poset"), (0, "false\n".into()));
    assert_eq!(on("nfree", "k23.poset"), (0, "true\n".into()));
    assert_eq!(on("cac", "crown.poset"), (0, "false\n".into()));
    assert_eq!(on("cac", "chain3.poset"), (0, "true\n".into()));
    assert_eq!(on("sp", "k23.poset"), (0, "true\n".into()));
    assert_eq!(on("sp", "n.poset"), (0, "false\n".into()));
    assert_eq!(on("nfree", "empty.poset"), (0, "true\n".into()));
}

#[test]
fn closing_the_n() {
    let (code, out) = on("close", "n.poset");
    assert_eq!(code, 0);
    assert_eq!(out, "elements a b c d _d.b.c.1\norder a<c b<d b<_d.b.c.1 _d.b.c.1<c\n");
}

#[test]
fn closing_keeps_earlier_dummies() {
    let (_, out) = on("close", "seeded.poset");
    assert!(out.starts_with("elements a b c d e _d.a.c.1 _d.b.c.1\n"), "{out}");
    // The result reads back as an N-free poset.
    let again = nfree_stdin(&["nfree"], &out);
    assert_eq!(String::from_utf8(again.stdout).unwrap(), "true\n");
}

#[test]
fn subdivide_and_full_subdivide() {
    let out = nfree_stdin(&["subdivide", "--edge", "b<c"], N);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(
        String::from_utf8(out.stdout).unwrap(),
        "elements a b c d _d.b.c.1\norder a<c b<d b<_d.b.c.1 _d.b.c.1<c\n"
    );
    let out = nfree_stdin(&["subdivide", "--edge", "a<d"], N);
    assert_eq!(out.status.code(), Some(2));

    let (_, out) = on("full-subdivide", "n.poset");
    assert_eq!(
        out,
        "elements a b c d _d.a.c.1 _d.b.c.1 _d.b.d.1\n\
         order a<_d.a.c.1 b<_d.b.c.1 b<_d.b.d.1 _d.a.c.1<c _d.b.c.1<c _d.b.d.1<d\n"
    );
}

#[test]
fn dual_and_dot() {
    assert_eq!(on("dual", "n.poset").1, "elements a b c d\norder c<a c<b d<b\n");
    let (_, dot) = on("dot", "n.poset");
    assert!(dot.starts_with("digraph poset {\n  rankdir=BT;\n"));
    assert_eq!(dot.matches("shape=box").count(), 4);
    assert_eq!(dot.matches(" -> ").count(), 3);
    assert!(dot.trim_end().ends_with('}'));
}

#[test]
fn stdin_and_dash_read_the_same_input() {
    let a = nfree_stdin(&["ndiag"], N);
    let b = nfree_stdin(&["ndiag", "-"], N);
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(a.stdout, b"b<c\n");
}

#[test]
fn trace_lists_sequential_steps() {
    let path = corpus("p5.poset");
    let out = nfree(&["close", "--method", "sequential", "--trace", path.to_str().unwrap()]);
    let text = String::from_utf8(out.stdout).unwrap();
    let steps: Vec<_> = text.lines().filter(|l| l.starts_with("# step")).collect();
    assert_eq!(steps.len(), 4);
    assert_eq!(steps[0], "# step 1: a<c -> _d.a.c.1");
    // Comments are ignored on input, so the traced output still parses.
    assert_eq!(nfree_stdin(&["nfree"], &text).stdout, b"true\n");
}

#[test]
fn seeds_do_not_change_the_result() {
    let path = corpus("crown.poset");
    let path = path.to_str().unwrap();
    let reference = nfree(&["close", path]).stdout;
    for seed in ["0", "1", "17", "18446744073709551615"] {
        let out = nfree(&["close", "--method", "sequential", "--strategy", "random", "--seed", seed, path]);
        assert_eq!(out.status.code(), Some(0));
        assert_eq!(out.stdout, reference, "seed {seed}");
    }
}

#[test]
fn input_errors_exit_two() {
    let cycle = nfree_stdin(&["nfree"], "elements a b\norder a<b b<a\n");
    assert_eq!(cycle.status.code(), Some(2));
    assert!(String::from_utf8(cycle.stderr).unwrap().contains("cycle"));

    assert_eq!(nfree_stdin(&["nfree"], "order a<b\n").status.code(), Some(2));
    assert_eq!(nfree_stdin(&["nfree"], "elements a a\n").status.code(), Some(2));
    assert_eq!(nfree_stdin(&["nfree"], "elements a;b\norder a<<b\n").status.code(), Some(2));
    assert_eq!(nfree(&["nfree", "/nonexistent/poset"]).status.code(), Some(2));
    assert_eq!(nfree_stdin(&["close", "--seed", "3"], N).status.code(), Some(2));
    assert_eq!(nfree(&["enumerate", "--n", "8", "--count-only"]).status.code(), Some(2));
    assert_eq!(nfree(&["enumerate", "--n", "7", "--count-only"]).status.code(), Some(2));
    assert_eq!(nfree(&["enumerate", "--n", "0", "--count-only"]).status.code(), Some(2));
}

#[test]
fn json_and_text_inputs_agree() {
    let json = corpus("lattice.json");
    let json = json.to_str().unwrap();
    // Dualising twice turns the JSON document into the text format.
    let dual = String::from_utf8(nfree(&["dual", json]).stdout).unwrap();
    let text = String::from_utf8(nfree_stdin(&["dual"], &dual).stdout).unwrap();
    assert!(text.contains("bot<p"));
    assert_eq!(nfree_stdin(&["close"], &text).stdout, nfree(&["close", json]).stdout);
    assert_eq!(nfree_stdin(&["aset"], &text).stdout, nfree(&["aset", json]).stdout);
}

#[test]
fn enumerate_counts_and_filters() {
    assert_eq!(nfree(&["enumerate", "--n", "4", "--count-only"]).stdout, b"219\n");
    let nf: u64 = String::from_utf8(nfree(&["enumerate", "--n", "4", "--count-only", "--filter", "nfree"]).stdout)
        .unwrap()
        .trim()
        .parse()
        .unwrap();
    let hn: u64 = String::from_utf8(nfree(&["enumerate", "--n", "4", "--count-only", "--filter", "has-n"]).stdout)
        .unwrap()
        .trim()
        .parse()
        .unwrap();
    assert_eq!(nf + hn, 219);
    let listed = String::from_utf8(nfree(&["enumerate", "--n", "2"]).stdout).unwrap();
    assert_eq!(listed.matches("elements v1 v2").count(), 3);
}

#[test]
fn verify_small() {
    let out = nfree(&["verify", "--n", "3"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(out.stdout, b"checked=19 failed=0\n");
    assert_eq!(nfree(&["verify", "--n", "3", "--suite", "nope"]).status.code(), Some(2));
}
