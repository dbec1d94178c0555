use std::path::PathBuf;
use std::process::{Command, Output};

use bsigma1::automata::Dfa;
use bsigma1::logic::{compile_sentence, parse_sentence_file};

fn fixture(name: &str) -> PathBuf {
    [env!("CARGO_MANIFEST_DIR"), "tests", "fixtures", name].iter().collect()
}

fn bsigma1(args: &[&str]) -> Output {
    let args: Vec<String> = args
        .iter()
        .map(|a| {
            if a.ends_with(".aut") || a.ends_with(".fo") || a.ends_with(".tt") {
                fixture(a).to_string_lossy().into_owned()
            } else {
                a.to_string()
            }
        })
        .collect();
    Command::new(env!("CARGO_BIN_EXE_bsigma1")).args(&args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn load_dfa(text: &str) -> Dfa {
    text.parse::<bsigma1::automata::Nfa>().unwrap().determinize().unwrap().minimize()
}

#[test]
fn ceiling_of_single_a_misses_only_b() {
    let o = bsigma1(&["ceiling", "one_a.aut", "--vars", "1"]);
    assert_eq!(o.status.code(), Some(0));
    let up = load_dfa(&stdout(&o));
    let sigma = up.alphabet().clone();
    for w in sigma.words_up_to(4) {
        assert_eq!(up.accepts(&w), sigma.render_word(&w) != "b", "{:?}", w);
    }
}

#[test]
fn ceiling_writes_out_and_dot_files() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("up.aut");
    let dot = dir.path().join("up.dot");
    let o = bsigma1(&[
        "ceiling",
        "bstar.aut",
        "--vars",
        "1",
        "--out",
        out.to_str().unwrap(),
        "--dot",
        dot.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).is_empty());
    let up = load_dfa(&std::fs::read_to_string(&out).unwrap());
    let bstar = load_dfa(&std::fs::read_to_string(fixture("bstar.aut")).unwrap());
    assert!(up.equivalent(&bstar).unwrap());
    assert!(std::fs::read_to_string(&dot).unwrap().starts_with("digraph"));
}

#[test]
fn zero_vars_is_an_input_error() {
    let o = bsigma1(&["ceiling", "bstar.aut", "--vars", "0"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("--vars"));
}

#[test]
fn missing_file_is_an_input_error() {
    let o = bsigma1(&["dot", "no_such_file.aut"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("no_such_file.aut"));
}

#[test]
fn decompose_success_summary() {
    let o = bsigma1(&["decompose", "a_no_b.aut", "--vars", "1", "--terms", "2"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.starts_with("success d=1 k=2\n"));
    assert!(text.contains("# term 1\n") && text.contains("# term 2\n"));
}

#[test]
fn decompose_json_chain_reproduces_the_language() {
    let o = bsigma1(&["decompose", "a_no_b.aut", "--vars", "1", "--terms", "2", "--json", "-"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["verdict"], "success");
    assert!(v["witness"].is_null());
    let chain: Vec<Dfa> = v["chain"]
        .as_array()
        .unwrap()
        .iter()
        .map(|t| load_dfa(t.as_str().unwrap()))
        .collect();
    assert_eq!(chain.len(), 2);
    let l = load_dfa(&std::fs::read_to_string(fixture("a_no_b.aut")).unwrap());
    assert!(bsigma1::decompose::verify(&chain, &l).unwrap());
    let templates: Vec<&str> = v["skeleton"]
        .as_array()
        .unwrap()
        .iter()
        .map(|s| s["template"].as_str().unwrap())
        .collect();
    assert_eq!(
        templates,
        ["forall x1. (a(x1) and R_a(x1)) or (c(x1) and R_c(x1))", "forall x1. (c(x1) and R_c(x1))"]
    );
}

#[test]
fn decompose_json_file_keeps_summary_on_stdout() {
    let dir = tempfile::tempdir().unwrap();
    let json = dir.path().join("report.json");
    let o = bsigma1(&["decompose", "bstar.aut", "--vars", "1", "--terms", "1", "--json", json.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("success d=1 k=1"));
    let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(json).unwrap()).unwrap();
    assert_eq!(v["d"], 1);
    assert_eq!(v["k"], 1);
}

#[test]
fn decompose_failure_reports_witness() {
    let o = bsigma1(&["decompose", "parity.aut", "--vars", "1", "--terms", "1"]);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(stdout(&o), "failure d=1 k=1\nwitness: \"01\"\n");
}

#[test]
fn decompose_empty_word_note() {
    let o = bsigma1(&["decompose", "empty.aut", "--vars", "1", "--terms", "1", "--json", "-"]);
    assert_eq!(o.status.code(), Some(1));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["verdict"], "failure");
    assert_eq!(v["witness"], "");
    assert_eq!(v["epsilon_note"], true);
    let residual = load_dfa(v["residual"].as_str().unwrap());
    assert!(residual.accepts(&[]));
}

#[test]
fn search_finds_smallest_cell() {
    let o = bsigma1(&["search", "a_no_b.aut", "--max-vars", "2", "--max-terms", "3"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "found d=1 k=2\n");
}

#[test]
fn search_exhausted_json_lists_cells() {
    let o = bsigma1(&["search", "parity.aut", "--max-vars", "2", "--max-terms", "3", "--json", "-"]);
    assert_eq!(o.status.code(), Some(1));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert!(v["found"].is_null());
    assert_eq!(v["cells"].as_array().unwrap().len(), 6);
}

#[test]
fn hausdorff_links_and_dnf() {
    let o = bsigma1(&["hausdorff", "example.tt"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(
        stdout(&o),
        "link 1: {010, 011, 101, 110, 111}\n  dnf: q or (p and r)\n\
         link 2: {011, 110, 111}\n  dnf: (p and q) or (q and r)\n\
         link 3: {111}\n  dnf: p and q and r\n"
    );
}

#[test]
fn hausdorff_of_empty_table_has_one_empty_link() {
    let o = bsigma1(&["hausdorff", "empty.tt"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "link 1: ∅\n  dnf: false\n");
}

#[test]
fn compile_matches_library() {
    let o = bsigma1(&["compile", "astar_bstar.fo"]);
    assert_eq!(o.status.code(), Some(0));
    let from_cli = load_dfa(&stdout(&o));
    let s = parse_sentence_file(&std::fs::read_to_string(fixture("astar_bstar.fo")).unwrap()).unwrap();
    assert!(from_cli.equivalent(&compile_sentence(&s).unwrap()).unwrap());
    let astar_bstar = load_dfa(&std::fs::read_to_string(fixture("astar_bstar.aut")).unwrap());
    assert!(from_cli.equivalent(&astar_bstar).unwrap());
}

#[test]
fn compile_rejects_divisibility() {
    let o = bsigma1(&["compile", "div_example.fo"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("div"));
}

#[test]
fn compile_syntax_error_has_position() {
    let o = bsigma1(&["compile", "bad_syntax.fo"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("bad_syntax.fo"));
    assert!(stderr(&o).contains("2:19: expected a formula"));
}

#[test]
fn eval_divisibility_example() {
    let yes = bsigma1(&["eval", "div_example.fo", "aacbcbcc"]);
    assert_eq!((yes.status.code(), stdout(&yes)), (Some(0), "true\n".to_string()));
    let no = bsigma1(&["eval", "div_example.fo", "aacbbbcc"]);
    assert_eq!((no.status.code(), stdout(&no)), (Some(1), "false\n".to_string()));
}

#[test]
fn eval_unknown_letter_is_an_input_error() {
    let o = bsigma1(&["eval", "exists_a.fo", "abz"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn equiv_sentence_against_automaton() {
    let o = bsigma1(&["equiv", "exists_a.fo", "exists_a.aut"]);
    assert_eq!((o.status.code(), stdout(&o)), (Some(0), "equivalent\n".to_string()));
}

#[test]
fn equiv_reports_one_sided_witness() {
    let o = bsigma1(&["equiv", "bstar.aut", "astar_bstar.fo"]);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(stdout(&o), "not equivalent\nwitness: \"a\" (accepted by right only)\n");
}

#[test]
fn dot_labels_group_symbols() {
    let o = bsigma1(&["dot", "no_b.aut"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("0 [shape=doublecircle];"));
    assert!(text.contains("0 -> 0 [label=\"a, c\"];"));
}
