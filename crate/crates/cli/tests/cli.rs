use std::io::Write;
use std::process::{Command, Output};

const TREE_ADJECTIVE: &str = include_str!("golden/tree_adjective.txt");
const TREE_FREEWORD: &str = include_str!("golden/tree_freeword.txt");
const ENGLISH_TRACE: &str = include_str!("../../core/tests/golden/english_chart_trace.txt");
const GOAL_TRACE: &str = include_str!("../../core/tests/golden/freeword_goal_trace.txt");

const SENTENCE: &str = "mai Aru si ekelge gharalE jAm";

fn fwparse(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_fwparse"))
        .args(args)
        .output()
        .expect("run fwparse")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn words(s: &str) -> Vec<&str> {
    s.split_whitespace().collect()
}

fn with(args: &[&str], sentence: &str) -> Vec<String> {
    args.iter()
        .chain(words(sentence).iter())
        .map(|s| s.to_string())
        .collect()
}

fn run(args: &[&str], sentence: &str) -> Output {
    let all = with(args, sentence);
    let refs: Vec<&str> = all.iter().map(String::as_str).collect();
    fwparse(&refs)
}

/// The `TREE-->` blocks of a tree listing output, each with its header line.
fn tree_blocks(out: &str) -> Vec<String> {
    out.split("\nTREE-->\n\n")
        .skip(1)
        .map(|b| b.trim_end_matches('\n').to_string() + "\n")
        .collect()
}

#[test]
fn tag_prints_one_line_per_word() {
    let o = run(&["tag"], SENTENCE);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(
        stdout(&o),
        "mai\tPN\nAru\tIND\nsi\tPN\nekelge\tADV\ngharalE\tNP\njAm\tVP\n"
    );
}

#[test]
fn tag_adjective_sentence() {
    let o = run(&["tag"], "gru ebidh upakArI za\\ntu");
    let tags: Vec<String> = stdout(&o)
        .lines()
        .map(|l| l.split('\t').nth(1).unwrap().to_string())
        .collect();
    assert_eq!(tags, ["NP", "ART", "ADJ", "NP"]);
}

#[test]
fn unknown_word_exits_2() {
    let o = run(&["tag"], "xyzzy");
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("xyzzy"));
    assert_eq!(run(&["parse"], "mai xyzzy").status.code(), Some(2));
}

#[test]
fn parse_outcomes() {
    let o = run(&["parse"], SENTENCE);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "SENTENCE RECOGNIZED\n");

    let o = run(&["parse"], "jAm jAm");
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(stdout(&o), "SENTENCE NOT RECOGNIZED\n");

    let o = run(
        &["parse", "--grammar", "english.cfg", "--mode", "standard"],
        "I saw a man",
    );
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn oracle_flag_agrees() {
    assert_eq!(run(&["parse", "--oracle"], SENTENCE).status.code(), Some(0));
    assert_eq!(
        run(&["parse", "--oracle"], "jAm jAm").status.code(),
        Some(1)
    );
    assert_eq!(
        run(&["parse", "--oracle", "--tags", "PN NP ART NP VP"], "")
            .status
            .code(),
        Some(0)
    );
}

#[test]
fn tag_mode_input() {
    let o = fwparse(&["parse", "--tags", "PN NP ART NP VP"]);
    assert_eq!(o.status.code(), Some(0));
    let o = fwparse(&["parse", "--tags", "VP VP"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn english_full_trace() {
    let o = run(
        &[
            "parse",
            "--grammar",
            "english.cfg",
            "--mode",
            "standard",
            "--trace",
            "full",
        ],
        "I saw a man",
    );
    assert_eq!(
        stdout(&o),
        format!("{ENGLISH_TRACE}\nSENTENCE RECOGNIZED\n")
    );
}

#[test]
fn goal_trace_lists_the_reference_derivation() {
    let o = run(
        &["parse", "--trace", "goal", "--tree-limit", "400"],
        SENTENCE,
    );
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    let blocks: Vec<String> = out.split("\n\n").map(|b| b.to_string() + "\n").collect();
    assert!(blocks.iter().any(|b| b == GOAL_TRACE));
    assert!(out.ends_with("\nSENTENCE RECOGNIZED\n"));
}

#[test]
fn first_success_tree_for_the_adjective_sentence() {
    let o = run(&["tree", "--first"], "gru ebidh upakArI za\\ntu.");
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), TREE_ADJECTIVE);
}

#[test]
fn reference_tree_is_among_all_trees() {
    let o = run(&["tree", "--tree-limit", "400"], SENTENCE);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    let (header, listing) = TREE_FREEWORD.split_once("TREE-->\n\n").unwrap();
    assert!(out.starts_with(header));
    let blocks = tree_blocks(&out);
    assert_eq!(blocks.len(), 342);
    assert_eq!(blocks.iter().filter(|b| *b == listing).count(), 1);
}

#[test]
fn tree_limit_marks_truncation() {
    let out = stdout(&run(&["tree"], SENTENCE));
    assert_eq!(tree_blocks(&out).len(), 64);
    assert!(out.ends_with("... more trees not shown (limit 64)\n"));
}

#[test]
fn ambiguous_grammar_prints_every_tree() {
    let dir = tempfile::tempdir().unwrap();
    let grammar = dir.path().join("ambiguous.cfg");
    std::fs::write(&grammar, "S -> S S | \"a\"\n").unwrap();
    let g = grammar.to_str().unwrap();
    for (sentence, count) in [("a a", 1), ("a a a", 2)] {
        for mode in ["standard", "modified"] {
            let o = run(
                &["tree", "--grammar", g, "--mode", mode, "--init", "all"],
                sentence,
            );
            assert_eq!(o.status.code(), Some(0));
            assert_eq!(tree_blocks(&stdout(&o)).len(), count, "{mode} {sentence}");
        }
    }
    let o = run(
        &[
            "tree",
            "--grammar",
            g,
            "--mode",
            "standard",
            "--format",
            "sexpr",
        ],
        "a a a",
    );
    let out = stdout(&o);
    assert!(out.contains("TREE-->\n\n(S (S (S a) (S a)) (S a))\n"));
    assert!(out.contains("TREE-->\n\n(S (S a) (S (S a) (S a)))\n"));
}

#[test]
fn not_recognized_tree() {
    let o = run(&["tree"], "jAm jAm");
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(
        stdout(&o),
        "INPUT SENTENCE--> : jAm jAm.\n\nSENTENCE NOT RECOGNIZED\n"
    );
}

#[test]
fn missing_grammar_exits_2() {
    let o = run(&["parse", "--grammar", "no-such.cfg"], SENTENCE);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn malformed_grammar_exits_2() {
    let dir = tempfile::tempdir().unwrap();
    let grammar = dir.path().join("bad.cfg");
    std::fs::write(&grammar, "S -> \n").unwrap();
    let o = run(&["parse", "--grammar", grammar.to_str().unwrap()], "a");
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn unicode_sentence() {
    let o = run(
        &["tree", "--first", "--lexicon", "assamese_unicode.lex"],
        "মই মানুহ এজন পার্কত দেখিছো।",
    );
    assert_eq!(
        o.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&o.stderr)
    );
    assert!(stdout(&o).starts_with("INPUT SENTENCE--> : মই মানুহ এজন পার্কত দেখিছো.\n"));
}

#[test]
fn bundled_corpus_passes() {
    let o = fwparse(&["corpus", "assamese_corpus.tsv"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let out = stdout(&o);
    let mut lines = out.lines();
    assert_eq!(
        lines.next().unwrap(),
        "line,kind,input,expect,standard,modified,modified_unrestricted,trees,passed,disagreement,error"
    );
    assert!(lines.all(|l| l.contains(",yes,no,")));
}

#[test]
fn unicode_corpus_passes() {
    let o = fwparse(&[
        "corpus",
        "assamese_unicode_corpus.tsv",
        "--lexicon",
        "assamese_unicode.lex",
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
}

#[test]
fn corpus_reject_line() {
    let mut f = tempfile::NamedTempFile::new().unwrap();
    writeln!(f, "tags:VP VP\texpect:reject").unwrap();
    let o = fwparse(&["corpus", f.path().to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(
        stdout(&o).lines().nth(1).unwrap(),
        "1,tags,VP VP,reject,no,no,no,0,yes,no,"
    );
}

#[test]
fn corpus_failed_expectation_exits_1() {
    let mut f = tempfile::NamedTempFile::new().unwrap();
    writeln!(f, "tags:VP VP\texpect:accept").unwrap();
    let o = fwparse(&["corpus", f.path().to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn empty_corpus() {
    let f = tempfile::NamedTempFile::new().unwrap();
    let o = fwparse(&["corpus", f.path().to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).lines().count(), 1);
}

#[test]
fn malformed_corpus_exits_2() {
    let mut f = tempfile::NamedTempFile::new().unwrap();
    writeln!(f, "PN NP VP accept").unwrap();
    let o = fwparse(&["corpus", f.path().to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn output_is_deterministic() {
    let a = stdout(&run(&["tree", "--trace", "full"], SENTENCE));
    let b = stdout(&run(&["tree", "--trace", "full"], SENTENCE));
    assert_eq!(a, b);
    let a = stdout(&fwparse(&["corpus", "assamese_corpus.tsv"]));
    let b = stdout(&fwparse(&["corpus", "assamese_corpus.tsv"]));
    assert_eq!(a, b);
}

#[test]
fn data_dir_from_environment() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(dir.path().join("toy.cfg"), "S -> \"x\"\n").unwrap();
    let o = Command::new(env!("CARGO_BIN_EXE_fwparse"))
        .env("FWPARSE_DATA_DIR", dir.path())
        .args(["parse", "--grammar", "toy.cfg", "--mode", "standard", "x"])
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(0));
}
