mod common;

use std::time::{Duration, Instant};

use common::{all_strings, catalan, random_grammars};
use fwparse_core::freeword::{self, initial_productions};
use fwparse_core::oracle::{derives, enumerate_derivations};
use fwparse_core::{
    recognize, trees_from_chart, trees_from_freeword, FreewordOptions, Grammar, InitPolicy,
    ParseTree,
};

const TREE_LIMIT: usize = 32;

fn options(last_word_restriction: bool) -> FreewordOptions {
    FreewordOptions {
        first_only: false,
        last_word_restriction,
        init: InitPolicy::AllStartProductions,
    }
}

fn freeword_accepts(g: &Grammar, words: &[&str], last_word_restriction: bool) -> bool {
    let opts = options(last_word_restriction);
    let starts = initial_productions(g, &opts.init, false).unwrap();
    freeword::parse(g, words, &starts, &opts).accepted()
}

#[test]
fn chart_agrees_with_oracle() {
    let strings = all_strings(5);
    for (i, g) in random_grammars(7, 60).iter().enumerate() {
        for s in &strings {
            assert_eq!(
                recognize(g, s).accepted,
                derives(g, s).unwrap(),
                "grammar {i}: {s:?}\n{}",
                g.to_text()
            );
        }
    }
}

#[test]
fn freeword_never_accepts_what_the_oracle_rejects() {
    let strings = all_strings(5);
    let mut gaps = 0;
    for (i, g) in random_grammars(11, 60).iter().enumerate() {
        for s in &strings {
            let oracle = derives(g, s).unwrap();
            for restriction in [true, false] {
                let accepted = freeword_accepts(g, s, restriction);
                assert!(
                    !accepted || oracle,
                    "grammar {i}: false accept of {s:?}\n{}",
                    g.to_text()
                );
                gaps += usize::from(oracle && !accepted);
            }
        }
    }
    // Every derivation has a path through the agenda, so nothing is missed.
    assert_eq!(gaps, 0);
}

#[test]
fn last_word_restriction_changes_nothing() {
    let strings = all_strings(4);
    for g in &random_grammars(13, 40) {
        for s in &strings {
            assert_eq!(freeword_accepts(g, s, true), freeword_accepts(g, s, false));
        }
    }
}

#[test]
fn tree_counts_agree_with_oracle() {
    let strings = all_strings(4);
    for (i, g) in random_grammars(17, 40).iter().enumerate() {
        for s in &strings {
            let derivations = enumerate_derivations(g, s, TREE_LIMIT + 1).unwrap();
            let r = recognize(g, s);
            if derivations.is_empty() {
                assert!(!r.accepted);
                continue;
            }
            let trees = trees_from_chart(&r.chart, g, s, TREE_LIMIT).unwrap();
            for t in &trees.trees {
                t.validate(g, s).unwrap();
            }
            if derivations.len() <= TREE_LIMIT {
                assert!(!trees.truncated);
                assert_eq!(
                    trees.trees.len(),
                    derivations.len(),
                    "grammar {i}: {s:?}\n{}",
                    g.to_text()
                );
                let mut a: Vec<String> = trees.trees.iter().map(ParseTree::to_sexpr).collect();
                let mut b: Vec<String> = derivations
                    .iter()
                    .map(|d| d.to_tree(g).to_sexpr())
                    .collect();
                a.sort();
                b.sort();
                assert_eq!(a, b);
            } else {
                assert!(trees.truncated);
            }
        }
    }
}

#[test]
fn freeword_trees_are_valid() {
    let strings = all_strings(4);
    let opts = options(true);
    for g in &random_grammars(19, 40) {
        let starts = initial_productions(g, &opts.init, false).unwrap();
        for s in &strings {
            let run = freeword::parse(g, s, &starts, &opts);
            if let Ok(trees) = trees_from_freeword(&run, g, TREE_LIMIT) {
                for t in &trees.trees {
                    t.validate(g, s).unwrap();
                }
                let distinct: std::collections::HashSet<&ParseTree> = trees.trees.iter().collect();
                assert_eq!(distinct.len(), trees.trees.len());
            }
        }
    }
}

#[test]
fn catalan_ambiguity() {
    let g = Grammar::parse("S -> S S | a").unwrap();
    for k in 1..=5 {
        let words = vec!["a"; k];
        let r = recognize(&g, &words);
        let trees = trees_from_chart(&r.chart, &g, &words, 100).unwrap();
        assert_eq!(trees.trees.len(), catalan(k - 1));
        assert_eq!(
            enumerate_derivations(&g, &words, 100).unwrap().len(),
            catalan(k - 1)
        );
        for t in &trees.trees {
            t.validate(&g, &words).unwrap();
        }
    }
}

#[test]
fn stress_grammar_terminates() {
    let g = Grammar::parse(
        "S -> PP VP | PP\nPP -> NP | PN NP | ADJ NP\nNP -> PP | NP PP | PP NP | n\nPN -> p\nADJ -> j\nVP -> v",
    )
    .unwrap();
    let vocabulary = ["n", "p", "j"];
    let mut accepted = 0;
    for (len, mixed) in (1..=8).flat_map(|len| [(len, false), (len, true)]) {
        let mut words: Vec<&str> = (0..len)
            .map(|i| if mixed { vocabulary[i % 3] } else { "n" })
            .collect();
        words[len - 1] = if len > 1 { "v" } else { "n" };
        for restriction in [true, false] {
            let start = Instant::now();
            let opts = options(restriction);
            let starts = initial_productions(&g, &opts.init, false).unwrap();
            let run = freeword::parse(&g, &words, &starts, &opts);
            assert!(start.elapsed() < Duration::from_secs(5), "{words:?}");
            assert_eq!(run.accepted(), derives(&g, &words).unwrap(), "{words:?}");
            accepted += usize::from(run.accepted());
        }
    }
    assert!(accepted >= 16);
}
