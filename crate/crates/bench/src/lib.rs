//! Shared inputs for the parsing benchmarks.

use fwparse_core::{bundled, Grammar, Prepared};

pub const SENTENCE: [&str; 6] = ["mai", "Aru", "si", "ekelge", "gharalE", "jAm"];
pub const ADJECTIVE_SENTENCE: [&str; 4] = ["gru", "ebidh", "upakArI", "za\\ntu"];

/// A word sentence tagged with the bundled Assamese lexicon.
pub fn assamese(words: &[&str]) -> Prepared {
    Prepared::from_words(
        &bundled::assamese_grammar(),
        &bundled::assamese_lexicon(),
        words,
    )
    .expect("bundled sentence")
}

/// `S → S S | a`, whose tree count grows with the Catalan numbers.
pub fn ambiguous() -> Grammar {
    Grammar::parse("S -> S S | a").expect("ambiguous grammar")
}

/// `n` nouns followed by a verb, over the bundled tag grammar.
pub fn tag_sequence(n: usize) -> Prepared {
    let mut tags = vec!["NP"; n];
    tags.push("VP");
    Prepared::from_tags(&bundled::assamese_grammar(), &tags).expect("tag sentence")
}
