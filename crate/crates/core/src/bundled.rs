//! The grammars, lexicons and corpora shipped in the workspace `data/` directory.

use crate::grammar::Grammar;
use crate::lexicon::Lexicon;

pub const ASSAMESE_GRAMMAR: &str = include_str!("../../../data/assamese.cfg");
pub const ENGLISH_GRAMMAR: &str = include_str!("../../../data/english.cfg");
pub const ASSAMESE_LEXICON: &str = include_str!("../../../data/assamese.lex");
pub const ASSAMESE_UNICODE_LEXICON: &str = include_str!("../../../data/assamese_unicode.lex");
pub const ENGLISH_LEXICON: &str = include_str!("../../../data/english.lex");
pub const ASSAMESE_CORPUS: &str = include_str!("../../../data/assamese_corpus.tsv");
pub const ASSAMESE_UNICODE_CORPUS: &str = include_str!("../../../data/assamese_unicode_corpus.tsv");

pub fn assamese_grammar() -> Grammar {
    Grammar::parse(ASSAMESE_GRAMMAR).expect("bundled Assamese grammar")
}

pub fn english_grammar() -> Grammar {
    Grammar::parse(ENGLISH_GRAMMAR).expect("bundled English grammar")
}

pub fn assamese_lexicon() -> Lexicon {
    Lexicon::parse(ASSAMESE_LEXICON).expect("bundled Assamese lexicon")
}

pub fn assamese_unicode_lexicon() -> Lexicon {
    Lexicon::parse(ASSAMESE_UNICODE_LEXICON).expect("bundled Assamese lexicon")
}

pub fn english_lexicon() -> Lexicon {
    Lexicon::parse(ENGLISH_LEXICON).expect("bundled English lexicon")
}
