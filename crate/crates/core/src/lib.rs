//! Earley parsing for context-free grammars, with a two-phase variant for
//! free-word-order languages such as Assamese.
//!
//! * [`chart`]: the classic recognizer (predictor, scanner, completer).
//! * [`freeword`]: the modified algorithm over single sentential items.
//! * [`forest`]: parse tree reconstruction and the numbered listing.
//! * [`oracle`]: a brute-force derivation search used for cross-checking.

pub mod bundled;
pub mod chart;
pub mod corpus;
pub mod forest;
pub mod freeword;
pub mod grammar;
pub mod lexicon;
pub mod oracle;
pub mod pipeline;

pub use chart::{recognize, Action, Chart, EarleyItem, Recognition};
pub use corpus::{
    evaluate, parse_corpus, CorpusEntry, CorpusError, CorpusResult, Expectation, Mode,
};
pub use forest::{
    trees_from_chart, trees_from_freeword, ForestError, ParseTree, Trees, DEFAULT_TREE_LIMIT,
};
pub use freeword::{FreewordError, FreewordOptions, FreewordRun, InitPolicy};
pub use grammar::{Grammar, GrammarError, Production, ProductionId, Symbol, SymbolId};
pub use lexicon::{tokenize, Lexicon, LexiconError, TaggedSentence, Token};
pub use oracle::{derives, enumerate_derivations, Derivation, OracleError};
pub use pipeline::{InputKind, PipelineError, Prepared};
