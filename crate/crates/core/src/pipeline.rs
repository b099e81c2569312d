//! Glue between lexical analysis and the parsers.
//!
//! A sentence is prepared once: its tags become lexical rules `TAG → word`
//! appended to the grammar, so both parsers and the oracle see the same
//! extended grammar and the same word sequence.

use thiserror::Error;

use crate::chart::{recognize, Recognition};
use crate::forest::{trees_from_chart, trees_from_freeword, ForestError, Trees};
use crate::freeword::{self, initial_productions, FreewordError, FreewordOptions, FreewordRun};
use crate::grammar::{Grammar, GrammarError};
use crate::lexicon::{Lexicon, LexiconError, TaggedSentence};
use crate::oracle::{self, OracleError};

#[derive(Debug, Error)]
pub enum PipelineError {
    #[error(transparent)]
    Grammar(#[from] GrammarError),
    #[error(transparent)]
    Lexicon(#[from] LexiconError),
    #[error(transparent)]
    Freeword(#[from] FreewordError),
    #[error(transparent)]
    Forest(#[from] ForestError),
    #[error(transparent)]
    Oracle(#[from] OracleError),
}

/// How the input line is read.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum InputKind {
    /// Words looked up in a lexicon.
    Words,
    /// Tag names standing for themselves.
    Tags,
    /// Words used directly as grammar terminals.
    Terminals,
}

#[derive(Debug, Clone)]
pub struct Prepared {
    pub grammar: Grammar,
    pub sentence: TaggedSentence,
}

impl Prepared {
    /// Words tagged through `lexicon`.
    pub fn from_words<S: AsRef<str>>(
        base: &Grammar,
        lexicon: &Lexicon,
        words: &[S],
    ) -> Result<Prepared, PipelineError> {
        Prepared::with_sentence(base, lexicon.tag_sentence(words)?)
    }

    /// A pre-tagged sequence such as `PN NP VP`.
    pub fn from_tags<S: AsRef<str>>(base: &Grammar, tags: &[S]) -> Result<Prepared, PipelineError> {
        Prepared::with_sentence(base, TaggedSentence::from_tags(tags)?)
    }

    /// Words that are already terminals of `base`.
    pub fn from_terminals<S: AsRef<str>>(
        base: &Grammar,
        words: &[S],
    ) -> Result<Prepared, PipelineError> {
        Prepared::with_sentence(base, TaggedSentence::untagged(words)?)
    }

    pub fn new<S: AsRef<str>>(
        base: &Grammar,
        lexicon: Option<&Lexicon>,
        kind: InputKind,
        words: &[S],
    ) -> Result<Prepared, PipelineError> {
        match (kind, lexicon) {
            (InputKind::Words, Some(lexicon)) => Prepared::from_words(base, lexicon, words),
            (InputKind::Tags, _) => Prepared::from_tags(base, words),
            (InputKind::Words | InputKind::Terminals, _) => Prepared::from_terminals(base, words),
        }
    }

    fn with_sentence(base: &Grammar, sentence: TaggedSentence) -> Result<Prepared, PipelineError> {
        let grammar = base.with_lexical_rules(sentence.lexical_entries())?;
        Ok(Prepared { grammar, sentence })
    }

    pub fn words(&self) -> Vec<&str> {
        self.sentence.words()
    }

    pub fn recognize(&self) -> Recognition {
        recognize(&self.grammar, &self.words())
    }

    pub fn freeword(&self, opts: &FreewordOptions) -> Result<FreewordRun, PipelineError> {
        let starts = initial_productions(&self.grammar, &opts.init, self.sentence.contains_verb())?;
        Ok(freeword::parse(&self.grammar, &self.words(), &starts, opts))
    }

    pub fn chart_trees(&self, limit: usize) -> Result<Trees, PipelineError> {
        let r = self.recognize();
        Ok(trees_from_chart(
            &r.chart,
            &self.grammar,
            &self.words(),
            limit,
        )?)
    }

    pub fn freeword_trees(
        &self,
        opts: &FreewordOptions,
        limit: usize,
    ) -> Result<Trees, PipelineError> {
        let run = self.freeword(opts)?;
        Ok(trees_from_freeword(&run, &self.grammar, limit)?)
    }

    pub fn oracle_derives(&self) -> Result<bool, PipelineError> {
        Ok(oracle::derives(&self.grammar, &self.words())?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bundled;

    #[test]
    fn tag_mode_lexical_rules() {
        let p = Prepared::from_tags(&bundled::assamese_grammar(), &["PN", "NP", "VP"]).unwrap();
        assert!(p
            .grammar
            .production_ids()
            .any(|id| p.grammar.display_production(id) == "PN → “PN”"));
        assert!(p.recognize().accepted);
        assert!(p.freeword(&FreewordOptions::default()).unwrap().accepted());
        assert!(p.oracle_derives().unwrap());
    }

    #[test]
    fn unknown_words_are_reported_together() {
        let err = Prepared::from_words(
            &bundled::assamese_grammar(),
            &bundled::assamese_lexicon(),
            &["mai", "x", "y"],
        )
        .unwrap_err();
        assert!(
            matches!(err, PipelineError::Lexicon(LexiconError::UnknownWords(w)) if w == ["x", "y"])
        );
    }

    #[test]
    fn terminals_without_lexicon() {
        let p = Prepared::new::<&str>(
            &bundled::english_grammar(),
            None,
            InputKind::Words,
            &["I", "saw", "a", "man"],
        )
        .unwrap();
        assert!(p.recognize().accepted);
        assert_eq!(p.chart_trees(8).unwrap().trees.len(), 1);
    }
}
