//! Sentence lists with expected outcomes.
//!
//! One entry per line: `words:<sentence>` or `tags:<tag sequence>`, a tab,
//! `expect:accept` or `expect:reject`, and optionally a tab and a comment.
//! Blank lines and lines starting with `#` are skipped.
//!
//! ```text
//! tags:PN NP VP	expect:accept
//! words:jAm jAm	expect:reject	two verbs
//! ```

use thiserror::Error;

use crate::freeword::FreewordOptions;
use crate::grammar::Grammar;
use crate::lexicon::{tokenize, Lexicon};
use crate::pipeline::{InputKind, Prepared};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CorpusError {
    #[error("line {line}: {message}")]
    Malformed { line: usize, message: String },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Expectation {
    Accept,
    Reject,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CorpusEntry {
    pub line: usize,
    pub kind: InputKind,
    pub tokens: Vec<String>,
    pub expect: Expectation,
    pub comment: String,
}

impl CorpusEntry {
    pub fn text(&self) -> String {
        self.tokens.join(" ")
    }
}

pub fn parse_corpus(source: &str) -> Result<Vec<CorpusEntry>, CorpusError> {
    let mut entries = Vec::new();
    for (i, raw) in source.lines().enumerate() {
        let line = i + 1;
        let trimmed = raw.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let malformed = |message: &str| CorpusError::Malformed {
            line,
            message: message.to_string(),
        };
        let mut fields = raw.splitn(3, '\t');
        let input = fields.next().unwrap_or_default().trim();
        let expect = fields
            .next()
            .ok_or_else(|| malformed("missing expect field"))?
            .trim();
        let comment = fields.next().unwrap_or_default().trim().to_string();
        let (kind, text) = if let Some(text) = input.strip_prefix("words:") {
            (InputKind::Words, text)
        } else if let Some(text) = input.strip_prefix("tags:") {
            (InputKind::Tags, text)
        } else {
            return Err(malformed("input must start with words: or tags:"));
        };
        let tokens = tokenize(text);
        if tokens.is_empty() {
            return Err(malformed("empty sentence"));
        }
        let expect = match expect {
            "expect:accept" => Expectation::Accept,
            "expect:reject" => Expectation::Reject,
            _ => return Err(malformed("expected expect:accept or expect:reject")),
        };
        entries.push(CorpusEntry {
            line,
            kind,
            tokens,
            expect,
            comment,
        });
    }
    Ok(entries)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    Standard,
    Modified,
}

/// Outcome of one entry under every parser.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CorpusResult {
    pub entry: CorpusEntry,
    pub standard: bool,
    pub modified: bool,
    /// Modified mode with the last-word restriction switched off.
    pub modified_unrestricted: bool,
    /// Trees found in the selected mode, capped at the tree limit.
    pub trees: usize,
    /// Lexical or setup failure; the entry counts as rejected.
    pub error: Option<String>,
    pub mode: Mode,
}

impl CorpusResult {
    pub fn accepted(&self) -> bool {
        match self.mode {
            Mode::Standard => self.standard,
            Mode::Modified => self.modified,
        }
    }

    pub fn passed(&self) -> bool {
        self.accepted() == (self.entry.expect == Expectation::Accept)
    }

    /// The two parsing modes disagree.
    pub fn disagreement(&self) -> bool {
        self.error.is_none() && self.standard != self.modified
    }
}

pub fn evaluate(
    entry: &CorpusEntry,
    grammar: &Grammar,
    lexicon: Option<&Lexicon>,
    mode: Mode,
    opts: &FreewordOptions,
    tree_limit: usize,
) -> CorpusResult {
    let mut result = CorpusResult {
        entry: entry.clone(),
        standard: false,
        modified: false,
        modified_unrestricted: false,
        trees: 0,
        error: None,
        mode,
    };
    let outcome = (|| {
        let p = Prepared::new(grammar, lexicon, entry.kind, &entry.tokens)?;
        result.standard = p.recognize().accepted;
        let restricted = FreewordOptions {
            last_word_restriction: true,
            ..opts.clone()
        };
        let unrestricted = FreewordOptions {
            last_word_restriction: false,
            ..opts.clone()
        };
        result.modified = p.freeword(&restricted)?.accepted();
        result.modified_unrestricted = p.freeword(&unrestricted)?.accepted();
        let accepted = match mode {
            Mode::Standard => result.standard,
            Mode::Modified => result.modified,
        };
        if accepted {
            result.trees = match mode {
                Mode::Standard => p.chart_trees(tree_limit)?.trees.len(),
                Mode::Modified => p.freeword_trees(&restricted, tree_limit)?.trees.len(),
            };
        }
        Ok::<(), crate::pipeline::PipelineError>(())
    })();
    if let Err(e) = outcome {
        result.error = Some(e.to_string());
    }
    result
}
