//! Word lists per part-of-speech tag, and the lexical analysis stage.
//!
//! The file format is a sequence of sections. A token ending in `:` opens a
//! section for that tag; the words that follow, on the same line or later
//! ones, belong to it until the next header. `#` starts a comment.
//!
//! ```text
//! PN: mai si
//! NP:
//!   gharalE gru
//! ```

use indexmap::{IndexMap, IndexSet};
use thiserror::Error;

/// The seven tags of the bundled Assamese lexicons, in lookup order.
pub const STANDARD_TAGS: [&str; 7] = ["NP", "PN", "VP", "ADJ", "ADV", "ART", "IND"];

/// Tag whose presence selects the verb-bearing start rule.
pub const VERB_TAG: &str = "VP";

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LexiconError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("line {line}: unknown tag {tag}")]
    UnknownTag { line: usize, tag: String },
    #[error("unknown word: {0}")]
    UnknownWord(String),
    #[error("unknown words: {}", .0.join(", "))]
    UnknownWords(Vec<String>),
    #[error("empty sentence")]
    EmptySentence,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TagDatabase {
    pub tag: String,
    pub words: IndexSet<String>,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Lexicon {
    databases: IndexMap<String, TagDatabase>,
    /// Standard tags first, then the rest in file order.
    lookup_order: Vec<String>,
}

impl Lexicon {
    pub fn parse(source: &str) -> Result<Lexicon, LexiconError> {
        Self::parse_inner(source, None)
    }

    /// Like [`Lexicon::parse`], rejecting any section whose tag is not listed.
    pub fn parse_with_allowlist(source: &str, allowed: &[&str]) -> Result<Lexicon, LexiconError> {
        Self::parse_inner(source, Some(allowed))
    }

    fn parse_inner(source: &str, allowed: Option<&[&str]>) -> Result<Lexicon, LexiconError> {
        let mut databases: IndexMap<String, TagDatabase> = IndexMap::new();
        let mut current: Option<String> = None;
        for (idx, raw) in source.lines().enumerate() {
            let line = idx + 1;
            let text = raw.split('#').next().unwrap_or_default();
            for token in text.split_whitespace() {
                if let Some(tag) = token.strip_suffix(':') {
                    if tag.is_empty() || tag.contains(':') {
                        return Err(LexiconError::Syntax {
                            line,
                            message: format!("malformed section header {token:?}"),
                        });
                    }
                    if allowed.is_some_and(|a| !a.contains(&tag)) {
                        return Err(LexiconError::UnknownTag {
                            line,
                            tag: tag.to_string(),
                        });
                    }
                    databases
                        .entry(tag.to_string())
                        .or_insert_with(|| TagDatabase {
                            tag: tag.to_string(),
                            words: IndexSet::new(),
                        });
                    current = Some(tag.to_string());
                } else {
                    let Some(tag) = &current else {
                        return Err(LexiconError::Syntax {
                            line,
                            message: format!("word {token:?} before any `TAG:` header"),
                        });
                    };
                    databases[tag].words.insert(token.to_string());
                }
            }
        }
        let mut lookup_order: Vec<String> = STANDARD_TAGS
            .iter()
            .filter(|t| databases.contains_key(**t))
            .map(|t| t.to_string())
            .collect();
        lookup_order.extend(
            databases
                .keys()
                .filter(|t| !STANDARD_TAGS.contains(&t.as_str()))
                .cloned(),
        );
        Ok(Lexicon {
            databases,
            lookup_order,
        })
    }

    pub fn databases(&self) -> impl Iterator<Item = &TagDatabase> {
        self.databases.values()
    }

    pub fn database(&self, tag: &str) -> Option<&TagDatabase> {
        self.databases.get(tag)
    }

    pub fn has_tag(&self, tag: &str) -> bool {
        self.databases.contains_key(tag)
    }

    pub fn is_empty(&self) -> bool {
        self.databases.is_empty()
    }

    /// Every tag whose database lists `word`, standard tags first.
    pub fn tag_word(&self, word: &str) -> Result<Vec<String>, LexiconError> {
        let tags: Vec<String> = self
            .lookup_order
            .iter()
            .filter(|t| self.databases[t.as_str()].words.contains(word))
            .cloned()
            .collect();
        if tags.is_empty() {
            Err(LexiconError::UnknownWord(word.to_string()))
        } else {
            Ok(tags)
        }
    }

    /// Tags every word, reporting all untaggable words at once.
    pub fn tag_sentence<S: AsRef<str>>(&self, words: &[S]) -> Result<TaggedSentence, LexiconError> {
        if words.is_empty() {
            return Err(LexiconError::EmptySentence);
        }
        let mut tokens = Vec::with_capacity(words.len());
        let mut unknown = Vec::new();
        for word in words {
            let word = word.as_ref();
            match self.tag_word(word) {
                Ok(tags) => tokens.push(Token {
                    word: word.to_string(),
                    tags,
                }),
                Err(_) => unknown.push(word.to_string()),
            }
        }
        if unknown.is_empty() {
            Ok(TaggedSentence { tokens })
        } else {
            Err(LexiconError::UnknownWords(unknown))
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Token {
    pub word: String,
    pub tags: Vec<String>,
}

/// Tokens with their candidate tags. Position `i` sits before token `i`, so a
/// sentence of `n` tokens has positions `0..=n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TaggedSentence {
    pub tokens: Vec<Token>,
}

impl TaggedSentence {
    /// A pre-tagged sequence: each tag is its own word.
    pub fn from_tags<S: AsRef<str>>(tags: &[S]) -> Result<TaggedSentence, LexiconError> {
        if tags.is_empty() {
            return Err(LexiconError::EmptySentence);
        }
        Ok(TaggedSentence {
            tokens: tags
                .iter()
                .map(|t| Token {
                    word: t.as_ref().to_string(),
                    tags: vec![t.as_ref().to_string()],
                })
                .collect(),
        })
    }

    /// Words with no tags, for grammars that spell out their own terminals.
    pub fn untagged<S: AsRef<str>>(words: &[S]) -> Result<TaggedSentence, LexiconError> {
        if words.is_empty() {
            return Err(LexiconError::EmptySentence);
        }
        Ok(TaggedSentence {
            tokens: words
                .iter()
                .map(|w| Token {
                    word: w.as_ref().to_string(),
                    tags: Vec::new(),
                })
                .collect(),
        })
    }

    pub fn len(&self) -> usize {
        self.tokens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tokens.is_empty()
    }

    pub fn words(&self) -> Vec<&str> {
        self.tokens.iter().map(|t| t.word.as_str()).collect()
    }

    pub fn contains_tag(&self, tag: &str) -> bool {
        self.tokens.iter().any(|t| t.tags.iter().any(|x| x == tag))
    }

    pub fn contains_verb(&self) -> bool {
        self.contains_tag(VERB_TAG)
    }

    /// `(tag, word)` pairs in token order, for [`crate::Grammar::with_lexical_rules`].
    pub fn lexical_entries(&self) -> impl Iterator<Item = (&str, &str)> {
        self.tokens.iter().flat_map(|t| {
            t.tags
                .iter()
                .map(move |tag| (tag.as_str(), t.word.as_str()))
        })
    }
}

/// Splits on whitespace and drops sentence-final punctuation (`.` or `।`).
pub fn tokenize(text: &str) -> Vec<String> {
    let mut words: Vec<String> = text.split_whitespace().map(str::to_string).collect();
    while let Some(last) = words.last_mut() {
        let trimmed = last.trim_end_matches(['.', '।']);
        if trimmed.is_empty() {
            words.pop();
        } else {
            last.truncate(trimmed.len());
            break;
        }
    }
    words
}
