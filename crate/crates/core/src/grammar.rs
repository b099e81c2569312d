//! Context-free grammars over interned symbols.
//!
//! A grammar file holds one rule per line:
//!
//! ```text
//! %start S                      # optional, must precede every rule
//! S  -> PP VP | PP
//! PP -> PN NP | NP              # alternatives expand left to right
//! n  -> "I"                     # quotes force a terminal
//! ```
//!
//! Every name that appears on some left-hand side is a nonterminal; every
//! other right-hand-side name is a terminal. Part-of-speech tags such as `PN`
//! therefore start out as terminals and become preterminals once lexical rules
//! are attached with [`Grammar::with_lexical_rules`].

use std::collections::{HashMap, HashSet};
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use thiserror::Error;

/// A grammar symbol. Equality is by kind and name.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Symbol {
    Terminal(Arc<str>),
    Nonterminal(Arc<str>),
}

impl Symbol {
    pub fn terminal(name: &str) -> Self {
        Symbol::Terminal(name.into())
    }

    pub fn nonterminal(name: &str) -> Self {
        Symbol::Nonterminal(name.into())
    }

    pub fn name(&self) -> &str {
        match self {
            Symbol::Terminal(n) | Symbol::Nonterminal(n) => n,
        }
    }

    pub fn is_terminal(&self) -> bool {
        matches!(self, Symbol::Terminal(_))
    }
}

/// Terminals print inside curly quotes, as in `[n → .“I”, 0, 0]`.
impl fmt::Display for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Symbol::Terminal(n) => write!(f, "“{n}”"),
            Symbol::Nonterminal(n) => f.write_str(n),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SymbolId(pub u32);

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ProductionId(pub u32);

impl ProductionId {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Production {
    pub lhs: SymbolId,
    pub rhs: Vec<SymbolId>,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GrammarError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("{}empty right-hand side for {lhs} (ε-productions are not supported)", line_prefix(*.line))]
    EmptyProduction { line: Option<usize>, lhs: String },
    #[error("{}duplicate production {production}", line_prefix(*.line))]
    DuplicateProduction {
        line: Option<usize>,
        production: String,
    },
    #[error("\"{name}\" is quoted as a terminal but also has productions")]
    SymbolClash { name: String },
    #[error("start symbol {name} has no productions")]
    UndefinedStart { name: String },
    #[error("grammar has no productions, so no start symbol")]
    NoStart,
}

fn line_prefix(line: Option<usize>) -> String {
    line.map(|l| format!("line {l}: ")).unwrap_or_default()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum SourceKind {
    /// Classified by whether the name has productions.
    Auto,
    /// Written in quotes in a grammar file.
    Quoted,
    /// A word attached by a lexical rule. Always terminal, and may share its
    /// spelling with a nonterminal (tag-sequence input parses the tag `NP` as
    /// the word `NP`).
    Word,
}

#[derive(Debug, Clone)]
struct SourceSymbol {
    name: String,
    kind: SourceKind,
}

#[derive(Debug, Clone)]
struct SourceRule {
    lhs: String,
    rhs: Vec<SourceSymbol>,
    line: Option<usize>,
}

/// An immutable, ε-free context-free grammar.
#[derive(Debug, Clone)]
pub struct Grammar {
    symbols: Vec<Symbol>,
    index: HashMap<Symbol, SymbolId>,
    productions: Vec<Production>,
    by_lhs: Vec<Vec<ProductionId>>,
    start: SymbolId,
    source: Vec<SourceRule>,
    start_directive: Option<String>,
}

/// Two grammars are equal when they have the same start symbol and the same
/// productions in the same order.
impl PartialEq for Grammar {
    fn eq(&self, other: &Self) -> bool {
        self.symbol(self.start) == other.symbol(other.start)
            && self.productions.len() == other.productions.len()
            && self
                .production_ids()
                .zip(other.production_ids())
                .all(|(a, b)| self.production_symbols(a) == other.production_symbols(b))
    }
}

impl Eq for Grammar {}

impl FromStr for Grammar {
    type Err = GrammarError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Grammar::parse(s)
    }
}

impl Grammar {
    /// Loads a grammar from the text format described in the module docs.
    pub fn parse(source: &str) -> Result<Grammar, GrammarError> {
        let mut builder = GrammarBuilder::new();
        let mut seen_rule = false;
        for (idx, raw) in source.lines().enumerate() {
            let line_no = idx + 1;
            let line = match raw.find('#') {
                Some(cut) => &raw[..cut],
                None => raw,
            }
            .trim();
            if line.is_empty() {
                continue;
            }
            if let Some(rest) = line.strip_prefix("%start") {
                if seen_rule || builder.start.is_some() {
                    return Err(syntax(line_no, "%start must come before every rule"));
                }
                let mut names = rest.split_whitespace();
                match (names.next(), names.next()) {
                    (Some(name), None) => builder.start = Some(name.to_string()),
                    _ => return Err(syntax(line_no, "%start takes exactly one symbol")),
                }
                continue;
            }
            if line.starts_with('%') {
                return Err(syntax(line_no, "unknown directive"));
            }
            let (lhs, rhs) = line
                .split_once("->")
                .or_else(|| line.split_once('→'))
                .ok_or_else(|| syntax(line_no, "expected `LHS -> alternatives`"))?;
            let lhs = lhs.trim();
            if lhs.is_empty() || lhs.split_whitespace().nth(1).is_some() {
                return Err(syntax(line_no, "left-hand side must be a single symbol"));
            }
            if unquote(lhs).is_some() {
                return Err(syntax(
                    line_no,
                    "left-hand side cannot be a quoted terminal",
                ));
            }
            for alt in rhs.split('|') {
                let mut symbols = Vec::new();
                for token in alt.split_whitespace() {
                    let symbol = match unquote(token) {
                        Some("") => return Err(syntax(line_no, "empty quoted terminal")),
                        Some(name) => SourceSymbol {
                            name: name.to_string(),
                            kind: SourceKind::Quoted,
                        },
                        None => SourceSymbol {
                            name: token.to_string(),
                            kind: SourceKind::Auto,
                        },
                    };
                    symbols.push(symbol);
                }
                builder.rules.push(SourceRule {
                    lhs: lhs.to_string(),
                    rhs: symbols,
                    line: Some(line_no),
                });
            }
            seen_rule = true;
        }
        builder.build()
    }

    /// Builds a grammar from `(lhs, rhs)` name pairs, classifying names the
    /// same way the text loader does. The first lhs is the start symbol.
    pub fn from_rules<'a, I, R>(rules: I) -> Result<Grammar, GrammarError>
    where
        I: IntoIterator<Item = (&'a str, R)>,
        R: IntoIterator<Item = &'a str>,
    {
        let mut builder = GrammarBuilder::new();
        for (lhs, rhs) in rules {
            builder.rules.push(SourceRule {
                lhs: lhs.to_string(),
                rhs: rhs
                    .into_iter()
                    .map(|name| SourceSymbol {
                        name: name.to_string(),
                        kind: SourceKind::Auto,
                    })
                    .collect(),
                line: None,
            });
        }
        builder.build()
    }

    /// Returns a new grammar with a `tag -> word` rule appended for every
    /// entry not already present. Tags become nonterminals; words are always
    /// terminals.
    pub fn with_lexical_rules<'a, I>(&self, entries: I) -> Result<Grammar, GrammarError>
    where
        I: IntoIterator<Item = (&'a str, &'a str)>,
    {
        // The start symbol is pinned so a lexical rule can never take it over.
        let mut builder = GrammarBuilder {
            rules: self.source.clone(),
            start: Some(self.symbol(self.start).name().to_string()),
        };
        let mut present: HashSet<(String, String)> = self
            .productions
            .iter()
            .filter(|p| p.rhs.len() == 1 && self.is_terminal(p.rhs[0]))
            .map(|p| {
                (
                    self.symbol(p.lhs).name().to_string(),
                    self.symbol(p.rhs[0]).name().to_string(),
                )
            })
            .collect();
        for (tag, word) in entries {
            if present.insert((tag.to_string(), word.to_string())) {
                builder.rules.push(SourceRule {
                    lhs: tag.to_string(),
                    rhs: vec![SourceSymbol {
                        name: word.to_string(),
                        kind: SourceKind::Word,
                    }],
                    line: None,
                });
            }
        }
        let mut grammar = builder.build()?;
        grammar.start_directive = self.start_directive.clone();
        Ok(grammar)
    }

    pub fn start(&self) -> SymbolId {
        self.start
    }

    pub fn symbol(&self, id: SymbolId) -> &Symbol {
        &self.symbols[id.0 as usize]
    }

    pub fn symbols(&self) -> impl Iterator<Item = (SymbolId, &Symbol)> {
        self.symbols
            .iter()
            .enumerate()
            .map(|(i, s)| (SymbolId(i as u32), s))
    }

    pub fn lookup(&self, symbol: &Symbol) -> Option<SymbolId> {
        self.index.get(symbol).copied()
    }

    pub fn terminal(&self, name: &str) -> Option<SymbolId> {
        self.lookup(&Symbol::terminal(name))
    }

    pub fn nonterminal(&self, name: &str) -> Option<SymbolId> {
        self.lookup(&Symbol::nonterminal(name))
    }

    pub fn is_terminal(&self, id: SymbolId) -> bool {
        self.symbol(id).is_terminal()
    }

    pub fn nonterminals(&self) -> impl Iterator<Item = SymbolId> + '_ {
        self.symbols()
            .filter(|(_, s)| !s.is_terminal())
            .map(|(id, _)| id)
    }

    pub fn productions(&self) -> &[Production] {
        &self.productions
    }

    pub fn production_ids(&self) -> impl Iterator<Item = ProductionId> {
        (0..self.productions.len() as u32).map(ProductionId)
    }

    pub fn production(&self, id: ProductionId) -> &Production {
        &self.productions[id.index()]
    }

    /// All productions for `nt`, in grammar order. Empty for terminals.
    pub fn productions_of(&self, nt: SymbolId) -> &[ProductionId] {
        &self.by_lhs[nt.0 as usize]
    }

    /// The productions for `nt` whose right-hand side is a single symbol.
    pub fn single_rhs_productions_of(
        &self,
        nt: SymbolId,
    ) -> impl Iterator<Item = ProductionId> + '_ {
        self.productions_of(nt)
            .iter()
            .copied()
            .filter(|&p| self.production(p).rhs.len() == 1)
    }

    /// The production's symbols, resolved.
    pub fn production_symbols(&self, id: ProductionId) -> (&Symbol, Vec<&Symbol>) {
        let p = self.production(id);
        (
            self.symbol(p.lhs),
            p.rhs.iter().map(|&s| self.symbol(s)).collect(),
        )
    }

    /// `LHS → a b c`
    pub fn display_production(&self, id: ProductionId) -> String {
        let p = self.production(id);
        let rhs: Vec<String> = p.rhs.iter().map(|&s| self.symbol(s).to_string()).collect();
        format!("{} → {}", self.symbol(p.lhs), rhs.join(" "))
    }

    /// Renders a dotted right-hand side the way traces print it:
    /// `.NP VP`, `“mai” .NP NP VP`, `NP VP .`.
    pub fn render_dotted(&self, rhs: &[SymbolId], dot: usize) -> String {
        let join = |part: &[SymbolId]| {
            part.iter()
                .map(|&s| self.symbol(s).to_string())
                .collect::<Vec<_>>()
                .join(" ")
        };
        let before = join(&rhs[..dot]);
        let after = join(&rhs[dot..]);
        match (before.is_empty(), after.is_empty()) {
            (true, _) => format!(".{after}"),
            (false, true) => format!("{before} ."),
            (false, false) => format!("{before} .{after}"),
        }
    }

    /// Renders the grammar back to the text format, one production per line.
    /// Reloading the output yields an equal grammar.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let first_lhs = self.productions.first().map(|p| p.lhs);
        if first_lhs != Some(self.start) {
            out.push_str(&format!("%start {}\n", self.symbol(self.start).name()));
        }
        for p in &self.productions {
            out.push_str(self.symbol(p.lhs).name());
            out.push_str(" ->");
            for &s in &p.rhs {
                out.push(' ');
                match self.symbol(s) {
                    Symbol::Terminal(n) => {
                        out.push('"');
                        out.push_str(n);
                        out.push('"');
                    }
                    Symbol::Nonterminal(n) => out.push_str(n),
                }
            }
            out.push('\n');
        }
        out
    }
}

fn syntax(line: usize, message: &str) -> GrammarError {
    GrammarError::Syntax {
        line,
        message: message.to_string(),
    }
}

fn unquote(token: &str) -> Option<&str> {
    for (open, close) in [("\"", "\""), ("“", "”")] {
        if token.len() >= open.len() + close.len() {
            if let Some(inner) = token.strip_prefix(open).and_then(|t| t.strip_suffix(close)) {
                return Some(inner);
            }
        }
    }
    None
}

struct GrammarBuilder {
    rules: Vec<SourceRule>,
    start: Option<String>,
}

impl GrammarBuilder {
    fn new() -> Self {
        GrammarBuilder {
            rules: Vec::new(),
            start: None,
        }
    }

    fn build(self) -> Result<Grammar, GrammarError> {
        let Some(first) = self.rules.first() else {
            return Err(GrammarError::NoStart);
        };
        let heads: HashSet<&str> = self.rules.iter().map(|r| r.lhs.as_str()).collect();
        let start_name = self.start.clone().unwrap_or_else(|| first.lhs.clone());
        if !heads.contains(start_name.as_str()) {
            return Err(GrammarError::UndefinedStart { name: start_name });
        }

        let mut symbols = Vec::new();
        let mut index = HashMap::new();
        let mut intern = |symbol: Symbol| -> SymbolId {
            *index.entry(symbol.clone()).or_insert_with(|| {
                symbols.push(symbol);
                SymbolId(symbols.len() as u32 - 1)
            })
        };

        let mut productions = Vec::with_capacity(self.rules.len());
        let mut seen = HashSet::new();
        for rule in &self.rules {
            if rule.rhs.is_empty() {
                return Err(GrammarError::EmptyProduction {
                    line: rule.line,
                    lhs: rule.lhs.clone(),
                });
            }
            let lhs = intern(Symbol::nonterminal(&rule.lhs));
            let mut rhs = Vec::with_capacity(rule.rhs.len());
            for s in &rule.rhs {
                let symbol = match s.kind {
                    SourceKind::Auto if heads.contains(s.name.as_str()) => {
                        Symbol::nonterminal(&s.name)
                    }
                    SourceKind::Quoted if heads.contains(s.name.as_str()) => {
                        return Err(GrammarError::SymbolClash {
                            name: s.name.clone(),
                        })
                    }
                    _ => Symbol::terminal(&s.name),
                };
                rhs.push(intern(symbol));
            }
            let production = Production { lhs, rhs };
            if !seen.insert(production.clone()) {
                let names: Vec<&str> = rule.rhs.iter().map(|s| s.name.as_str()).collect();
                return Err(GrammarError::DuplicateProduction {
                    line: rule.line,
                    production: format!("{} -> {}", rule.lhs, names.join(" ")),
                });
            }
            productions.push(production);
        }

        let start = index[&Symbol::nonterminal(&start_name)];
        let mut by_lhs = vec![Vec::new(); symbols.len()];
        for (i, p) in productions.iter().enumerate() {
            by_lhs[p.lhs.0 as usize].push(ProductionId(i as u32));
        }
        Ok(Grammar {
            symbols,
            index,
            productions,
            by_lhs,
            start,
            source: self.rules,
            start_directive: self.start,
        })
    }
}
