//! Parse trees: reconstruction from either parser and the numbered listing.

use std::collections::HashMap;
use std::fmt::Write as _;

use thiserror::Error;

use crate::chart::Chart;
use crate::freeword::{FreewordRun, PathStep, Via};
use crate::grammar::{Grammar, ProductionId, Symbol, SymbolId};

pub const DEFAULT_TREE_LIMIT: usize = 64;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ForestError {
    #[error("sentence not recognized; there are no parse trees")]
    NoSuccess,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TreeViolation {
    #[error("leaves {found:?} differ from the input {expected:?}")]
    Yield {
        found: Vec<String>,
        expected: Vec<String>,
    },
    #[error("node {0} matches no production")]
    UnknownProduction(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ParseTree {
    pub label: Symbol,
    pub children: Vec<ParseTree>,
}

/// Trees in a deterministic order, capped at a limit.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Trees {
    pub trees: Vec<ParseTree>,
    /// More trees exist than were returned.
    pub truncated: bool,
}

impl ParseTree {
    pub fn leaf(label: Symbol) -> ParseTree {
        ParseTree {
            label,
            children: Vec::new(),
        }
    }

    pub fn node(label: Symbol, children: Vec<ParseTree>) -> ParseTree {
        ParseTree { label, children }
    }

    /// A node over a single terminal leaf, such as `PN(mai)`.
    pub fn is_preterminal(&self) -> bool {
        matches!(self.children.as_slice(), [only] if only.children.is_empty() && only.label.is_terminal())
    }

    pub fn leaves(&self) -> Vec<&str> {
        let mut out = Vec::new();
        self.collect_leaves(&mut out);
        out
    }

    fn collect_leaves<'a>(&'a self, out: &mut Vec<&'a str>) {
        if self.children.is_empty() {
            out.push(self.label.name());
        }
        for c in &self.children {
            c.collect_leaves(out);
        }
    }

    /// Checks the leaf yield and that every internal node is a production of
    /// `g` (lexical rules included).
    pub fn validate<S: AsRef<str>>(&self, g: &Grammar, words: &[S]) -> Result<(), TreeViolation> {
        let found: Vec<String> = self.leaves().into_iter().map(str::to_string).collect();
        let expected: Vec<String> = words.iter().map(|w| w.as_ref().to_string()).collect();
        if found != expected {
            return Err(TreeViolation::Yield { found, expected });
        }
        self.validate_nodes(g)
    }

    fn validate_nodes(&self, g: &Grammar) -> Result<(), TreeViolation> {
        if self.children.is_empty() {
            return Ok(());
        }
        let matches = g.lookup(&self.label).is_some_and(|lhs| {
            g.productions_of(lhs).iter().any(|&p| {
                let rhs = &g.production(p).rhs;
                rhs.len() == self.children.len()
                    && rhs
                        .iter()
                        .zip(&self.children)
                        .all(|(&s, c)| g.symbol(s) == &c.label)
            })
        });
        if !matches {
            return Err(TreeViolation::UnknownProduction(self.to_sexpr()));
        }
        self.children.iter().try_for_each(|c| c.validate_nodes(g))
    }

    /// `(S (PP (PN mai)) (VP jAm))`
    pub fn to_sexpr(&self) -> String {
        if self.children.is_empty() {
            return self.label.name().to_string();
        }
        let mut out = format!("({}", self.label.name());
        for c in &self.children {
            out.push(' ');
            out.push_str(&c.to_sexpr());
        }
        out.push(')');
        out
    }

    /// The numbered listing:
    ///
    /// ```text
    /// 1. S
    /// 2. [S --> (PP VP)]
    /// 3. [PP --> (NP)]VP
    /// ...
    /// 17. [VP]
    /// 18. [VP --> (vp : jAm)]
    /// ```
    ///
    /// Each expansion line is followed by the symbols still pending to its
    /// right. A node that is not the first child of its parent is announced
    /// with a `[X]` line before its expansion.
    pub fn render_listing(&self) -> String {
        let mut lines = vec![self.label.name().to_string()];
        self.list(&[], true, &mut lines);
        let mut out = String::new();
        for (i, line) in lines.iter().enumerate() {
            let _ = writeln!(out, "{}. {}", i + 1, line);
        }
        out
    }

    fn list(&self, pending: &[&str], first_child: bool, lines: &mut Vec<String>) {
        if self.children.is_empty() {
            return;
        }
        let context = pending.join(" ");
        let label = self.label.name();
        if !first_child {
            lines.push(format!("[{label}]{context}"));
        }
        if self.is_preterminal() {
            lines.push(format!(
                "[{label} --> ({} : {})]{context}",
                label.to_lowercase(),
                self.children[0].label.name()
            ));
            return;
        }
        let names: Vec<&str> = self.children.iter().map(|c| c.label.name()).collect();
        lines.push(format!("[{label} --> ({})]{context}", names.join(" ")));
        for (i, child) in self.children.iter().enumerate() {
            let mut rest: Vec<&str> = names[i + 1..].to_vec();
            rest.extend_from_slice(pending);
            child.list(&rest, i == 0, lines);
        }
    }
}

/// Replays success paths of a free-word-order run into trees, in success
/// order.
pub fn trees_from_freeword(
    run: &FreewordRun,
    g: &Grammar,
    limit: usize,
) -> Result<Trees, ForestError> {
    if !run.accepted() {
        return Err(ForestError::NoSuccess);
    }
    let mut paths = run.success_paths(limit.saturating_add(1));
    let truncated = paths.len() > limit;
    paths.truncate(limit);
    Ok(Trees {
        trees: paths.iter().map(|p| replay_path(run, g, p)).collect(),
        truncated,
    })
}

/// Rebuilds the tree a success path derives. Each expansion rewrites the
/// pending symbol at the dot.
pub fn replay_path(run: &FreewordRun, g: &Grammar, path: &[PathStep]) -> ParseTree {
    tree_from_expansions(
        g,
        path.iter().filter_map(|step| match step.via {
            Via::Init(p) => Some((0, p)),
            Via::Expand(p) => Some((run.item(step.item).pos, p)),
            Via::Scan => None,
        }),
    )
}

/// Builds a tree from a derivation given as `(site, production)` rewrites,
/// where `site` indexes the current frontier of leaves under the start symbol.
pub fn tree_from_expansions<I>(g: &Grammar, expansions: I) -> ParseTree
where
    I: IntoIterator<Item = (usize, ProductionId)>,
{
    struct Node {
        label: SymbolId,
        children: Vec<usize>,
    }
    let mut arena = vec![Node {
        label: g.start(),
        children: Vec::new(),
    }];
    let mut frontier: Vec<usize> = vec![0];
    for (site, production) in expansions {
        let node = frontier[site];
        let rhs = &g.production(production).rhs;
        debug_assert_eq!(arena[node].label, g.production(production).lhs);
        let first = arena.len();
        arena.extend(rhs.iter().map(|&label| Node {
            label,
            children: Vec::new(),
        }));
        let kids: Vec<usize> = (first..arena.len()).collect();
        arena[node].children = kids.clone();
        frontier.splice(site..=site, kids);
    }

    fn build(arena: &[Node], g: &Grammar, idx: usize) -> ParseTree {
        ParseTree {
            label: g.symbol(arena[idx].label).clone(),
            children: arena[idx]
                .children
                .iter()
                .map(|&c| build(arena, g, c))
                .collect(),
        }
    }
    build(&arena, g, 0)
}

/// Enumerates the distinct parse trees recorded in an accepting chart.
///
/// A subtree for `A` over `[i, j]` exists exactly when the chart holds a
/// complete item `[A → γ., i, j]`; children are split over the span using the
/// same test. A node never re-derives its own label over its own span, which
/// leaves out the infinitely many trees of unit cycles.
pub fn trees_from_chart<S: AsRef<str>>(
    chart: &Chart,
    g: &Grammar,
    words: &[S],
    limit: usize,
) -> Result<Trees, ForestError> {
    if !chart.accepts(g) {
        return Err(ForestError::NoSuccess);
    }
    let mut complete: HashMap<(SymbolId, usize, usize), Vec<usize>> = HashMap::new();
    for item in chart.items() {
        if item.is_complete(g) {
            let lhs = g.production(item.production).lhs;
            complete
                .entry((lhs, item.start, item.end))
                .or_default()
                .push(item.production.index());
        }
    }
    let tokens: Vec<Option<SymbolId>> = words.iter().map(|w| g.terminal(w.as_ref())).collect();
    let mut enumerator = ChartTrees {
        g,
        complete,
        tokens,
        cap: limit.saturating_add(1),
        guard: Vec::new(),
    };
    let mut trees = enumerator.trees(g.start(), 0, words.len());
    let truncated = trees.len() > limit;
    trees.truncate(limit);
    Ok(Trees { trees, truncated })
}

struct ChartTrees<'g> {
    g: &'g Grammar,
    complete: HashMap<(SymbolId, usize, usize), Vec<usize>>,
    tokens: Vec<Option<SymbolId>>,
    cap: usize,
    guard: Vec<(SymbolId, usize, usize)>,
}

impl ChartTrees<'_> {
    fn trees(&mut self, sym: SymbolId, i: usize, j: usize) -> Vec<ParseTree> {
        let key = (sym, i, j);
        if self.guard.contains(&key) {
            return Vec::new();
        }
        let Some(productions) = self.complete.get(&key).cloned() else {
            return Vec::new();
        };
        self.guard.push(key);
        let mut out = Vec::new();
        for p in productions {
            let rhs = self.g.productions()[p].rhs.clone();
            for children in self.sequences(&rhs, i, j) {
                out.push(ParseTree::node(self.g.symbol(sym).clone(), children));
                if out.len() >= self.cap {
                    break;
                }
            }
            if out.len() >= self.cap {
                break;
            }
        }
        self.guard.pop();
        out
    }

    /// Child sequences for `rhs` covering exactly `[i, j]`.
    fn sequences(&mut self, rhs: &[SymbolId], i: usize, j: usize) -> Vec<Vec<ParseTree>> {
        let Some((&first, rest)) = rhs.split_first() else {
            return if i == j { vec![Vec::new()] } else { Vec::new() };
        };
        // Each remaining symbol needs at least one word.
        if j < i + rhs.len() {
            return Vec::new();
        }
        let mut out = Vec::new();
        if self.g.is_terminal(first) {
            if self.tokens[i] == Some(first) {
                for mut tail in self.sequences(rest, i + 1, j) {
                    tail.insert(0, ParseTree::leaf(self.g.symbol(first).clone()));
                    out.push(tail);
                    if out.len() >= self.cap {
                        break;
                    }
                }
            }
            return out;
        }
        for mid in i + 1..=j - rest.len() {
            if !self.complete.contains_key(&(first, i, mid)) {
                continue;
            }
            let heads = self.trees(first, i, mid);
            if heads.is_empty() {
                continue;
            }
            let tails = self.sequences(rest, mid, j);
            for head in &heads {
                for tail in &tails {
                    let mut seq = Vec::with_capacity(rhs.len());
                    seq.push(head.clone());
                    seq.extend(tail.iter().cloned());
                    out.push(seq);
                    if out.len() >= self.cap {
                        return out;
                    }
                }
            }
        }
        out
    }
}
