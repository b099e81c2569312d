//! Two-phase Earley variant for free-word-order languages.
//!
//! Every item has the form `[S → α.β, 0, j]`: a single sentential form under
//! the start symbol whose prefix `α` holds the `j` words matched so far.
//!
//! * Phase 1 rewrites the nonterminal after the dot in place with each of its
//!   productions (prediction and completion in one step).
//! * Phase 2 moves the dot over a terminal equal to word `j`.
//!
//! Left-recursive productions are never blocked. A successor whose form is
//! longer than the sentence is discarded, since every symbol of an ε-free
//! grammar covers at least one word. While the dot sits before the last word
//! only single-symbol productions are tried. Items are deduplicated on
//! `(form, position)`; a duplicate records one more incoming edge instead of a
//! new item, so every derivation stays recoverable while unit cycles such as
//! `PP → NP`, `NP → PP` cannot loop.

use std::collections::{HashMap, VecDeque};

use thiserror::Error;

use crate::grammar::{Grammar, ProductionId, SymbolId};
use crate::lexicon::VERB_TAG;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FreewordError {
    #[error("no start production mentions the verb tag {0}")]
    MissingVerbStart(String),
    #[error("no start production is free of the verb tag {0}")]
    MissingVerbFreeStart(String),
}

/// How the first items are chosen.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum InitPolicy {
    /// `[S → .PP VP, 0, 0]` when some word can be a verb, else `[S → .PP, 0, 0]`.
    /// Generalised to: the first start production that mentions `verb_tag`,
    /// or the first one that does not.
    VerbConditional { verb_tag: String },
    /// One item per start production, in grammar order.
    AllStartProductions,
}

impl Default for InitPolicy {
    fn default() -> Self {
        InitPolicy::VerbConditional {
            verb_tag: VERB_TAG.to_string(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FreewordOptions {
    /// Stop at the first success instead of exhausting the agenda.
    pub first_only: bool,
    /// Only single-symbol productions while the dot is before the last word.
    pub last_word_restriction: bool,
    pub init: InitPolicy,
}

impl Default for FreewordOptions {
    fn default() -> Self {
        FreewordOptions {
            first_only: false,
            last_word_restriction: true,
            init: InitPolicy::default(),
        }
    }
}

pub type ItemId = usize;

/// The operation that produced an item from its parent.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Via {
    Init(ProductionId),
    Expand(ProductionId),
    Scan,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Edge {
    pub parent: Option<ItemId>,
    pub via: Via,
}

#[derive(Debug, Clone)]
pub struct SententialItem {
    pub rhs: Vec<SymbolId>,
    pub pos: usize,
    /// Incoming edges; the first is the one the item was discovered by.
    pub edges: Vec<Edge>,
}

impl SententialItem {
    pub fn dot(&self) -> usize {
        self.pos
    }

    pub fn start(&self) -> usize {
        0
    }

    pub fn is_complete(&self) -> bool {
        self.pos == self.rhs.len()
    }

    pub fn render(&self, g: &Grammar) -> String {
        format!(
            "[{} → {}, {}, {}]",
            g.symbol(g.start()),
            g.render_dotted(&self.rhs, self.pos),
            self.start(),
            self.pos
        )
    }

    /// What the algorithm does with this item next.
    pub fn next_action(&self, g: &Grammar, n: usize) -> &'static str {
        match self.rhs.get(self.pos) {
            Some(&s) if g.is_terminal(s) => "Apply Phase 2",
            Some(_) => "Apply Phase 1",
            None if self.pos == n => "Complete",
            None => "Dead end",
        }
    }
}

/// One step of a success path.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PathStep {
    pub item: ItemId,
    pub via: Via,
}

#[derive(Debug, Clone)]
pub struct FreewordRun {
    items: Vec<SententialItem>,
    n: usize,
    successes: Vec<ItemId>,
    stopped_early: bool,
}

/// Chooses the start productions for `policy`.
pub fn initial_productions(
    g: &Grammar,
    policy: &InitPolicy,
    verb_present: bool,
) -> Result<Vec<ProductionId>, FreewordError> {
    let starts = g.productions_of(g.start());
    match policy {
        InitPolicy::AllStartProductions => Ok(starts.to_vec()),
        InitPolicy::VerbConditional { verb_tag } => {
            let mentions_verb = |&&p: &&ProductionId| {
                g.production(p)
                    .rhs
                    .iter()
                    .any(|&s| g.symbol(s).name() == verb_tag)
            };
            let chosen = if verb_present {
                starts
                    .iter()
                    .find(mentions_verb)
                    .ok_or_else(|| FreewordError::MissingVerbStart(verb_tag.clone()))?
            } else {
                starts
                    .iter()
                    .find(|p| !mentions_verb(p))
                    .ok_or_else(|| FreewordError::MissingVerbFreeStart(verb_tag.clone()))?
            };
            Ok(vec![*chosen])
        }
    }
}

/// Runs both phases from the given start productions until the agenda drains
/// (or, with `first_only`, until the first success).
pub fn parse<S: AsRef<str>>(
    g: &Grammar,
    words: &[S],
    starts: &[ProductionId],
    opts: &FreewordOptions,
) -> FreewordRun {
    let tokens: Vec<Option<SymbolId>> = words.iter().map(|w| g.terminal(w.as_ref())).collect();
    let mut agenda = Agenda {
        g,
        n: tokens.len(),
        run: FreewordRun {
            items: Vec::new(),
            n: tokens.len(),
            successes: Vec::new(),
            stopped_early: false,
        },
        index: HashMap::new(),
        queue: VecDeque::new(),
    };

    for &p in starts {
        let rhs = g.production(p).rhs.clone();
        if agenda.add(
            rhs,
            0,
            Edge {
                parent: None,
                via: Via::Init(p),
            },
        ) && opts.first_only
        {
            agenda.run.stopped_early = true;
            return agenda.run;
        }
    }

    while let Some(id) = agenda.queue.pop_front() {
        let item = &agenda.run.items[id];
        let pos = item.pos;
        let Some(&next) = item.rhs.get(pos) else {
            continue;
        };
        let mut hit = false;
        if g.is_terminal(next) {
            // Phase 2
            if tokens.get(pos).copied().flatten() == Some(next) {
                let rhs = item.rhs.clone();
                hit = agenda.add(
                    rhs,
                    pos + 1,
                    Edge {
                        parent: Some(id),
                        via: Via::Scan,
                    },
                );
            }
        } else {
            // Phase 1
            let n = agenda.n;
            let len = item.rhs.len();
            for &p in g.productions_of(next) {
                let gamma = &g.production(p).rhs;
                if opts.last_word_restriction && pos + 1 == n && gamma.len() != 1 {
                    continue;
                }
                if len - 1 + gamma.len() > n {
                    continue;
                }
                let item = &agenda.run.items[id];
                let mut rhs = Vec::with_capacity(len - 1 + gamma.len());
                rhs.extend_from_slice(&item.rhs[..pos]);
                rhs.extend_from_slice(gamma);
                rhs.extend_from_slice(&item.rhs[pos + 1..]);
                hit |= agenda.add(
                    rhs,
                    pos,
                    Edge {
                        parent: Some(id),
                        via: Via::Expand(p),
                    },
                );
                if hit && opts.first_only {
                    break;
                }
            }
        }
        if hit && opts.first_only {
            agenda.run.stopped_early = true;
            break;
        }
    }
    agenda.run
}

struct Agenda<'g> {
    g: &'g Grammar,
    n: usize,
    run: FreewordRun,
    index: HashMap<(Vec<SymbolId>, usize), ItemId>,
    queue: VecDeque<ItemId>,
}

impl Agenda<'_> {
    /// Inserts or links an item. Returns true when this creates a success.
    fn add(&mut self, rhs: Vec<SymbolId>, pos: usize, edge: Edge) -> bool {
        debug_assert!(rhs[..pos].iter().all(|&s| self.g.is_terminal(s)));
        match self.index.get(&(rhs.clone(), pos)) {
            Some(&id) => {
                self.run.items[id].edges.push(edge);
                false
            }
            None => {
                let id = self.run.items.len();
                let success = pos == self.n && rhs.len() == self.n;
                self.index.insert((rhs.clone(), pos), id);
                self.run.items.push(SententialItem {
                    rhs,
                    pos,
                    edges: vec![edge],
                });
                if success {
                    self.run.successes.push(id);
                } else {
                    self.queue.push_back(id);
                }
                success
            }
        }
    }
}

impl FreewordRun {
    pub fn accepted(&self) -> bool {
        !self.successes.is_empty()
    }

    /// Sentence length.
    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn items(&self) -> &[SententialItem] {
        &self.items
    }

    pub fn item(&self, id: ItemId) -> &SententialItem {
        &self.items[id]
    }

    /// Complete items `[S → α., 0, n]`, in discovery order.
    pub fn successes(&self) -> &[ItemId] {
        &self.successes
    }

    pub fn stopped_early(&self) -> bool {
        self.stopped_early
    }

    /// Up to `limit` acyclic paths from an initial item to each success, in
    /// success order. The first path of each success follows discovery edges.
    /// A run stopped at its first success yields only that discovery path.
    pub fn success_paths(&self, limit: usize) -> Vec<Vec<PathStep>> {
        let limit = if self.stopped_early {
            limit.min(1)
        } else {
            limit
        };
        let mut out = Vec::new();
        let mut on_path = vec![false; self.items.len()];
        let mut rev = Vec::new();
        for &s in &self.successes {
            if out.len() >= limit {
                break;
            }
            self.collect_paths(s, limit, &mut on_path, &mut rev, &mut out);
        }
        out
    }

    fn collect_paths(
        &self,
        id: ItemId,
        limit: usize,
        on_path: &mut [bool],
        rev: &mut Vec<PathStep>,
        out: &mut Vec<Vec<PathStep>>,
    ) {
        on_path[id] = true;
        for edge in &self.items[id].edges {
            if out.len() >= limit {
                break;
            }
            rev.push(PathStep {
                item: id,
                via: edge.via,
            });
            match edge.parent {
                None => out.push(rev.iter().rev().copied().collect()),
                Some(p) if !on_path[p] => self.collect_paths(p, limit, on_path, rev, out),
                Some(_) => {}
            }
            rev.pop();
        }
        on_path[id] = false;
    }

    /// Every item in insertion order:
    /// `step<TAB>[item]<TAB>next action<TAB>origin`.
    pub fn render_full_trace(&self, g: &Grammar) -> String {
        let mut out = String::new();
        for (i, item) in self.items.iter().enumerate() {
            let origin = match item.edges[0].parent {
                None => "Initialization".to_string(),
                Some(p) => format!("from step {}", p + 1),
            };
            out.push_str(&format!(
                "{}\t{}\t{}\t{}\n",
                i + 1,
                item.render(g),
                item.next_action(g, self.n),
                origin
            ));
        }
        out
    }

    /// The items along one success path, numbered from 1:
    /// `step<TAB>[item]<TAB>next action`.
    pub fn render_path_trace(&self, g: &Grammar, path: &[PathStep]) -> String {
        let mut out = String::new();
        for (i, step) in path.iter().enumerate() {
            let item = &self.items[step.item];
            out.push_str(&format!(
                "{}\t{}\t{}\n",
                i + 1,
                item.render(g),
                item.next_action(g, self.n)
            ));
        }
        out
    }
}
