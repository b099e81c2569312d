//! Classic Earley recognition over dotted items.
//!
//! Positions are processed left to right. Within a position the agenda is
//! depth-first: an operation inserts all of its new items, then each of them
//! is processed in insertion order before the next older item. Scanning is
//! deferred until the position is closed under prediction and completion.

use std::collections::HashMap;
use std::fmt;

use crate::grammar::{Grammar, ProductionId, SymbolId};

/// `[A → α.β, start, end]`
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct EarleyItem {
    pub production: ProductionId,
    pub dot: usize,
    pub start: usize,
    pub end: usize,
}

impl EarleyItem {
    pub fn is_complete(&self, g: &Grammar) -> bool {
        self.dot == g.production(self.production).rhs.len()
    }

    /// The symbol right after the dot, if any.
    pub fn next_symbol(&self, g: &Grammar) -> Option<SymbolId> {
        g.production(self.production).rhs.get(self.dot).copied()
    }

    pub fn render(&self, g: &Grammar) -> String {
        let p = g.production(self.production);
        format!(
            "[{} → {}, {}, {}]",
            g.symbol(p.lhs),
            g.render_dotted(&p.rhs, self.dot),
            self.start,
            self.end
        )
    }
}

/// How an item entered the chart. Step numbers are 1-based.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Action {
    Initialization,
    Predictor { from: usize },
    Scanner { from: usize },
    Completer { completed: usize, customer: usize },
}

impl fmt::Display for Action {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Action::Initialization => f.write_str("Initialization"),
            Action::Predictor { from } => write!(f, "Predictor(from step {from})"),
            Action::Scanner { from } => write!(f, "Scanner(from step {from})"),
            Action::Completer {
                completed,
                customer,
            } => write!(f, "Completer(step {completed} with step {customer})"),
        }
    }
}

#[derive(Debug, Clone)]
pub struct Chart {
    items: Vec<EarleyItem>,
    actions: Vec<Action>,
    index: HashMap<EarleyItem, usize>,
    by_end: Vec<Vec<usize>>,
    tokens: Vec<Option<SymbolId>>,
}

impl Chart {
    /// An empty chart over `words`. Words that are not terminals of `g` can
    /// never be scanned.
    pub fn new<S: AsRef<str>>(g: &Grammar, words: &[S]) -> Chart {
        Chart {
            items: Vec::new(),
            actions: Vec::new(),
            index: HashMap::new(),
            by_end: vec![Vec::new(); words.len() + 1],
            tokens: words.iter().map(|w| g.terminal(w.as_ref())).collect(),
        }
    }

    /// Sentence length.
    pub fn len(&self) -> usize {
        self.tokens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tokens.is_empty()
    }

    pub fn items(&self) -> &[EarleyItem] {
        &self.items
    }

    pub fn item(&self, idx: usize) -> EarleyItem {
        self.items[idx]
    }

    pub fn contains(&self, item: &EarleyItem) -> bool {
        self.index.contains_key(item)
    }

    /// Item indices ending at `pos`, in insertion order.
    pub fn ending_at(&self, pos: usize) -> &[usize] {
        &self.by_end[pos]
    }

    /// `(step, item, action)` in insertion order.
    pub fn steps(&self) -> impl Iterator<Item = (usize, EarleyItem, Action)> + '_ {
        self.items
            .iter()
            .zip(&self.actions)
            .enumerate()
            .map(|(i, (item, action))| (i + 1, *item, *action))
    }

    /// Adds `item` unless present; returns its index when new.
    pub fn insert(&mut self, item: EarleyItem, action: Action) -> Option<usize> {
        if self.index.contains_key(&item) {
            return None;
        }
        let idx = self.items.len();
        self.items.push(item);
        self.actions.push(action);
        self.index.insert(item, idx);
        self.by_end[item.end].push(idx);
        Some(idx)
    }

    /// Predictor: for `[A → α.Bβ, i, j]` add `[B → .γ, j, j]` for every `B → γ`.
    pub fn predict(&mut self, g: &Grammar, idx: usize) -> Vec<usize> {
        let item = self.items[idx];
        let Some(next) = item.next_symbol(g) else {
            return Vec::new();
        };
        if g.is_terminal(next) {
            return Vec::new();
        }
        g.productions_of(next)
            .iter()
            .filter_map(|&production| {
                self.insert(
                    EarleyItem {
                        production,
                        dot: 0,
                        start: item.end,
                        end: item.end,
                    },
                    Action::Predictor { from: idx + 1 },
                )
            })
            .collect()
    }

    /// Scanner: for `[A → α.wβ, i, j]` with token `j` equal to `w`, add
    /// `[A → αw.β, i, j+1]`.
    pub fn scan(&mut self, g: &Grammar, idx: usize) -> Vec<usize> {
        let item = self.items[idx];
        let Some(next) = item.next_symbol(g) else {
            return Vec::new();
        };
        if !g.is_terminal(next) || item.end >= self.len() || self.tokens[item.end] != Some(next) {
            return Vec::new();
        }
        let advanced = EarleyItem {
            dot: item.dot + 1,
            end: item.end + 1,
            ..item
        };
        self.insert(advanced, Action::Scanner { from: idx + 1 })
            .into_iter()
            .collect()
    }

    /// Completer: for `[B → γ., j, k]` and each `[A → α.Bβ, i, j]` add
    /// `[A → αB.β, i, k]`.
    pub fn complete(&mut self, g: &Grammar, idx: usize) -> Vec<usize> {
        let item = self.items[idx];
        if !item.is_complete(g) {
            return Vec::new();
        }
        let lhs = g.production(item.production).lhs;
        let customers: Vec<usize> = self.by_end[item.start]
            .iter()
            .copied()
            .filter(|&c| self.items[c].next_symbol(g) == Some(lhs))
            .collect();
        customers
            .into_iter()
            .filter_map(|c| {
                let customer = self.items[c];
                self.insert(
                    EarleyItem {
                        dot: customer.dot + 1,
                        end: item.end,
                        ..customer
                    },
                    Action::Completer {
                        completed: idx + 1,
                        customer: c + 1,
                    },
                )
            })
            .collect()
    }

    /// Whether some `[S → α., 0, n]` with `S` the start symbol is present.
    pub fn accepts(&self, g: &Grammar) -> bool {
        self.by_end[self.len()].iter().any(|&i| {
            let item = self.items[i];
            item.start == 0 && item.is_complete(g) && g.production(item.production).lhs == g.start()
        })
    }

    /// Items that predict, scan, or complete would still add. Empty for a
    /// chart produced by [`recognize`].
    pub fn missing_consequences(&self, g: &Grammar) -> Vec<EarleyItem> {
        let mut probe = self.clone();
        let mut missing = Vec::new();
        for idx in 0..self.items.len() {
            for new in probe
                .predict(g, idx)
                .into_iter()
                .chain(probe.scan(g, idx))
                .chain(probe.complete(g, idx))
            {
                missing.push(probe.items[new]);
            }
        }
        missing
    }

    /// One line per item: `step<TAB>[item]<TAB>action`.
    pub fn render_trace(&self, g: &Grammar) -> String {
        let mut out = String::new();
        for (step, item, action) in self.steps() {
            out.push_str(&format!("{step}\t{}\t{action}\n", item.render(g)));
        }
        out
    }
}

#[derive(Debug, Clone)]
pub struct Recognition {
    pub accepted: bool,
    pub chart: Chart,
}

/// Runs the recognizer to a fixpoint over `words`.
pub fn recognize<S: AsRef<str>>(g: &Grammar, words: &[S]) -> Recognition {
    let mut chart = Chart::new(g, words);
    let mut seeds: Vec<usize> = g
        .productions_of(g.start())
        .iter()
        .filter_map(|&production| {
            chart.insert(
                EarleyItem {
                    production,
                    dot: 0,
                    start: 0,
                    end: 0,
                },
                Action::Initialization,
            )
        })
        .collect();

    for pos in 0..=chart.len() {
        let mut stack: Vec<usize> = seeds.iter().rev().copied().collect();
        while let Some(idx) = stack.pop() {
            let mut new = chart.predict(g, idx);
            new.extend(chart.complete(g, idx));
            stack.extend(new.into_iter().rev());
        }
        seeds = Vec::new();
        let here: Vec<usize> = chart.ending_at(pos).to_vec();
        for idx in here {
            seeds.extend(chart.scan(g, idx));
        }
    }

    Recognition {
        accepted: chart.accepts(g),
        chart,
    }
}
