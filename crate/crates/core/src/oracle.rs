//! Brute-force leftmost derivation search, used as ground truth in tests.
//!
//! Deliberately simple: sentential forms are rewritten one leftmost
//! nonterminal at a time. A form is dropped when it is longer than the target
//! (sound for ε-free grammars) or when its terminal prefix disagrees with the
//! target.

use std::collections::{HashSet, VecDeque};

use thiserror::Error;

use crate::forest::{tree_from_expansions, ParseTree};
use crate::grammar::{Grammar, ProductionId, SymbolId};

pub const DEFAULT_BOUND: usize = 8;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum OracleError {
    #[error("target has {len} words; the oracle is bounded at {bound}")]
    BoundExceeded { len: usize, bound: usize },
}

/// One rewrite: `production` applied at index `site` of `form`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DerivationStep {
    pub form: Vec<SymbolId>,
    pub production: ProductionId,
    pub site: usize,
}

/// A leftmost derivation from the start symbol to the target.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Derivation {
    pub steps: Vec<DerivationStep>,
}

impl Derivation {
    pub fn to_tree(&self, g: &Grammar) -> ParseTree {
        tree_from_expansions(g, self.steps.iter().map(|s| (s.site, s.production)))
    }

    /// `1. S [S → PP]` style lines, one per rewritten form.
    pub fn render(&self, g: &Grammar) -> String {
        let mut out = String::new();
        for (i, step) in self.steps.iter().enumerate() {
            let form: Vec<String> = step.form.iter().map(|&s| g.symbol(s).to_string()).collect();
            out.push_str(&format!(
                "{}. {} [{}]\n",
                i + 1,
                form.join(" "),
                g.display_production(step.production)
            ));
        }
        out
    }
}

/// `true` iff the start symbol derives `target`, with the default bound.
pub fn derives<S: AsRef<str>>(g: &Grammar, target: &[S]) -> Result<bool, OracleError> {
    derives_within(g, target, DEFAULT_BOUND)
}

pub fn derives_within<S: AsRef<str>>(
    g: &Grammar,
    target: &[S],
    bound: usize,
) -> Result<bool, OracleError> {
    let Some(target) = resolve(g, target, bound)? else {
        return Ok(false);
    };
    let start = vec![g.start()];
    let mut seen = HashSet::from([start.clone()]);
    let mut queue = VecDeque::from([start]);
    while let Some(form) = queue.pop_front() {
        let Some(site) = leftmost_nonterminal(g, &form) else {
            if form == target {
                return Ok(true);
            }
            continue;
        };
        for next in rewrites(g, &form, site, &target).map(|(_, f)| f) {
            if seen.insert(next.clone()) {
                queue.push_back(next);
            }
        }
    }
    Ok(false)
}

/// All leftmost derivations of `target`, up to `limit`, in grammar order.
/// A derivation never revisits a form, so unit cycles contribute nothing.
pub fn enumerate_derivations<S: AsRef<str>>(
    g: &Grammar,
    target: &[S],
    limit: usize,
) -> Result<Vec<Derivation>, OracleError> {
    enumerate_derivations_within(g, target, limit, DEFAULT_BOUND)
}

pub fn enumerate_derivations_within<S: AsRef<str>>(
    g: &Grammar,
    target: &[S],
    limit: usize,
    bound: usize,
) -> Result<Vec<Derivation>, OracleError> {
    let Some(target) = resolve(g, target, bound)? else {
        return Ok(Vec::new());
    };
    let mut search = Search {
        g,
        target,
        limit,
        path: Vec::new(),
        on_path: HashSet::new(),
        out: Vec::new(),
    };
    search.visit(vec![g.start()]);
    Ok(search.out)
}

struct Search<'g> {
    g: &'g Grammar,
    target: Vec<SymbolId>,
    limit: usize,
    path: Vec<DerivationStep>,
    on_path: HashSet<Vec<SymbolId>>,
    out: Vec<Derivation>,
}

impl Search<'_> {
    fn visit(&mut self, form: Vec<SymbolId>) {
        if self.out.len() >= self.limit {
            return;
        }
        let Some(site) = leftmost_nonterminal(self.g, &form) else {
            if form == self.target {
                self.out.push(Derivation {
                    steps: self.path.clone(),
                });
            }
            return;
        };
        if !self.on_path.insert(form.clone()) {
            return;
        }
        let successors: Vec<_> = rewrites(self.g, &form, site, &self.target).collect();
        for (production, next) in successors {
            self.path.push(DerivationStep {
                form: form.clone(),
                production,
                site,
            });
            self.visit(next);
            self.path.pop();
        }
        self.on_path.remove(&form);
    }
}

fn resolve<S: AsRef<str>>(
    g: &Grammar,
    target: &[S],
    bound: usize,
) -> Result<Option<Vec<SymbolId>>, OracleError> {
    if target.len() > bound {
        return Err(OracleError::BoundExceeded {
            len: target.len(),
            bound,
        });
    }
    Ok(target.iter().map(|w| g.terminal(w.as_ref())).collect())
}

fn leftmost_nonterminal(g: &Grammar, form: &[SymbolId]) -> Option<usize> {
    form.iter().position(|&s| !g.is_terminal(s))
}

/// Forms reachable by rewriting `form[site]`, filtered by length and by the
/// terminal prefix they commit to.
fn rewrites<'a>(
    g: &'a Grammar,
    form: &'a [SymbolId],
    site: usize,
    target: &'a [SymbolId],
) -> impl Iterator<Item = (ProductionId, Vec<SymbolId>)> + 'a {
    g.productions_of(form[site]).iter().filter_map(move |&p| {
        let rhs = &g.production(p).rhs;
        if form.len() - 1 + rhs.len() > target.len() {
            return None;
        }
        let mut next = Vec::with_capacity(form.len() - 1 + rhs.len());
        next.extend_from_slice(&form[..site]);
        next.extend_from_slice(rhs);
        next.extend_from_slice(&form[site + 1..]);
        let prefix = next.iter().take_while(|&&s| g.is_terminal(s)).count();
        (next[..prefix] == target[..prefix]).then_some((p, next))
    })
}
