//! Random small ε-free grammars and exhaustive input strings.

#![allow(dead_code)]

use fwparse_core::Grammar;
use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub const NONTERMINALS: [&str; 6] = ["S", "A", "B", "C", "D", "E"];
pub const TERMINALS: [&str; 3] = ["a", "b", "c"];

/// At most 6 nonterminals, 12 productions, right-hand sides of length 1 to 3,
/// over the terminals `a b c`. Every nonterminal gets at least one production.
pub fn random_grammar(rng: &mut impl Rng) -> Grammar {
    let k = rng.gen_range(1..=NONTERMINALS.len());
    let nts = &NONTERMINALS[..k];
    let target = rng.gen_range(k..=12);
    let mut rules: Vec<(&str, Vec<&str>)> = Vec::new();
    let mut attempts = 0;
    while rules.len() < target && attempts < 200 {
        attempts += 1;
        let lhs = if rules.len() < k {
            nts[rules.len()]
        } else {
            *nts.choose(rng).unwrap()
        };
        let len = rng.gen_range(1..=3);
        let rhs: Vec<&str> = (0..len)
            .map(|_| {
                if rng.gen_bool(0.5) {
                    *nts.choose(rng).unwrap()
                } else {
                    *TERMINALS.choose(rng).unwrap()
                }
            })
            .collect();
        if !rules.iter().any(|(l, r)| *l == lhs && *r == rhs) {
            rules.push((lhs, rhs));
        }
    }
    Grammar::from_rules(rules.iter().map(|(l, r)| (*l, r.iter().copied()))).expect("random grammar")
}

/// Deterministic grammars for a seed range.
pub fn random_grammars(seed: u64, count: usize) -> Vec<Grammar> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count).map(|_| random_grammar(&mut rng)).collect()
}

/// Every string of length 1 to `max_len` over `TERMINALS`.
pub fn all_strings(max_len: usize) -> Vec<Vec<&'static str>> {
    let mut out = Vec::new();
    let mut layer: Vec<Vec<&'static str>> = vec![Vec::new()];
    for _ in 0..max_len {
        layer = layer
            .iter()
            .flat_map(|s| {
                TERMINALS.iter().map(move |&t| {
                    let mut next = s.clone();
                    next.push(t);
                    next
                })
            })
            .collect();
        out.extend(layer.iter().cloned());
    }
    out
}

pub fn catalan(n: usize) -> usize {
    (0..n).fold(1, |c, i| c * 2 * (2 * i + 1) / (i + 2))
}
