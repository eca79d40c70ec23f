//! Brute-force oracles and random generators shared by the integration
//! tests. Nothing here goes through the eraser machinery.

#![allow(dead_code)]

use rand::seq::SliceRandom;
use rand::Rng;
use selective_eraser::{Document, EraserExpr};

pub const VOCAB: &[&str] = &["a", "b", "c", "d", "e", "f"];

pub const HAMLET: &str = "to be or not to be, that is the question";

/// Occurrences of `term`, by direct scan.
pub fn scan_count(tokens: &[String], term: &str) -> usize {
    tokens.iter().filter(|t| *t == term).count()
}

/// Occurrences of `counted` within `w` positions of some `wide`.
pub fn scan_cooccurrence(tokens: &[String], wide: &str, counted: &str, w: usize) -> usize {
    (0..tokens.len())
        .filter(|&p| tokens[p] == counted)
        .filter(|&p| (0..tokens.len()).any(|q| tokens[q] == wide && p.abs_diff(q) <= w))
        .count()
}

/// Pristine keep-set of `E(term, w)` by checking every position against
/// every occurrence.
pub fn scan_window(tokens: &[String], term: &str, w: usize) -> Vec<usize> {
    (0..tokens.len())
        .filter(|&p| (0..tokens.len()).any(|q| tokens[q] == term && p.abs_diff(q) <= w))
        .collect()
}

pub fn random_tokens<R: Rng>(rng: &mut R, max_len: usize) -> Vec<String> {
    let n = rng.gen_range(0..=max_len);
    (0..n)
        .map(|_| VOCAB.choose(rng).unwrap().to_string())
        .collect()
}

pub fn random_doc<R: Rng>(rng: &mut R, id: usize, max_len: usize) -> Document {
    Document::new(format!("doc{id}"), random_tokens(rng, max_len))
}

pub fn random_nonempty_doc<R: Rng>(rng: &mut R, id: usize, max_len: usize) -> Document {
    loop {
        let d = random_doc(rng, id, max_len);
        if !d.is_empty() {
            return d;
        }
    }
}

/// A term from the vocabulary, occasionally one that never occurs.
pub fn random_term<R: Rng>(rng: &mut R) -> String {
    if rng.gen_bool(0.1) {
        "zz".to_owned()
    } else {
        VOCAB.choose(rng).unwrap().to_string()
    }
}

pub fn random_atom<R: Rng>(rng: &mut R) -> EraserExpr {
    EraserExpr::atom(random_term(rng), rng.gen_range(0..=5))
}

pub fn random_expr<R: Rng>(rng: &mut R, depth: u32) -> EraserExpr {
    if depth == 0 || rng.gen_bool(0.35) {
        return random_atom(rng);
    }
    match rng.gen_range(0..3) {
        0 => !random_expr(rng, depth - 1),
        1 => random_expr(rng, depth - 1) | random_expr(rng, depth - 1),
        _ => random_expr(rng, depth - 1) & random_expr(rng, depth - 1),
    }
}

pub mod strategies {
    use proptest::prelude::*;
    use selective_eraser::{Document, EraserExpr, SemanticsMode};

    use super::VOCAB;

    pub fn term() -> impl Strategy<Value = String> {
        prop_oneof![
            9 => proptest::sample::select(VOCAB).prop_map(str::to_owned),
            1 => Just("zz".to_owned()),
        ]
    }

    pub fn doc() -> impl Strategy<Value = Document> {
        proptest::collection::vec(proptest::sample::select(VOCAB), 0..=50)
            .prop_map(|ts| Document::new("d", ts.into_iter().map(str::to_owned).collect()))
    }

    pub fn nonempty_doc() -> impl Strategy<Value = Document> {
        proptest::collection::vec(proptest::sample::select(VOCAB), 1..=50)
            .prop_map(|ts| Document::new("d", ts.into_iter().map(str::to_owned).collect()))
    }

    pub fn mode() -> impl Strategy<Value = SemanticsMode> {
        prop_oneof![Just(SemanticsMode::Dynamic), Just(SemanticsMode::Static)]
    }

    pub fn atom() -> impl Strategy<Value = EraserExpr> {
        (term(), 0usize..=5).prop_map(|(t, w)| EraserExpr::atom(t, w))
    }

    pub fn expr() -> impl Strategy<Value = EraserExpr> {
        atom().prop_recursive(4, 24, 2, |inner| {
            prop_oneof![
                inner.clone().prop_map(|e| !e),
                (inner.clone(), inner.clone()).prop_map(|(a, b)| a | b),
                (inner.clone(), inner).prop_map(|(a, b)| a & b),
            ]
        })
    }

    pub fn steps() -> impl Strategy<Value = Vec<EraserExpr>> {
        proptest::collection::vec(expr(), 0..=3)
    }
}
