//! Lexical measurements expressed as eraser compositions followed by the
//! counting operation.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::eraser::{apply_pipeline, AtomicEraser, Eraser, SemanticsMode};
use crate::text::Document;

/// `N(t, D) = |E(t,0) D|`.
pub fn term_frequency(term: &str, doc: &Document) -> usize {
    AtomicEraser::new(term, 0)
        .apply(&doc.pristine(), SemanticsMode::Dynamic)
        .alive_count()
}

/// Term frequencies for every distinct token, each obtained from its own
/// zero-width eraser.
pub fn bag_of_words(doc: &Document) -> BTreeMap<String, usize> {
    let vocab: BTreeSet<&str> = doc.tokens().iter().map(String::as_str).collect();
    vocab
        .into_iter()
        .map(|t| (t.to_owned(), term_frequency(t, doc)))
        .collect()
}

/// Windowed co-occurrence `N = |E(counted,0)[E(wide,w) D]|`: occurrences of
/// `counted_term` lying within `halfwidth` tokens of some occurrence of
/// `wide_term`. Overlapping windows count a token once; when the two terms
/// are equal the anchors count themselves.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CoocQuery {
    pub wide_term: String,
    pub counted_term: String,
    pub halfwidth: usize,
}

impl CoocQuery {
    pub fn new(
        wide_term: impl Into<String>,
        counted_term: impl Into<String>,
        halfwidth: usize,
    ) -> Self {
        CoocQuery {
            wide_term: wide_term.into(),
            counted_term: counted_term.into(),
            halfwidth,
        }
    }
}

pub fn cooccurrence(q: &CoocQuery, doc: &Document) -> usize {
    let steps = [
        AtomicEraser::new(q.wide_term.as_str(), q.halfwidth),
        AtomicEraser::new(q.counted_term.as_str(), 0),
    ];
    apply_pipeline(&steps, &doc.pristine(), SemanticsMode::Dynamic).alive_count()
}

/// Whether `E(t1,0) E(t2,0)` annihilates `doc`: `E(t2,0)` is applied first,
/// then `E(t1,0)`, and nothing may survive.
pub fn orthogonality_check(t1: &str, t2: &str, doc: &Document) -> bool {
    let steps = [AtomicEraser::new(t2, 0), AtomicEraser::new(t1, 0)];
    apply_pipeline(&steps, &doc.pristine(), SemanticsMode::Dynamic).alive_count() == 0
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::text::TokenizerConfig;

    fn hamlet() -> Document {
        TokenizerConfig::default().tokenize("hamlet", "to be or not to be, that is the question")
    }

    #[test]
    fn frequencies() {
        let d = hamlet();
        assert_eq!(term_frequency("to", &d), 2);
        assert_eq!(term_frequency("question", &d), 1);
        assert_eq!(term_frequency("zebra", &d), 0);
    }

    #[test]
    fn bags() {
        let bow = bag_of_words(&hamlet());
        let expected: BTreeMap<String, usize> = [
            ("to", 2),
            ("be", 2),
            ("or", 1),
            ("not", 1),
            ("that", 1),
            ("is", 1),
            ("the", 1),
            ("question", 1),
        ]
        .into_iter()
        .map(|(k, v)| (k.to_owned(), v))
        .collect();
        assert_eq!(bow, expected);
        let cfg = TokenizerConfig::default();
        assert!(bag_of_words(&cfg.tokenize("e", "")).is_empty());
        assert_eq!(
            bag_of_words(&cfg.tokenize("a", "a")),
            [("a".to_owned(), 1)].into()
        );
    }

    #[test]
    fn windows() {
        let d = hamlet();
        assert_eq!(cooccurrence(&CoocQuery::new("is", "be", 2), &d), 1);
        assert_eq!(cooccurrence(&CoocQuery::new("is", "to", 3), &d), 1);
        assert_eq!(cooccurrence(&CoocQuery::new("is", "to", 2), &d), 0);
        // same term: anchors count themselves
        assert_eq!(cooccurrence(&CoocQuery::new("to", "to", 0), &d), 2);
    }

    #[test]
    fn orthogonality() {
        let d = hamlet();
        assert!(orthogonality_check("to", "be", &d));
        assert!(!orthogonality_check("to", "to", &d));
        assert!(orthogonality_check("zebra", "zebra", &d));
    }
}
