//! Atomic selective erasers `E(t, w)`.
//!
//! An eraser keeps every token within `w` positions of an occurrence of its
//! central term and erases the rest. Which occurrences count as anchors
//! depends on the [`SemanticsMode`].

use std::fmt;

use bitvec::prelude::*;
use serde::{Deserialize, Serialize};

use crate::text::Document;

/// Where keep-sets are evaluated.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SemanticsMode {
    /// Anchors are the *alive* occurrences of the term in the current state.
    /// Erasers chained in this mode need not commute.
    #[default]
    Dynamic,
    /// Keep-sets are always computed against the pristine document, so every
    /// application is an intersection with a fixed set.
    Static,
}

impl SemanticsMode {
    pub fn as_str(self) -> &'static str {
        match self {
            SemanticsMode::Dynamic => "dynamic",
            SemanticsMode::Static => "static",
        }
    }
}

impl fmt::Display for SemanticsMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl std::str::FromStr for SemanticsMode {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "dynamic" => Ok(SemanticsMode::Dynamic),
            "static" => Ok(SemanticsMode::Static),
            other => Err(format!(
                "unknown mode `{other}` (expected `dynamic` or `static`)"
            )),
        }
    }
}

/// A set of token positions over a fixed universe `0..n`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct KeepSet {
    bits: BitVec,
}

impl KeepSet {
    pub fn empty(universe: usize) -> Self {
        KeepSet {
            bits: bitvec![0; universe],
        }
    }

    pub fn full(universe: usize) -> Self {
        KeepSet {
            bits: bitvec![1; universe],
        }
    }

    pub fn from_bits(bits: BitVec) -> Self {
        KeepSet { bits }
    }

    /// # Panics
    ///
    /// Panics if a position is outside `0..universe`.
    pub fn from_positions(universe: usize, positions: impl IntoIterator<Item = usize>) -> Self {
        let mut bits = bitvec![0; universe];
        for p in positions {
            bits.set(p, true);
        }
        KeepSet { bits }
    }

    pub fn bits(&self) -> &BitSlice {
        &self.bits
    }

    /// Size of the position universe (the document's token count).
    pub fn universe(&self) -> usize {
        self.bits.len()
    }

    /// Number of kept positions.
    pub fn count(&self) -> usize {
        self.bits.count_ones()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.not_any()
    }

    pub fn contains(&self, pos: usize) -> bool {
        self.bits.get(pos).is_some_and(|b| *b)
    }

    pub fn positions(&self) -> impl Iterator<Item = usize> + '_ {
        self.bits.iter_ones()
    }

    pub fn union(&self, other: &KeepSet) -> KeepSet {
        let mut bits = self.bits.clone();
        bits |= &other.bits;
        KeepSet { bits }
    }

    pub fn intersection(&self, other: &KeepSet) -> KeepSet {
        let mut bits = self.bits.clone();
        bits &= &other.bits;
        KeepSet { bits }
    }

    /// `self ∖ other`.
    pub fn difference(&self, other: &KeepSet) -> KeepSet {
        let mut bits = other.bits.clone();
        bits = !bits;
        bits &= &self.bits;
        KeepSet { bits }
    }

    pub fn is_subset(&self, other: &KeepSet) -> bool {
        self.intersection(other) == *self
    }

    /// Appends `other`'s universe after this one.
    pub fn concat(&self, other: &KeepSet) -> KeepSet {
        let mut bits = self.bits.clone();
        bits.extend_from_bitslice(&other.bits);
        KeepSet { bits }
    }
}

impl fmt::Debug for KeepSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.positions()).finish()
    }
}

/// Anything that selects, at a given document state, the positions to keep.
pub trait Eraser {
    fn keep_set(&self, doc: &Document, mode: SemanticsMode) -> KeepSet;

    /// `mask' = mask ∧ keep_set(doc)`; the input is left untouched.
    fn apply(&self, doc: &Document, mode: SemanticsMode) -> Document {
        doc.restrict(&self.keep_set(doc, mode))
    }
}

impl<E: Eraser + ?Sized> Eraser for &E {
    fn keep_set(&self, doc: &Document, mode: SemanticsMode) -> KeepSet {
        (**self).keep_set(doc, mode)
    }
}

/// Applies `steps` left to right; each step sees the previous step's output.
pub fn apply_pipeline<E: Eraser>(steps: &[E], doc: &Document, mode: SemanticsMode) -> Document {
    steps
        .iter()
        .fold(doc.clone(), |state, step| step.apply(&state, mode))
}

/// `E(term, halfwidth)`: keeps windows of `2·halfwidth + 1` tokens centred on
/// each anchor occurrence of `term`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AtomicEraser {
    term: String,
    halfwidth: usize,
}

impl AtomicEraser {
    /// # Panics
    ///
    /// Panics if `term` is empty.
    pub fn new(term: impl Into<String>, halfwidth: usize) -> Self {
        let term = term.into();
        assert!(!term.is_empty(), "eraser term must be nonempty");
        AtomicEraser { term, halfwidth }
    }

    pub fn term(&self) -> &str {
        &self.term
    }

    pub fn halfwidth(&self) -> usize {
        self.halfwidth
    }

    pub fn window_size(&self) -> usize {
        2 * self.halfwidth + 1
    }
}

impl fmt::Display for AtomicEraser {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "E({},{})", self.term, self.halfwidth)
    }
}

impl Eraser for AtomicEraser {
    fn keep_set(&self, doc: &Document, mode: SemanticsMode) -> KeepSet {
        let n = doc.len();
        let mut bits = bitvec![0; n];
        let anchors = doc.tokens().iter().enumerate().filter(|(p, t)| {
            *t == &self.term && (mode == SemanticsMode::Static || doc.is_alive(*p))
        });
        for (p, _) in anchors {
            let lo = p.saturating_sub(self.halfwidth);
            let hi = p.saturating_add(self.halfwidth).min(n - 1);
            bits[lo..=hi].fill(true);
        }
        KeepSet::from_bits(bits)
    }
}
