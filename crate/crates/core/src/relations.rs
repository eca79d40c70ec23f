//! Order relations, incompatibility and commutation between erasers, and
//! clustering documents by whether a relation holds on them.
//!
//! `E1 ≥ E2` on a document `D` means `E2[E1 D] = E2 D`: running `E1` first
//! changes nothing about what `E2` leaves. Verdicts are always computed from
//! the pristine document, and corpus verdicts quantify over the supplied
//! corpus only.

use serde::Serialize;

use crate::eraser::{AtomicEraser, Eraser, SemanticsMode};
use crate::expr::EraserExpr;
use crate::text::{Corpus, Document};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DocVerdict {
    pub doc_id: String,
    /// `E1 ≥ E2` on this document.
    pub geq: bool,
    /// `E1 ≤ E2` on this document.
    pub leq: bool,
    /// Both application orders leave the same mask.
    pub commutes: bool,
    /// `E2` alone erases everything.
    pub vacuous: bool,
}

impl DocVerdict {
    pub fn incompatible(&self) -> bool {
        !self.geq && !self.leq
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RelationReport {
    pub e1: EraserExpr,
    pub e2: EraserExpr,
    pub mode: SemanticsMode,
    pub verdicts: Vec<DocVerdict>,
    pub corpus_geq: bool,
    pub corpus_leq: bool,
    /// Neither direction holds on the whole corpus.
    pub corpus_incompatible: bool,
    pub corpus_commutes: bool,
}

/// Documents grouped by whether `E1 ≥ E2` holds on them.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct ClusterPartition {
    pub holds: Vec<String>,
    /// The relation holds only because `E2` erases the whole document.
    pub holds_vacuously: Vec<String>,
    pub fails: Vec<String>,
}

pub fn order_relation<A, B>(e1: &A, e2: &B, doc: &Document, mode: SemanticsMode) -> DocVerdict
where
    A: Eraser + ?Sized,
    B: Eraser + ?Sized,
{
    let doc = doc.pristine();
    let only1 = e1.apply(&doc, mode);
    let only2 = e2.apply(&doc, mode);
    let two_after_one = e2.apply(&only1, mode);
    let one_after_two = e1.apply(&only2, mode);
    DocVerdict {
        doc_id: doc.id().to_owned(),
        geq: two_after_one.mask() == only2.mask(),
        leq: one_after_two.mask() == only1.mask(),
        commutes: two_after_one.mask() == one_after_two.mask(),
        vacuous: only2.alive_count() == 0,
    }
}

pub fn corpus_relation(
    e1: &EraserExpr,
    e2: &EraserExpr,
    corpus: &Corpus,
    mode: SemanticsMode,
) -> RelationReport {
    let verdicts: Vec<DocVerdict> = corpus
        .docs()
        .iter()
        .map(|d| order_relation(e1, e2, d, mode))
        .collect();
    let corpus_geq = verdicts.iter().all(|v| v.geq);
    let corpus_leq = verdicts.iter().all(|v| v.leq);
    RelationReport {
        e1: e1.clone(),
        e2: e2.clone(),
        mode,
        corpus_commutes: verdicts.iter().all(|v| v.commutes),
        corpus_geq,
        corpus_leq,
        corpus_incompatible: !corpus_geq && !corpus_leq,
        verdicts,
    }
}

pub fn cluster_by_relation(
    e1: &EraserExpr,
    e2: &EraserExpr,
    corpus: &Corpus,
    mode: SemanticsMode,
) -> ClusterPartition {
    let mut out = ClusterPartition::default();
    for doc in corpus.docs() {
        let v = order_relation(e1, e2, doc, mode);
        let bucket = match (v.geq, v.vacuous) {
            (true, false) => &mut out.holds,
            (true, true) => &mut out.holds_vacuously,
            (false, _) => &mut out.fails,
        };
        bucket.push(v.doc_id);
    }
    out
}

/// An order relation that follows from the erasers' definitions alone.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ImpliedOrder {
    /// `e1 ≥ e2`
    Geq,
    /// `e1 ≤ e2`
    Leq,
    /// Both directions.
    Equal,
}

/// Order relation implied by the erasers' propositions, independent of any
/// document.
///
/// Being within `w2` tokens of `t` implies being within `w1 ≥ w2` tokens of
/// `t`, so `E(t,w1) ≥ E(t,w2)`. Any other pair is contingent on the
/// documents and yields `None`.
pub fn implied_order(e1: &AtomicEraser, e2: &AtomicEraser) -> Option<ImpliedOrder> {
    if e1.term() != e2.term() {
        return None;
    }
    Some(match e1.halfwidth().cmp(&e2.halfwidth()) {
        std::cmp::Ordering::Greater => ImpliedOrder::Geq,
        std::cmp::Ordering::Less => ImpliedOrder::Leq,
        std::cmp::Ordering::Equal => ImpliedOrder::Equal,
    })
}
