//! Trace backend: probabilities as `Trace(Π ρ)` over explicit diagonal
//! operators, generic over the scalar type.
//!
//! Each step of a conditioning prefix builds its projector from the keep-set
//! at the state where that step is applied, so the conditioned state carries
//! the same order dependence as sequential erasure.

use super::{ProbError, Weighting};
use crate::eraser::{Eraser, KeepSet, SemanticsMode};
use crate::expr::EraserExpr;
use crate::probability::density::{DensityOperator, Projector};
use crate::scalar::Scalar;
use crate::text::{Corpus, Document};

/// Runs `ρ ← Π ρ Π` for every step of `given`, starting from the uniform
/// state of the pristine document. Returns the conditioned operator and the
/// erasure state it corresponds to.
pub fn condition<T: Scalar>(
    given: &[EraserExpr],
    doc: &Document,
    mode: SemanticsMode,
) -> Result<(DensityOperator<T>, Document), ProbError> {
    let mut state = doc.pristine();
    let mut rho =
        DensityOperator::uniform(state.len()).ok_or_else(|| ProbError::EmptyDocument {
            doc_id: doc.id().to_owned(),
        })?;
    for step in given {
        let pi = Projector::new(step.keep_set(&state, mode));
        rho = rho.sandwich(&pi);
        state = state.restrict(pi.support());
    }
    Ok((rho, state))
}

/// `P(E|D) = Trace(Π_E ρ_D)`.
pub fn prob_doc<T: Scalar>(
    e: &EraserExpr,
    doc: &Document,
    mode: SemanticsMode,
) -> Result<T, ProbError> {
    prob_conditional(e, &[], doc, mode)
}

/// `P(E2 | E1 D) = Trace(Π_E2 (Π_E1 ρ_D Π_E1))`, generalized to a prefix of
/// any length.
pub fn prob_conditional<T: Scalar>(
    target: &EraserExpr,
    given: &[EraserExpr],
    doc: &Document,
    mode: SemanticsMode,
) -> Result<T, ProbError> {
    let (rho, state) = condition::<T>(given, doc, mode)?;
    Ok(rho.expectation(&Projector::new(target.keep_set(&state, mode))))
}

/// `P(E1 > E2 | D) = Trace(Π_E2 Π_E1 ρ_D Π_E1) / Trace(Π_E1 ρ_D)`.
pub fn prob_implication<T: Scalar>(
    given: &[EraserExpr],
    target: &EraserExpr,
    doc: &Document,
    mode: SemanticsMode,
) -> Result<T, ProbError> {
    let (rho, state) = condition::<T>(given, doc, mode)?;
    let denom = rho.trace();
    if denom == T::zero() {
        return Err(ProbError::UndefinedConditional {
            doc_id: doc.id().to_owned(),
        });
    }
    Ok(rho.expectation(&Projector::new(target.keep_set(&state, mode))) / denom)
}

/// Collection probability with a block-diagonal `ρ`, one block per document.
pub fn prob_collection<T: Scalar>(
    e: &EraserExpr,
    corpus: &Corpus,
    mode: SemanticsMode,
    weighting: Weighting,
) -> Result<T, ProbError> {
    let docs: Vec<&Document> = corpus.docs().iter().filter(|d| !d.is_empty()).collect();
    if docs.is_empty() {
        return Err(ProbError::EmptyCorpus);
    }
    let total = T::from_count(corpus.total_tokens());
    let count = T::from_count(docs.len());
    let rho = DensityOperator::block_diagonal(docs.iter().map(|d| {
        let mass = match weighting {
            Weighting::TokenCount => T::from_count(d.len()) / total.clone(),
            Weighting::Uniform => T::one() / count.clone(),
        };
        (mass, d.len())
    }));
    let support = docs.iter().fold(KeepSet::empty(0), |acc, d| {
        acc.concat(&e.keep_set(&d.pristine(), mode))
    });
    Ok(rho.expectation(&Projector::new(support)))
}
