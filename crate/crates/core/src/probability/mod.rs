//! Probabilities of erasers.
//!
//! `P(E|D)` is the chance that a token of `D` picked at random survives `E`.
//! Two interchangeable backends compute it:
//!
//! * [`Backend::Counting`] counts surviving tokens with exact rationals;
//! * [`Backend::Trace`] builds a uniform diagonal density operator and 0/1
//!   projectors and evaluates `Trace(Π ρ)` (see [`trace`]).

pub mod density;
pub mod trace;

use std::fmt;

use serde::{Deserialize, Serialize, Serializer};
use thiserror::Error;

use crate::eraser::{apply_pipeline, Eraser, SemanticsMode};
use crate::expr::EraserExpr;
use crate::scalar::{Exact, Scalar};
use crate::text::{Corpus, Document};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ProbError {
    #[error("document `{doc_id}` has no tokens; probabilities are undefined")]
    EmptyDocument { doc_id: String },
    #[error("corpus has no tokens; probabilities are undefined")]
    EmptyCorpus,
    #[error("conditioning prefix erases every token of `{doc_id}`; the conditional is undefined")]
    UndefinedConditional { doc_id: String },
    #[error("an implication query needs a nonempty conditioning prefix")]
    MissingPrefix,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Backend {
    #[default]
    Counting,
    Trace,
}

impl Backend {
    pub fn as_str(self) -> &'static str {
        match self {
            Backend::Counting => "counting",
            Backend::Trace => "trace",
        }
    }
}

impl fmt::Display for Backend {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl std::str::FromStr for Backend {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "counting" => Ok(Backend::Counting),
            "trace" => Ok(Backend::Trace),
            other => Err(format!(
                "unknown backend `{other}` (expected `counting` or `trace`)"
            )),
        }
    }
}

/// How documents are weighted in a collection state.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Weighting {
    /// Each document weighs `|d| / total_tokens`: every token is equally
    /// likely.
    #[default]
    TokenCount,
    /// Each nonempty document weighs the same.
    Uniform,
}

impl std::str::FromStr for Weighting {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "token-count" => Ok(Weighting::TokenCount),
            "uniform" => Ok(Weighting::Uniform),
            other => Err(format!("unknown weighting `{other}`")),
        }
    }
}

/// A probability value; `exact` is present for the counting backend.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Probability {
    pub value: f64,
    pub exact: Option<Exact>,
}

impl Probability {
    fn exact(r: Exact) -> Self {
        Probability {
            value: r.to_f64(),
            exact: Some(r),
        }
    }

    fn approx(value: f64) -> Self {
        Probability { value, exact: None }
    }
}

impl Serialize for Probability {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut s = serializer.serialize_struct("Probability", 2)?;
        s.serialize_field("value", &self.value)?;
        s.serialize_field(
            "exact",
            &self.exact.map(|r| format!("{}/{}", r.numer(), r.denom())),
        )?;
        s.end()
    }
}

fn ratio(num: usize, den: usize) -> Exact {
    Exact::new(num as u64, den as u64)
}

fn nonempty(doc: &Document) -> Result<(), ProbError> {
    if doc.is_empty() {
        Err(ProbError::EmptyDocument {
            doc_id: doc.id().to_owned(),
        })
    } else {
        Ok(())
    }
}

/// `F(ED) = |ED| / |D|` on the pristine document.
pub fn fraction(e: &EraserExpr, doc: &Document, mode: SemanticsMode) -> Result<Exact, ProbError> {
    let doc = doc.pristine();
    nonempty(&doc)?;
    Ok(ratio(e.apply(&doc, mode).alive_count(), doc.len()))
}

pub mod counting {
    //! Exact counting backend.

    use super::*;

    pub fn prob_doc(
        e: &EraserExpr,
        doc: &Document,
        mode: SemanticsMode,
    ) -> Result<Exact, ProbError> {
        fraction(e, doc, mode)
    }

    /// `|E2[prefix D]| / |D|`.
    pub fn prob_conditional(
        target: &EraserExpr,
        given: &[EraserExpr],
        doc: &Document,
        mode: SemanticsMode,
    ) -> Result<Exact, ProbError> {
        let doc = doc.pristine();
        nonempty(&doc)?;
        let state = apply_pipeline(given, &doc, mode);
        Ok(ratio(target.apply(&state, mode).alive_count(), doc.len()))
    }

    /// `|E2[prefix D]| / |prefix D|`.
    pub fn prob_implication(
        given: &[EraserExpr],
        target: &EraserExpr,
        doc: &Document,
        mode: SemanticsMode,
    ) -> Result<Exact, ProbError> {
        let doc = doc.pristine();
        nonempty(&doc)?;
        let state = apply_pipeline(given, &doc, mode);
        let denom = state.alive_count();
        if denom == 0 {
            return Err(ProbError::UndefinedConditional {
                doc_id: doc.id().to_owned(),
            });
        }
        Ok(ratio(target.apply(&state, mode).alive_count(), denom))
    }

    pub fn prob_collection(
        e: &EraserExpr,
        corpus: &Corpus,
        mode: SemanticsMode,
        weighting: Weighting,
    ) -> Result<Exact, ProbError> {
        let docs: Vec<&Document> = corpus.docs().iter().filter(|d| !d.is_empty()).collect();
        if docs.is_empty() {
            return Err(ProbError::EmptyCorpus);
        }
        Ok(match weighting {
            Weighting::TokenCount => {
                let kept: usize = docs
                    .iter()
                    .map(|d| e.apply(&d.pristine(), mode).alive_count())
                    .sum();
                ratio(kept, corpus.total_tokens())
            }
            Weighting::Uniform => {
                let sum = docs.iter().try_fold(Exact::from_integer(0), |acc, d| {
                    fraction(e, d, mode).map(|f| acc + f)
                })?;
                sum / Exact::from_integer(docs.len() as u64)
            }
        })
    }
}

/// `P(E|D)`.
pub fn prob_doc(
    e: &EraserExpr,
    doc: &Document,
    mode: SemanticsMode,
    backend: Backend,
) -> Result<Probability, ProbError> {
    prob_conditional(e, &[], doc, mode, backend)
}

/// `P(E2 | prefix D)`: survival mass after the prefix and then `target`.
pub fn prob_conditional(
    target: &EraserExpr,
    given: &[EraserExpr],
    doc: &Document,
    mode: SemanticsMode,
    backend: Backend,
) -> Result<Probability, ProbError> {
    match backend {
        Backend::Counting => {
            counting::prob_conditional(target, given, doc, mode).map(Probability::exact)
        }
        Backend::Trace => {
            trace::prob_conditional::<f64>(target, given, doc, mode).map(Probability::approx)
        }
    }
}

/// `P(prefix > E2 | D)`: fraction of the prefix's survivors that also
/// survive `target`.
pub fn prob_implication(
    given: &[EraserExpr],
    target: &EraserExpr,
    doc: &Document,
    mode: SemanticsMode,
    backend: Backend,
) -> Result<Probability, ProbError> {
    if given.is_empty() {
        return Err(ProbError::MissingPrefix);
    }
    match backend {
        Backend::Counting => {
            counting::prob_implication(given, target, doc, mode).map(Probability::exact)
        }
        Backend::Trace => {
            trace::prob_implication::<f64>(given, target, doc, mode).map(Probability::approx)
        }
    }
}

pub fn prob_collection(
    e: &EraserExpr,
    corpus: &Corpus,
    mode: SemanticsMode,
    backend: Backend,
    weighting: Weighting,
) -> Result<Probability, ProbError> {
    match backend {
        Backend::Counting => {
            counting::prob_collection(e, corpus, mode, weighting).map(Probability::exact)
        }
        Backend::Trace => {
            trace::prob_collection::<f64>(e, corpus, mode, weighting).map(Probability::approx)
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum QueryKind {
    Plain,
    Conditional,
    Implication,
}

/// A probability question about one document.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProbQuery {
    target: EraserExpr,
    given: Vec<EraserExpr>,
    kind: QueryKind,
}

impl ProbQuery {
    pub fn plain(target: EraserExpr) -> Self {
        ProbQuery {
            target,
            given: Vec::new(),
            kind: QueryKind::Plain,
        }
    }

    pub fn conditional(target: EraserExpr, given: Vec<EraserExpr>) -> Self {
        ProbQuery {
            target,
            given,
            kind: QueryKind::Conditional,
        }
    }

    pub fn implication(given: Vec<EraserExpr>, target: EraserExpr) -> Result<Self, ProbError> {
        if given.is_empty() {
            return Err(ProbError::MissingPrefix);
        }
        Ok(ProbQuery {
            target,
            given,
            kind: QueryKind::Implication,
        })
    }

    pub fn target(&self) -> &EraserExpr {
        &self.target
    }

    pub fn given(&self) -> &[EraserExpr] {
        &self.given
    }

    pub fn kind(&self) -> QueryKind {
        self.kind
    }

    pub fn evaluate(
        &self,
        doc: &Document,
        mode: SemanticsMode,
        backend: Backend,
    ) -> Result<Probability, ProbError> {
        match self.kind {
            QueryKind::Plain => prob_doc(&self.target, doc, mode, backend),
            QueryKind::Conditional => {
                prob_conditional(&self.target, &self.given, doc, mode, backend)
            }
            QueryKind::Implication => {
                prob_implication(&self.given, &self.target, doc, mode, backend)
            }
        }
    }
}

impl fmt::Display for ProbQuery {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let prefix = self
            .given
            .iter()
            .map(ToString::to_string)
            .collect::<Vec<_>>()
            .join(" -> ");
        match self.kind {
            QueryKind::Plain => write!(f, "P({} | D)", self.target),
            QueryKind::Conditional if self.given.is_empty() => write!(f, "P({} | D)", self.target),
            QueryKind::Conditional => write!(f, "P({} | {prefix} · D)", self.target),
            QueryKind::Implication => write!(f, "P({prefix} > {} | D)", self.target),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::text::TokenizerConfig;
    use SemanticsMode::*;

    fn hamlet() -> Document {
        TokenizerConfig::default().tokenize("hamlet", "to be or not to be, that is the question")
    }

    fn e(t: &str, w: usize) -> EraserExpr {
        EraserExpr::atom(t, w)
    }

    fn both(f: impl Fn(Backend) -> Result<Probability, ProbError>) -> (Probability, Probability) {
        (f(Backend::Counting).unwrap(), f(Backend::Trace).unwrap())
    }

    #[test]
    fn fractions() {
        let d = hamlet();
        assert_eq!(fraction(&e("is", 2), &d, Dynamic), Ok(Exact::new(1, 2)));
        assert_eq!(
            fraction(&(e("a", 0) | !e("a", 0)), &d, Dynamic),
            Ok(Exact::from_integer(1))
        );
        assert_eq!(
            fraction(&e("zebra", 3), &d, Dynamic),
            Ok(Exact::from_integer(0))
        );
        let empty = TokenizerConfig::default().tokenize("empty", "");
        assert!(matches!(
            fraction(&e("x", 0), &empty, Dynamic),
            Err(ProbError::EmptyDocument { .. })
        ));
    }

    #[test]
    fn plain_probabilities() {
        let d = hamlet();
        let (c, t) = both(|b| prob_doc(&e("is", 2), &d, Dynamic, b));
        assert_eq!(c.exact, Some(Exact::new(1, 2)));
        assert!((t.value - 0.5).abs() < 1e-12);
        let (c, _) = both(|b| prob_doc(&e("to", 1), &d, Dynamic, b));
        assert_eq!(c.exact, Some(Exact::new(1, 2)));
        let t = prob_doc(&(e("a", 0) | !e("a", 0)), &d, Dynamic, Backend::Trace).unwrap();
        assert!((t.value - 1.0).abs() < 1e-12);
    }

    #[test]
    fn conditional_shows_order() {
        let d = hamlet();
        let (c, t) = both(|b| prob_conditional(&e("question", 1), &[e("is", 2)], &d, Dynamic, b));
        assert_eq!(c.exact, Some(Exact::new(1, 5)));
        assert!((t.value - 0.2).abs() < 1e-12);
        let (c, t) = both(|b| prob_conditional(&e("is", 2), &[e("question", 1)], &d, Dynamic, b));
        assert_eq!(c.exact, Some(Exact::from_integer(0)));
        assert_eq!(t.value, 0.0);
    }

    #[test]
    fn implications() {
        let d = hamlet();
        let (c, t) = both(|b| prob_implication(&[e("is", 2)], &e("be", 0), &d, Dynamic, b));
        assert_eq!(c.exact, Some(Exact::new(1, 5)));
        assert!((t.value - 0.2).abs() < 1e-12);
        let (c, t) = both(|b| prob_implication(&[e("is", 3)], &e("is", 2), &d, Dynamic, b));
        assert_eq!(c.exact, Some(Exact::new(5, 6)));
        assert!((t.value - 5.0 / 6.0).abs() < 1e-12);
        let (c, _) = both(|b| prob_implication(&[e("be", 1)], &e("be", 1), &d, Dynamic, b));
        assert_eq!(c.exact, Some(Exact::from_integer(1)));

        for b in [Backend::Counting, Backend::Trace] {
            assert!(matches!(
                prob_implication(&[e("zebra", 1)], &e("be", 0), &d, Dynamic, b),
                Err(ProbError::UndefinedConditional { .. })
            ));
            assert_eq!(
                prob_implication(&[], &e("be", 0), &d, Dynamic, b),
                Err(ProbError::MissingPrefix)
            );
        }
    }

    #[test]
    fn collections() {
        let cfg = TokenizerConfig::default();
        let corpus = Corpus::new(vec![
            cfg.tokenize("hamlet", "to be or not to be, that is the question"),
            cfg.tokenize("moot", "the question is moot"),
        ])
        .unwrap();
        let (c, t) =
            both(|b| prob_collection(&e("is", 2), &corpus, Dynamic, b, Weighting::TokenCount));
        assert_eq!(c.exact, Some(Exact::new(9, 14)));
        assert!((t.value - 9.0 / 14.0).abs() < 1e-12);
        // uniform: (1/2 + 1) / 2
        let (c, t) =
            both(|b| prob_collection(&e("is", 2), &corpus, Dynamic, b, Weighting::Uniform));
        assert_eq!(c.exact, Some(Exact::new(3, 4)));
        assert!((t.value - 0.75).abs() < 1e-12);

        let single = Corpus::new(vec![hamlet()]).unwrap();
        let c = prob_collection(
            &e("is", 2),
            &single,
            Dynamic,
            Backend::Counting,
            Weighting::TokenCount,
        )
        .unwrap();
        assert_eq!(
            c.exact,
            prob_doc(&e("is", 2), &hamlet(), Dynamic, Backend::Counting)
                .unwrap()
                .exact
        );
        let c = prob_collection(
            &e("zebra", 2),
            &corpus,
            Dynamic,
            Backend::Counting,
            Weighting::TokenCount,
        )
        .unwrap();
        assert_eq!(c.value, 0.0);
        assert_eq!(
            prob_collection(
                &e("a", 0),
                &Corpus::default(),
                Dynamic,
                Backend::Trace,
                Weighting::TokenCount
            ),
            Err(ProbError::EmptyCorpus)
        );
    }

    #[test]
    fn exact_trace_matches_counting_exactly() {
        let d = hamlet();
        let given = [e("is", 3), e("be", 2) | e("question", 0)];
        let target = !e("that", 1);
        for mode in [Dynamic, Static] {
            let c = counting::prob_conditional(&target, &given, &d, mode).unwrap();
            let t = trace::prob_conditional::<Exact>(&target, &given, &d, mode).unwrap();
            assert_eq!(c, t);
            let t32 = trace::prob_conditional::<f32>(&target, &given, &d, mode).unwrap();
            assert!((f64::from(t32) - c.to_f64()).abs() < 1e-6);
        }
    }

    #[test]
    fn query_objects() {
        let d = hamlet();
        let q = ProbQuery::implication(vec![e("is", 3)], e("is", 2)).unwrap();
        assert_eq!(
            q.evaluate(&d, Dynamic, Backend::Counting).unwrap().exact,
            Some(Exact::new(5, 6))
        );
        assert_eq!(q.to_string(), "P(E(is,3) > E(is,2) | D)");
        assert!(ProbQuery::implication(vec![], e("a", 0)).is_err());
        let q = ProbQuery::conditional(e("question", 1), vec![e("is", 2)]);
        assert_eq!(q.to_string(), "P(E(question,1) | E(is,2) · D)");
        let json =
            serde_json::to_string(&q.evaluate(&d, Dynamic, Backend::Counting).unwrap()).unwrap();
        assert_eq!(json, r#"{"value":0.2,"exact":"1/5"}"#);
    }
}
