//! Selective erasers: projective lexical measurements on tokenized text.
//!
//! A selective eraser `E(t, w)` keeps every token within `w` positions of an
//! occurrence of the term `t` and erases everything else. Erasers are
//! idempotent, partially ordered and, when chained, need not commute. This
//! crate provides
//!
//! * the document model and tokenizer ([`text`]),
//! * atomic erasers and pipelines ([`eraser`]),
//! * boolean composites and the `E(t,w)` expression language ([`expr`]),
//! * order, compatibility and commutation checks plus clustering
//!   ([`relations`]),
//! * term frequency, bag-of-words and windowed co-occurrence ([`measure`]),
//! * probabilities with a counting backend and a density-operator trace
//!   backend generic over the scalar type ([`probability`]).
//!
//! ```
//! use selective_eraser::{parse_query, Eraser, RenderStyle, SemanticsMode, TokenizerConfig};
//!
//! let cfg = TokenizerConfig::default();
//! let doc = cfg.tokenize("hamlet", "to be or not to be, that is the question");
//! let query = parse_query("E(is,2)", &cfg).unwrap();
//! let out = query.apply(&doc, SemanticsMode::Dynamic);
//! assert_eq!(out.render(RenderStyle::Compact), "be that is the question");
//! ```

pub mod eraser;
pub mod expr;
pub mod measure;
pub mod probability;
pub mod relations;
pub mod scalar;
pub mod text;

pub use eraser::{apply_pipeline, AtomicEraser, Eraser, KeepSet, SemanticsMode};
pub use expr::{parse_expr, parse_pipeline, parse_query, EraserExpr, ParseError, Pipeline, Query};
pub use measure::{bag_of_words, cooccurrence, orthogonality_check, term_frequency, CoocQuery};
pub use probability::density::{DensityOperator, Projector};
pub use probability::{Backend, ProbError, ProbQuery, Probability, QueryKind, Weighting};
pub use relations::{
    cluster_by_relation, corpus_relation, implied_order, order_relation, ClusterPartition,
    DocVerdict, ImpliedOrder, RelationReport,
};
pub use scalar::{Exact, Scalar};
pub use text::{
    load_corpus, Corpus, CorpusError, CorpusFormat, Document, RenderStyle, Splitter,
    TokenizerConfig,
};

pub type DensityOperatorF32 = DensityOperator<f32>;
pub type DensityOperatorF64 = DensityOperator<f64>;
pub type ExactDensityOperator = DensityOperator<Exact>;
