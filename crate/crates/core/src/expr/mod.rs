//! Composite erasers and the eraser expression language.
//!
//! Boolean composites (`!`, `&`, `|`) are order-free propositions: every
//! child of a node is evaluated against the same document state. Sequencing
//! lives only in [`Pipeline`] (`->`), which is where order dependence comes
//! from.

mod parse;

use std::fmt;
use std::ops;

use serde::{Serialize, Serializer};

use crate::eraser::{apply_pipeline, AtomicEraser, Eraser, KeepSet, SemanticsMode};
use crate::text::Document;

pub use parse::{parse_expr, parse_pipeline, parse_query, ParseError, ParseErrorKind};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum EraserExpr {
    Atomic(AtomicEraser),
    /// Complement: keeps what the inner eraser would erase.
    Not(Box<EraserExpr>),
    /// Join: erases only what both sides would erase.
    Or(Box<EraserExpr>, Box<EraserExpr>),
    /// Meet: erases what either side would erase.
    And(Box<EraserExpr>, Box<EraserExpr>),
}

impl EraserExpr {
    pub fn atom(term: impl Into<String>, halfwidth: usize) -> Self {
        EraserExpr::Atomic(AtomicEraser::new(term, halfwidth))
    }

    pub fn complement(self) -> Self {
        EraserExpr::Not(Box::new(self))
    }

    pub fn join(self, other: EraserExpr) -> Self {
        EraserExpr::Or(Box::new(self), Box::new(other))
    }

    pub fn meet(self, other: EraserExpr) -> Self {
        EraserExpr::And(Box::new(self), Box::new(other))
    }

    pub fn as_atomic(&self) -> Option<&AtomicEraser> {
        match self {
            EraserExpr::Atomic(a) => Some(a),
            _ => None,
        }
    }

    /// Number of atomic leaves.
    pub fn leaves(&self) -> usize {
        match self {
            EraserExpr::Atomic(_) => 1,
            EraserExpr::Not(e) => e.leaves(),
            EraserExpr::Or(a, b) | EraserExpr::And(a, b) => a.leaves() + b.leaves(),
        }
    }

    fn precedence(&self) -> u8 {
        match self {
            EraserExpr::Or(..) => 1,
            EraserExpr::And(..) => 2,
            EraserExpr::Not(_) => 3,
            EraserExpr::Atomic(_) => 4,
        }
    }
}

impl From<AtomicEraser> for EraserExpr {
    fn from(a: AtomicEraser) -> Self {
        EraserExpr::Atomic(a)
    }
}

impl ops::Not for EraserExpr {
    type Output = EraserExpr;

    fn not(self) -> EraserExpr {
        self.complement()
    }
}

impl ops::BitOr for EraserExpr {
    type Output = EraserExpr;

    fn bitor(self, rhs: EraserExpr) -> EraserExpr {
        self.join(rhs)
    }
}

impl ops::BitAnd for EraserExpr {
    type Output = EraserExpr;

    fn bitand(self, rhs: EraserExpr) -> EraserExpr {
        self.meet(rhs)
    }
}

impl Eraser for EraserExpr {
    fn keep_set(&self, doc: &Document, mode: SemanticsMode) -> KeepSet {
        match self {
            EraserExpr::Atomic(a) => a.keep_set(doc, mode),
            EraserExpr::Not(e) => {
                let base = match mode {
                    // relative to what is alive, so erasure stays monotone
                    SemanticsMode::Dynamic => doc.alive_set(),
                    SemanticsMode::Static => KeepSet::full(doc.len()),
                };
                base.difference(&e.keep_set(doc, mode))
            }
            EraserExpr::Or(a, b) => a.keep_set(doc, mode).union(&b.keep_set(doc, mode)),
            EraserExpr::And(a, b) => a.keep_set(doc, mode).intersection(&b.keep_set(doc, mode)),
        }
    }
}

/// Writes `child` with parentheses when it binds looser than its parent
/// slot requires.
fn write_child(f: &mut fmt::Formatter<'_>, child: &EraserExpr, min_prec: u8) -> fmt::Result {
    if child.precedence() < min_prec {
        write!(f, "({child})")
    } else {
        write!(f, "{child}")
    }
}

impl fmt::Display for EraserExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EraserExpr::Atomic(a) => write!(f, "{a}"),
            EraserExpr::Not(e) => {
                f.write_str("!")?;
                write_child(f, e, 3)
            }
            // binary operators parse left-associatively, so a right child of
            // the same precedence needs parentheses
            EraserExpr::Or(a, b) => {
                write_child(f, a, 1)?;
                f.write_str(" | ")?;
                write_child(f, b, 2)
            }
            EraserExpr::And(a, b) => {
                write_child(f, a, 2)?;
                f.write_str(" & ")?;
                write_child(f, b, 3)
            }
        }
    }
}

impl Serialize for EraserExpr {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

/// A nonempty sequence of erasers applied left to right.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Pipeline {
    steps: Vec<EraserExpr>,
}

impl Pipeline {
    /// `None` when `steps` is empty.
    pub fn new(steps: Vec<EraserExpr>) -> Option<Self> {
        (!steps.is_empty()).then_some(Pipeline { steps })
    }

    pub fn single(expr: EraserExpr) -> Self {
        Pipeline { steps: vec![expr] }
    }

    pub fn steps(&self) -> &[EraserExpr] {
        &self.steps
    }

    pub fn into_steps(self) -> Vec<EraserExpr> {
        self.steps
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn then(mut self, step: EraserExpr) -> Self {
        self.steps.push(step);
        self
    }

    pub fn apply(&self, doc: &Document, mode: SemanticsMode) -> Document {
        apply_pipeline(&self.steps, doc, mode)
    }
}

impl fmt::Display for Pipeline {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, step) in self.steps.iter().enumerate() {
            if i > 0 {
                f.write_str(" -> ")?;
            }
            write!(f, "{step}")?;
        }
        Ok(())
    }
}

impl Serialize for Pipeline {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

/// A parsed query: a single expression, or a pipeline of two or more steps.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Query {
    Expr(EraserExpr),
    Pipeline(Pipeline),
}

impl Query {
    /// A one-step pipeline collapses to its expression.
    pub fn from_pipeline(p: Pipeline) -> Self {
        if p.len() == 1 {
            Query::Expr(p.steps.into_iter().next().expect("nonempty"))
        } else {
            Query::Pipeline(p)
        }
    }

    pub fn into_pipeline(self) -> Pipeline {
        match self {
            Query::Expr(e) => Pipeline::single(e),
            Query::Pipeline(p) => p,
        }
    }

    pub fn apply(&self, doc: &Document, mode: SemanticsMode) -> Document {
        match self {
            Query::Expr(e) => e.apply(doc, mode),
            Query::Pipeline(p) => p.apply(doc, mode),
        }
    }
}

impl fmt::Display for Query {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Query::Expr(e) => write!(f, "{e}"),
            Query::Pipeline(p) => write!(f, "{p}"),
        }
    }
}
