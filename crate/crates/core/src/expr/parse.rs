// Recursive descent parser for eraser expressions.
//
// pipeline := expr ("->" expr)* ;
// expr     := term ("|" term)* ;
// term     := factor ("&" factor)* ;
// factor   := "!" factor | "(" expr ")" | atom ;
// atom     := "E(" TERM "," NAT ")" ;

use std::fmt;

use thiserror::Error;

use super::{EraserExpr, Pipeline, Query};
use crate::eraser::AtomicEraser;
use crate::text::TokenizerConfig;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ParseErrorKind {
    /// Input did not match the grammar at this point.
    Unexpected {
        found: Option<char>,
        expected: Vec<&'static str>,
    },
    InvalidWidth(String),
    /// The term does not normalize to exactly one token.
    InvalidTerm(String),
    UnclosedParen {
        open: usize,
    },
    UnmatchedCloseParen,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub struct ParseError {
    /// Byte offset into the input.
    pub offset: usize,
    pub kind: ParseErrorKind,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "syntax error at offset {}: ", self.offset)?;
        match &self.kind {
            ParseErrorKind::Unexpected { found, expected } => {
                match found {
                    Some(c) => write!(f, "unexpected `{c}`")?,
                    None => f.write_str("unexpected end of input")?,
                }
                write!(f, ", expected one of: {}", expected.join(", "))
            }
            ParseErrorKind::InvalidWidth(w) => {
                write!(f, "width must be a nonnegative integer, got `{w}`")
            }
            ParseErrorKind::InvalidTerm(t) => {
                write!(f, "term `{t}` does not normalize to a single token")
            }
            ParseErrorKind::UnclosedParen { open } => {
                write!(f, "unclosed parenthesis opened at offset {open}")
            }
            ParseErrorKind::UnmatchedCloseParen => f.write_str("unmatched `)`"),
        }
    }
}

const FACTOR_START: &[&str] = &["`!`", "`(`", "`E(`"];

struct Parser<'a> {
    src: &'a str,
    pos: usize,
    config: &'a TokenizerConfig,
}

impl<'a> Parser<'a> {
    fn rest(&self) -> &'a str {
        &self.src[self.pos..]
    }

    fn peek(&self) -> Option<char> {
        self.rest().chars().next()
    }

    fn skip_ws(&mut self) {
        let trimmed = self.rest().trim_start();
        self.pos = self.src.len() - trimmed.len();
    }

    fn eat(&mut self, s: &str) -> bool {
        self.skip_ws();
        if self.rest().starts_with(s) {
            self.pos += s.len();
            true
        } else {
            false
        }
    }

    fn unexpected(&self, expected: &[&'static str]) -> ParseError {
        ParseError {
            offset: self.pos,
            kind: ParseErrorKind::Unexpected {
                found: self.peek(),
                expected: expected.to_vec(),
            },
        }
    }

    fn pipeline(&mut self) -> Result<Pipeline, ParseError> {
        let mut steps = vec![self.expr()?];
        while self.eat("->") {
            steps.push(self.expr()?);
        }
        self.skip_ws();
        match self.peek() {
            None => Ok(Pipeline { steps }),
            Some(')') => Err(ParseError {
                offset: self.pos,
                kind: ParseErrorKind::UnmatchedCloseParen,
            }),
            Some(_) => Err(self.unexpected(&["`&`", "`|`", "`->`", "end of input"])),
        }
    }

    fn expr(&mut self) -> Result<EraserExpr, ParseError> {
        let mut lhs = self.term()?;
        while self.eat("|") {
            lhs = lhs.join(self.term()?);
        }
        Ok(lhs)
    }

    fn term(&mut self) -> Result<EraserExpr, ParseError> {
        let mut lhs = self.factor()?;
        while self.eat("&") {
            lhs = lhs.meet(self.factor()?);
        }
        Ok(lhs)
    }

    fn factor(&mut self) -> Result<EraserExpr, ParseError> {
        self.skip_ws();
        match self.peek() {
            Some('!') => {
                self.pos += 1;
                Ok(self.factor()?.complement())
            }
            Some('(') => {
                let open = self.pos;
                self.pos += 1;
                let inner = self.expr()?;
                if self.eat(")") {
                    Ok(inner)
                } else if self.peek().is_none() {
                    Err(ParseError {
                        offset: self.pos,
                        kind: ParseErrorKind::UnclosedParen { open },
                    })
                } else {
                    Err(self.unexpected(&["`&`", "`|`", "`)`"]))
                }
            }
            Some('E') => self.atom(),
            _ => Err(self.unexpected(FACTOR_START)),
        }
    }

    /// Consumes a run of characters up to a delimiter and returns it with
    /// its start offset.
    fn run(&mut self, stop: impl Fn(char) -> bool) -> (usize, &'a str) {
        self.skip_ws();
        let start = self.pos;
        let len = self.rest().find(stop).unwrap_or(self.rest().len());
        self.pos += len;
        (start, &self.src[start..start + len])
    }

    fn atom(&mut self) -> Result<EraserExpr, ParseError> {
        self.pos += 1; // 'E'
        if !self.eat("(") {
            return Err(self.unexpected(&["`(`"]));
        }
        let (term_at, raw_term) = self.run(|c| matches!(c, ',' | '(' | ')'));
        let raw_term = raw_term.trim_end();
        if raw_term.is_empty() {
            return Err(self.unexpected(&["term"]));
        }
        let term = self
            .config
            .normalize_term(raw_term)
            .ok_or_else(|| ParseError {
                offset: term_at,
                kind: ParseErrorKind::InvalidTerm(raw_term.to_owned()),
            })?;
        if !self.eat(",") {
            return Err(self.unexpected(&["`,`"]));
        }
        let (width_at, raw_width) = self.run(|c| c.is_whitespace() || matches!(c, ',' | '(' | ')'));
        if raw_width.is_empty() {
            return Err(self.unexpected(&["width"]));
        }
        if !raw_width.bytes().all(|b| b.is_ascii_digit()) {
            return Err(ParseError {
                offset: width_at,
                kind: ParseErrorKind::InvalidWidth(raw_width.to_owned()),
            });
        }
        let halfwidth: usize = raw_width.parse().map_err(|_| ParseError {
            offset: width_at,
            kind: ParseErrorKind::InvalidWidth(raw_width.to_owned()),
        })?;
        if !self.eat(")") {
            return Err(self.unexpected(&["`)`"]));
        }
        Ok(EraserExpr::Atomic(AtomicEraser::new(term, halfwidth)))
    }
}

/// Parses a pipeline (`a -> b -> ...`); a plain expression is a one-step
/// pipeline.
pub fn parse_pipeline(text: &str, config: &TokenizerConfig) -> Result<Pipeline, ParseError> {
    Parser {
        src: text,
        pos: 0,
        config,
    }
    .pipeline()
}

/// Parses either a single expression or a multi-step pipeline.
pub fn parse_query(text: &str, config: &TokenizerConfig) -> Result<Query, ParseError> {
    parse_pipeline(text, config).map(Query::from_pipeline)
}

/// Parses a single boolean expression; `->` is rejected.
pub fn parse_expr(text: &str, config: &TokenizerConfig) -> Result<EraserExpr, ParseError> {
    let mut p = Parser {
        src: text,
        pos: 0,
        config,
    };
    let e = p.expr()?;
    p.skip_ws();
    match p.peek() {
        None => Ok(e),
        Some(')') => Err(ParseError {
            offset: p.pos,
            kind: ParseErrorKind::UnmatchedCloseParen,
        }),
        Some(_) => Err(p.unexpected(&["`&`", "`|`", "end of input"])),
    }
}
