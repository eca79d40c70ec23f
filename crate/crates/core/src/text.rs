//! Tokenization, the document/corpus data model and corpus ingestion.
//!
//! Erasure never deletes tokens. A [`Document`] keeps its pristine token
//! array for its whole life and carries an aliveness mask over fixed
//! positions, so window offsets are always measured on original indices.

use std::collections::HashSet;
use std::fmt;
use std::fs;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use bitvec::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::eraser::KeepSet;

/// Marker used by [`RenderStyle::Placeholder`] for erased positions.
pub const ERASED_MARKER: &str = "▯";

/// How raw text is cut into tokens.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Splitter {
    /// Split on Unicode whitespace only.
    Whitespace,
    /// Split on whitespace and at every punctuation boundary.
    #[default]
    WhitespacePunctuation,
}

impl std::str::FromStr for Splitter {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "whitespace" => Ok(Splitter::Whitespace),
            "whitespace-punctuation" => Ok(Splitter::WhitespacePunctuation),
            other => Err(format!(
                "unknown splitter `{other}` (expected `whitespace` or `whitespace-punctuation`)"
            )),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct TokenizerConfig {
    pub lowercase: bool,
    pub strip_punctuation: bool,
    pub splitter: Splitter,
}

impl Default for TokenizerConfig {
    fn default() -> Self {
        TokenizerConfig {
            lowercase: true,
            strip_punctuation: true,
            splitter: Splitter::WhitespacePunctuation,
        }
    }
}

fn is_punctuation(c: char) -> bool {
    !c.is_alphanumeric() && !c.is_whitespace()
}

impl TokenizerConfig {
    /// Cuts `text` into normalized token strings.
    pub fn tokens(&self, text: &str) -> Vec<String> {
        let raw: Vec<String> = match self.splitter {
            Splitter::Whitespace => text
                .split_whitespace()
                .filter_map(|piece| {
                    let piece: String = if self.strip_punctuation {
                        piece.chars().filter(|c| !is_punctuation(*c)).collect()
                    } else {
                        piece.to_owned()
                    };
                    (!piece.is_empty()).then_some(piece)
                })
                .collect(),
            Splitter::WhitespacePunctuation => {
                let mut out = Vec::new();
                let mut word = String::new();
                let mut punct = String::new();
                for c in text.chars() {
                    if c.is_alphanumeric() {
                        if !punct.is_empty() {
                            out.push(std::mem::take(&mut punct));
                        }
                        word.push(c);
                    } else {
                        if !word.is_empty() {
                            out.push(std::mem::take(&mut word));
                        }
                        if c.is_whitespace() {
                            if !punct.is_empty() {
                                out.push(std::mem::take(&mut punct));
                            }
                        } else if !self.strip_punctuation {
                            punct.push(c);
                        }
                    }
                }
                out.extend([word, punct].into_iter().filter(|s| !s.is_empty()));
                out
            }
        };
        if self.lowercase {
            raw.into_iter().map(|t| t.to_lowercase()).collect()
        } else {
            raw
        }
    }

    /// Normalizes a query term the same way document text is normalized.
    ///
    /// Returns `None` unless the raw term yields exactly one token, since a
    /// multi-token term can never match a single position.
    pub fn normalize_term(&self, raw: &str) -> Option<String> {
        let mut tokens = self.tokens(raw);
        if tokens.len() == 1 {
            tokens.pop()
        } else {
            None
        }
    }

    pub fn tokenize(&self, id: impl Into<String>, text: &str) -> Document {
        Document::new(id, self.tokens(text))
    }
}

/// Rendering style for [`Document::render`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum RenderStyle {
    /// Alive tokens joined by single spaces.
    #[default]
    Compact,
    /// Every position shown, erased ones as [`ERASED_MARKER`].
    Placeholder,
}

impl std::str::FromStr for RenderStyle {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "compact" => Ok(RenderStyle::Compact),
            "placeholder" => Ok(RenderStyle::Placeholder),
            other => Err(format!("unknown render style `{other}`")),
        }
    }
}

/// A tokenized document together with its current erasure state.
///
/// Cloning is cheap: the token array is shared and only the mask is copied.
#[derive(Clone, PartialEq, Eq)]
pub struct Document {
    id: String,
    tokens: Arc<[String]>,
    mask: BitVec,
}

impl Document {
    /// A fresh document: every token alive.
    pub fn new(id: impl Into<String>, tokens: Vec<String>) -> Self {
        let n = tokens.len();
        Document {
            id: id.into(),
            tokens: tokens.into(),
            mask: bitvec![1; n],
        }
    }

    pub fn id(&self) -> &str {
        &self.id
    }

    pub fn tokens(&self) -> &[String] {
        &self.tokens
    }

    /// Token count of the pristine document, erased positions included.
    pub fn len(&self) -> usize {
        self.tokens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tokens.is_empty()
    }

    pub fn mask(&self) -> &BitSlice {
        &self.mask
    }

    pub fn is_alive(&self, pos: usize) -> bool {
        self.mask[pos]
    }

    /// The counting operation `|D|`: number of alive tokens.
    pub fn alive_count(&self) -> usize {
        self.mask.count_ones()
    }

    pub fn alive_positions(&self) -> impl Iterator<Item = usize> + '_ {
        self.mask.iter_ones()
    }

    /// The alive positions as a keep-set.
    pub fn alive_set(&self) -> KeepSet {
        KeepSet::from_bits(self.mask.clone())
    }

    pub fn is_pristine(&self) -> bool {
        self.mask.all()
    }

    /// Same tokens, every position alive again.
    pub fn pristine(&self) -> Document {
        Document {
            id: self.id.clone(),
            tokens: Arc::clone(&self.tokens),
            mask: bitvec![1; self.tokens.len()],
        }
    }

    /// Copy whose mask is `mask ∧ keep`.
    ///
    /// # Panics
    ///
    /// Panics if `keep` was built for a different token count.
    pub fn restrict(&self, keep: &KeepSet) -> Document {
        assert_eq!(
            keep.universe(),
            self.len(),
            "keep-set universe does not match document length"
        );
        let mut mask = self.mask.clone();
        mask &= keep.bits();
        Document {
            id: self.id.clone(),
            tokens: Arc::clone(&self.tokens),
            mask,
        }
    }

    /// Copy with every position erased.
    pub fn erased(&self) -> Document {
        Document {
            id: self.id.clone(),
            tokens: Arc::clone(&self.tokens),
            mask: bitvec![0; self.tokens.len()],
        }
    }

    pub fn render(&self, style: RenderStyle) -> String {
        match style {
            RenderStyle::Compact => self
                .alive_positions()
                .map(|p| self.tokens[p].as_str())
                .collect::<Vec<_>>()
                .join(" "),
            RenderStyle::Placeholder => self
                .tokens
                .iter()
                .zip(self.mask.iter().by_vals())
                .map(|(t, alive)| if alive { t.as_str() } else { ERASED_MARKER })
                .collect::<Vec<_>>()
                .join(" "),
        }
    }
}

impl fmt::Debug for Document {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Document")
            .field("id", &self.id)
            .field("text", &self.render(RenderStyle::Placeholder))
            .finish()
    }
}

#[derive(Debug, Error)]
pub enum CorpusError {
    #[error("cannot read {}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("line {line}: malformed record: {message}")]
    MalformedRecord { line: usize, message: String },
    #[error("duplicate document id `{0}`")]
    DuplicateId(String),
}

/// On-disk corpus layouts.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CorpusFormat {
    /// A directory; every `*.txt` file is one document, id = file name.
    TxtDir,
    /// One JSON object per line with string fields `id` and `text`.
    Jsonl,
}

impl std::str::FromStr for CorpusFormat {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "txt-dir" => Ok(CorpusFormat::TxtDir),
            "jsonl" => Ok(CorpusFormat::Jsonl),
            other => Err(format!("unknown corpus format `{other}`")),
        }
    }
}

/// An ordered, id-unique collection of pristine documents.
#[derive(Debug, Clone, Default)]
pub struct Corpus {
    docs: Vec<Document>,
    total_tokens: usize,
}

impl Corpus {
    /// Builds a corpus sorted by document id.
    pub fn new(mut docs: Vec<Document>) -> Result<Self, CorpusError> {
        docs.sort_by(|a, b| a.id.cmp(&b.id));
        let mut seen = HashSet::new();
        for d in &docs {
            if !seen.insert(d.id.as_str()) {
                return Err(CorpusError::DuplicateId(d.id.clone()));
            }
        }
        let total_tokens = docs.iter().map(Document::len).sum();
        Ok(Corpus { docs, total_tokens })
    }

    pub fn docs(&self) -> &[Document] {
        &self.docs
    }

    pub fn len(&self) -> usize {
        self.docs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.docs.is_empty()
    }

    pub fn total_tokens(&self) -> usize {
        self.total_tokens
    }

    pub fn get(&self, id: &str) -> Option<&Document> {
        self.docs
            .binary_search_by(|d| d.id.as_str().cmp(id))
            .ok()
            .map(|i| &self.docs[i])
    }
}

#[derive(Deserialize)]
struct JsonlRecord {
    id: String,
    text: String,
}

fn io_err(path: &Path) -> impl FnOnce(std::io::Error) -> CorpusError + '_ {
    move |source| CorpusError::Io {
        path: path.to_owned(),
        source,
    }
}

pub fn load_corpus(
    path: impl AsRef<Path>,
    format: CorpusFormat,
    config: &TokenizerConfig,
) -> Result<Corpus, CorpusError> {
    let path = path.as_ref();
    let docs = match format {
        CorpusFormat::TxtDir => {
            let mut docs = Vec::new();
            for entry in fs::read_dir(path).map_err(io_err(path))? {
                let entry = entry.map_err(io_err(path))?;
                let file = entry.path();
                if file.extension().and_then(|e| e.to_str()) != Some("txt") || !file.is_file() {
                    continue;
                }
                let text = fs::read_to_string(&file).map_err(io_err(&file))?;
                let id = entry.file_name().to_string_lossy().into_owned();
                docs.push(config.tokenize(id, &text));
            }
            docs
        }
        CorpusFormat::Jsonl => {
            let content = fs::read_to_string(path).map_err(io_err(path))?;
            let mut docs = Vec::new();
            for (i, line) in content.lines().enumerate() {
                if line.trim().is_empty() {
                    continue;
                }
                let rec: JsonlRecord =
                    serde_json::from_str(line).map_err(|e| CorpusError::MalformedRecord {
                        line: i + 1,
                        message: e.to_string(),
                    })?;
                docs.push(config.tokenize(rec.id, &rec.text));
            }
            docs
        }
    };
    Corpus::new(docs)
}
