//! Run configuration: defaults, then `key=value` config file, then flags.

use std::fs;
use std::path::Path;
use std::str::FromStr;

use selective_eraser::{Backend, RenderStyle, SemanticsMode, Splitter, TokenizerConfig, Weighting};

use crate::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum OutputFormat {
    #[default]
    Json,
    Text,
}

impl FromStr for OutputFormat {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "json" => Ok(OutputFormat::Json),
            "text" => Ok(OutputFormat::Text),
            other => Err(format!(
                "unknown output format `{other}` (expected `json` or `text`)"
            )),
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct RunConfig {
    pub mode: SemanticsMode,
    pub backend: Backend,
    pub tokenizer: TokenizerConfig,
    pub output: OutputFormat,
    pub weighting: Weighting,
    pub render: RenderStyle,
}

/// Values that may come from a config file or from flags; `None` means
/// "not given here".
#[derive(Debug, Clone, Default)]
pub struct Overrides {
    pub mode: Option<SemanticsMode>,
    pub backend: Option<Backend>,
    pub output: Option<OutputFormat>,
    pub weighting: Option<Weighting>,
    pub render: Option<RenderStyle>,
    pub lowercase: Option<bool>,
    pub strip_punctuation: Option<bool>,
    pub splitter: Option<Splitter>,
}

impl RunConfig {
    pub fn apply(&mut self, o: &Overrides) {
        if let Some(v) = o.mode {
            self.mode = v;
        }
        if let Some(v) = o.backend {
            self.backend = v;
        }
        if let Some(v) = o.output {
            self.output = v;
        }
        if let Some(v) = o.weighting {
            self.weighting = v;
        }
        if let Some(v) = o.render {
            self.render = v;
        }
        if let Some(v) = o.lowercase {
            self.tokenizer.lowercase = v;
        }
        if let Some(v) = o.strip_punctuation {
            self.tokenizer.strip_punctuation = v;
        }
        if let Some(v) = o.splitter {
            self.tokenizer.splitter = v;
        }
    }
}

fn parse_value<T: FromStr>(line: usize, key: &str, value: &str) -> Result<T, CliError>
where
    T::Err: std::fmt::Display,
{
    value
        .parse()
        .map_err(|e| CliError::Config(format!("line {line}: `{key}`: {e}")))
}

/// Parses `key=value` lines; blank lines and `#` comments are ignored.
pub fn parse_config(text: &str) -> Result<Overrides, CliError> {
    let mut o = Overrides::default();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let raw = raw.trim();
        if raw.is_empty() || raw.starts_with('#') {
            continue;
        }
        let (key, value) = raw
            .split_once('=')
            .ok_or_else(|| CliError::Config(format!("line {line}: expected key=value")))?;
        let (key, value) = (key.trim(), value.trim());
        match key {
            "mode" => o.mode = Some(parse_value(line, key, value)?),
            "backend" => o.backend = Some(parse_value(line, key, value)?),
            "output" => o.output = Some(parse_value(line, key, value)?),
            "weighting" => o.weighting = Some(parse_value(line, key, value)?),
            "render" => o.render = Some(parse_value(line, key, value)?),
            "lowercase" => o.lowercase = Some(parse_value(line, key, value)?),
            "strip_punctuation" => o.strip_punctuation = Some(parse_value(line, key, value)?),
            "splitter" => o.splitter = Some(parse_value(line, key, value)?),
            other => {
                return Err(CliError::Config(format!(
                    "line {line}: unknown key `{other}`"
                )))
            }
        }
    }
    Ok(o)
}

pub fn load_config(path: &Path) -> Result<Overrides, CliError> {
    let text =
        fs::read_to_string(path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
    parse_config(&text)
}
