//! `eraser`: apply selective erasers, check relations, measure and compute
//! probabilities from the command line.
//!
//! Exit codes: 0 success, 1 I/O, 2 parse or usage, 3 undefined quantity.

mod commands;
mod config;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use selective_eraser::{Backend, RenderStyle, SemanticsMode, Splitter, Weighting};
use thiserror::Error;

use config::{OutputFormat, Overrides, RunConfig};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Io(String),
    #[error("{0}")]
    Parse(String),
    #[error("config: {0}")]
    Config(String),
    #[error("{0}")]
    Undefined(String),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Io(_) => 1,
            CliError::Parse(_) | CliError::Config(_) => 2,
            CliError::Undefined(_) => 3,
        }
    }
}

#[derive(Debug, Parser)]
#[command(
    name = "eraser",
    version,
    about = "Selective eraser measurements on text"
)]
struct Cli {
    #[command(flatten)]
    global: GlobalArgs,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct GlobalArgs {
    /// `key=value` config file; flags override its values.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Evaluation semantics: dynamic or static.
    #[arg(long, global = true)]
    mode: Option<SemanticsMode>,
    /// Probability backend: counting or trace.
    #[arg(long, global = true)]
    backend: Option<Backend>,
    /// Report format: json or text.
    #[arg(long, global = true)]
    output: Option<OutputFormat>,
    /// Collection weighting: token-count or uniform.
    #[arg(long, global = true)]
    weighting: Option<Weighting>,
    #[arg(long, global = true)]
    lowercase: Option<bool>,
    #[arg(long, global = true)]
    strip_punctuation: Option<bool>,
    /// whitespace or whitespace-punctuation.
    #[arg(long, global = true)]
    splitter: Option<Splitter>,
}

/// Where documents come from. Exactly one source is required.
#[derive(Debug, Args, Clone)]
#[group(required = true, multiple = false)]
pub struct Input {
    /// A single text file.
    #[arg(long)]
    pub doc: Option<PathBuf>,
    /// Inline document text.
    #[arg(long)]
    pub text: Option<String>,
    /// A directory of `*.txt` files or a JSONL file.
    #[arg(long)]
    pub corpus: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Show the normalized tokens of each document.
    Tokenize {
        #[command(flatten)]
        input: Input,
    },
    /// Apply an expression or pipeline and render the result.
    Apply {
        query: String,
        #[command(flatten)]
        input: Input,
        /// compact or placeholder.
        #[arg(long)]
        render: Option<RenderStyle>,
    },
    /// Order relation, incompatibility and commutation of two erasers.
    Relate {
        e1: String,
        e2: String,
        #[command(flatten)]
        input: Input,
    },
    /// Partition documents by whether E1 >= E2 holds on them.
    Cluster {
        e1: String,
        e2: String,
        #[command(flatten)]
        input: Input,
    },
    /// Term frequency, bag-of-words, co-occurrence or orthogonality.
    Measure {
        #[command(subcommand)]
        kind: Measure,
    },
    /// Probability of an eraser, optionally conditioned on a prefix.
    Prob {
        /// Target expression; a pipeline `A -> B` means B given A.
        query: String,
        /// Conditioning prefix (pipeline).
        #[arg(long)]
        given: Option<String>,
        /// Divide by the prefix's surviving mass (requires --given).
        #[arg(long, requires = "given")]
        implication: bool,
        #[command(flatten)]
        input: Input,
    },
}

#[derive(Debug, Subcommand)]
pub enum Measure {
    Tf {
        #[arg(long)]
        term: String,
        #[command(flatten)]
        input: Input,
    },
    Bow {
        #[command(flatten)]
        input: Input,
    },
    Cooc {
        /// Term whose windows are kept.
        #[arg(long)]
        wide: String,
        /// Term counted inside those windows.
        #[arg(long)]
        counted: String,
        #[arg(long)]
        width: usize,
        #[command(flatten)]
        input: Input,
    },
    Ortho {
        t1: String,
        t2: String,
        #[command(flatten)]
        input: Input,
    },
}

fn run(cli: Cli) -> Result<String, CliError> {
    let g = cli.global;
    let mut cfg = RunConfig::default();
    if let Some(path) = &g.config {
        cfg.apply(&config::load_config(path)?);
    }
    let render = match &cli.command {
        Command::Apply { render, .. } => *render,
        _ => None,
    };
    cfg.apply(&Overrides {
        mode: g.mode,
        backend: g.backend,
        output: g.output,
        weighting: g.weighting,
        render,
        lowercase: g.lowercase,
        strip_punctuation: g.strip_punctuation,
        splitter: g.splitter,
    });

    let report = match cli.command {
        Command::Tokenize { input } => commands::tokenize(&input, &cfg)?,
        Command::Apply { query, input, .. } => commands::apply(&query, &input, &cfg)?,
        Command::Relate { e1, e2, input } => commands::relate(&e1, &e2, &input, &cfg)?,
        Command::Cluster { e1, e2, input } => commands::cluster(&e1, &e2, &input, &cfg)?,
        Command::Measure { kind } => commands::measure(&kind, &cfg)?,
        Command::Prob {
            query,
            given,
            implication,
            input,
        } => commands::prob(&query, given.as_deref(), implication, &input, &cfg)?,
    };
    Ok(report.finish(&cfg))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(out) => {
            // A closed pipe (`eraser ... | head`) is not an error worth reporting.
            let _ = writeln!(std::io::stdout().lock(), "{out}");
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
