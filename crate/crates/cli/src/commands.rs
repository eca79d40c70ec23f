use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::fs;

use selective_eraser::probability::{self, ProbError};
use selective_eraser::{
    bag_of_words, cluster_by_relation, cooccurrence, corpus_relation, load_corpus,
    orthogonality_check, parse_expr, parse_pipeline, parse_query, term_frequency, CoocQuery,
    Corpus, CorpusError, CorpusFormat, Document, EraserExpr, ProbQuery, Probability, QueryKind,
};
use serde_json::{json, Value};

use crate::config::{OutputFormat, RunConfig};
use crate::{CliError, Input, Measure};

/// A finished command: JSON results plus a human-readable rendering.
pub struct Report {
    command: &'static str,
    query: Value,
    results: Value,
    text: String,
}

impl Report {
    pub fn finish(self, cfg: &RunConfig) -> String {
        match cfg.output {
            OutputFormat::Text => self.text.trim_end().to_owned(),
            OutputFormat::Json => {
                // serde_json's default map is ordered, so keys come out sorted
                let v = json!({
                    "tool_version": env!("CARGO_PKG_VERSION"),
                    "command": self.command,
                    "mode": cfg.mode,
                    "backend": cfg.backend,
                    "query": self.query,
                    "results": self.results,
                });
                serde_json::to_string_pretty(&v).expect("report serializes")
            }
        }
    }
}

fn corpus_error(e: CorpusError) -> CliError {
    match e {
        CorpusError::Io { .. } => CliError::Io(e.to_string()),
        CorpusError::MalformedRecord { .. } | CorpusError::DuplicateId(_) => {
            CliError::Parse(e.to_string())
        }
    }
}

fn load(input: &Input, cfg: &RunConfig) -> Result<Corpus, CliError> {
    let tok = &cfg.tokenizer;
    let docs = if let Some(path) = &input.doc {
        let text = fs::read_to_string(path)
            .map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
        let id = path
            .file_name()
            .map(|n| n.to_string_lossy().into_owned())
            .unwrap_or_else(|| path.display().to_string());
        vec![tok.tokenize(id, &text)]
    } else if let Some(text) = &input.text {
        vec![tok.tokenize("text", text)]
    } else if let Some(path) = &input.corpus {
        let format = if path.is_dir() {
            CorpusFormat::TxtDir
        } else {
            CorpusFormat::Jsonl
        };
        return load_corpus(path, format, tok).map_err(corpus_error);
    } else {
        unreachable!("clap requires one input source")
    };
    Corpus::new(docs).map_err(corpus_error)
}

fn parse_one(text: &str, cfg: &RunConfig) -> Result<EraserExpr, CliError> {
    parse_expr(text, &cfg.tokenizer).map_err(|e| CliError::Parse(format!("`{text}`: {e}")))
}

fn term(raw: &str, cfg: &RunConfig) -> Result<String, CliError> {
    cfg.tokenizer.normalize_term(raw).ok_or_else(|| {
        CliError::Parse(format!("term `{raw}` does not normalize to a single token"))
    })
}

pub fn tokenize(input: &Input, cfg: &RunConfig) -> Result<Report, CliError> {
    let corpus = load(input, cfg)?;
    let mut text = String::new();
    let results: Vec<Value> = corpus
        .docs()
        .iter()
        .map(|d| {
            let _ = writeln!(text, "{}: {}", d.id(), d.tokens().join(" "));
            json!({ "doc_id": d.id(), "token_count": d.len(), "tokens": d.tokens() })
        })
        .collect();
    Ok(Report {
        command: "tokenize",
        query: Value::Null,
        results: Value::Array(results),
        text,
    })
}

pub fn apply(query: &str, input: &Input, cfg: &RunConfig) -> Result<Report, CliError> {
    let q = parse_query(query, &cfg.tokenizer)
        .map_err(|e| CliError::Parse(format!("`{query}`: {e}")))?;
    let corpus = load(input, cfg)?;
    let many = corpus.len() > 1;
    let mut text = String::new();
    let results: Vec<Value> = corpus
        .docs()
        .iter()
        .map(|d| {
            let out = q.apply(d, cfg.mode);
            let rendered = out.render(cfg.render);
            if many {
                let _ = writeln!(text, "{}:", d.id());
            }
            let _ = writeln!(
                text,
                "{rendered}\n{} of {} tokens alive",
                out.alive_count(),
                d.len()
            );
            json!({
                "doc_id": d.id(),
                "rendered": rendered,
                "alive_count": out.alive_count(),
                "token_count": d.len(),
                "alive_positions": out.alive_positions().collect::<Vec<_>>(),
            })
        })
        .collect();
    Ok(Report {
        command: "apply",
        query: json!(q.to_string()),
        results: Value::Array(results),
        text,
    })
}

pub fn relate(e1: &str, e2: &str, input: &Input, cfg: &RunConfig) -> Result<Report, CliError> {
    let (a, b) = (parse_one(e1, cfg)?, parse_one(e2, cfg)?);
    let corpus = load(input, cfg)?;
    let r = corpus_relation(&a, &b, &corpus, cfg.mode);
    let commuting = r.verdicts.iter().filter(|v| v.commutes).count();
    let mut text = String::new();
    for v in &r.verdicts {
        let _ = writeln!(
            text,
            "{}: geq={} leq={} commutes={} vacuous={}",
            v.doc_id, v.geq, v.leq, v.commutes, v.vacuous
        );
    }
    let _ = writeln!(
        text,
        "{a} >= {b}: {}\n{a} <= {b}: {}\nincompatible: {}\ncommutes on {commuting} of {} documents",
        r.corpus_geq,
        r.corpus_leq,
        r.corpus_incompatible,
        r.verdicts.len()
    );
    Ok(Report {
        command: "relate",
        query: json!({ "e1": a.to_string(), "e2": b.to_string() }),
        results: serde_json::to_value(&r).expect("report serializes"),
        text,
    })
}

pub fn cluster(e1: &str, e2: &str, input: &Input, cfg: &RunConfig) -> Result<Report, CliError> {
    let (a, b) = (parse_one(e1, cfg)?, parse_one(e2, cfg)?);
    let corpus = load(input, cfg)?;
    let p = cluster_by_relation(&a, &b, &corpus, cfg.mode);
    let text = format!(
        "holds: {}\nholds_vacuously: {}\nfails: {}\n",
        p.holds.join(" "),
        p.holds_vacuously.join(" "),
        p.fails.join(" ")
    );
    Ok(Report {
        command: "cluster",
        query: json!({ "e1": a.to_string(), "e2": b.to_string() }),
        results: serde_json::to_value(&p).expect("partition serializes"),
        text,
    })
}

fn counts_report(
    name: &'static str,
    query: Value,
    corpus: &Corpus,
    count: impl Fn(&Document) -> usize,
) -> Report {
    let mut text = String::new();
    let docs: Vec<Value> = corpus
        .docs()
        .iter()
        .map(|d| {
            let n = count(d);
            let _ = writeln!(text, "{}: {n}", d.id());
            json!({ "doc_id": d.id(), "count": n })
        })
        .collect();
    let total: u64 = docs.iter().map(|v| v["count"].as_u64().unwrap_or(0)).sum();
    let _ = writeln!(text, "total: {total}");
    Report {
        command: name,
        query,
        results: json!({ "documents": docs, "total": total }),
        text,
    }
}

pub fn measure(kind: &Measure, cfg: &RunConfig) -> Result<Report, CliError> {
    Ok(match kind {
        Measure::Tf { term: raw, input } => {
            let t = term(raw, cfg)?;
            let corpus = load(input, cfg)?;
            counts_report(
                "measure",
                json!({ "kind": "tf", "term": t }),
                &corpus,
                |d| term_frequency(&t, d),
            )
        }
        Measure::Cooc {
            wide,
            counted,
            width,
            input,
        } => {
            let q = CoocQuery::new(term(wide, cfg)?, term(counted, cfg)?, *width);
            let corpus = load(input, cfg)?;
            let query = json!({ "kind": "cooc", "wide": q.wide_term, "counted": q.counted_term, "width": width });
            counts_report("measure", query, &corpus, |d| cooccurrence(&q, d))
        }
        Measure::Bow { input } => {
            let corpus = load(input, cfg)?;
            let mut total: BTreeMap<String, usize> = BTreeMap::new();
            let mut text = String::new();
            let docs: Vec<Value> = corpus
                .docs()
                .iter()
                .map(|d| {
                    let bag = bag_of_words(d);
                    for (t, n) in &bag {
                        *total.entry(t.clone()).or_default() += n;
                    }
                    let line: Vec<String> = bag.iter().map(|(t, n)| format!("{t}:{n}")).collect();
                    let _ = writeln!(text, "{}: {}", d.id(), line.join(" "));
                    json!({ "doc_id": d.id(), "bag": bag })
                })
                .collect();
            Report {
                command: "measure",
                query: json!({ "kind": "bow" }),
                results: json!({ "documents": docs, "total": total }),
                text,
            }
        }
        Measure::Ortho { t1, t2, input } => {
            let (a, b) = (term(t1, cfg)?, term(t2, cfg)?);
            let corpus = load(input, cfg)?;
            let mut text = String::new();
            let docs: Vec<(String, bool)> = corpus
                .docs()
                .iter()
                .map(|d| (d.id().to_owned(), orthogonality_check(&a, &b, d)))
                .collect();
            for (id, ok) in &docs {
                let _ = writeln!(text, "{id}: {ok}");
            }
            let all = docs.iter().all(|(_, ok)| *ok);
            let _ = writeln!(text, "orthogonal: {all}");
            Report {
                command: "measure",
                query: json!({ "kind": "ortho", "t1": a, "t2": b }),
                results: json!({
                    "documents": docs.iter().map(|(id, ok)| json!({ "doc_id": id, "orthogonal": ok })).collect::<Vec<_>>(),
                    "orthogonal": all,
                }),
                text,
            }
        }
    })
}

fn prob_json(p: &Probability) -> Value {
    serde_json::to_value(p).expect("probability serializes")
}

fn prob_text(p: &Probability) -> String {
    match p.exact {
        Some(r) => format!("{} ({}/{})", p.value, r.numer(), r.denom()),
        None => p.value.to_string(),
    }
}

fn undefined(e: ProbError) -> CliError {
    CliError::Undefined(e.to_string())
}

pub fn prob(
    query: &str,
    given: Option<&str>,
    implication: bool,
    input: &Input,
    cfg: &RunConfig,
) -> Result<Report, CliError> {
    let tok = &cfg.tokenizer;
    let mut steps = match given {
        Some(g) => parse_pipeline(g, tok)
            .map_err(|e| CliError::Parse(format!("`{g}`: {e}")))?
            .into_steps(),
        None => Vec::new(),
    };
    steps.extend(
        parse_pipeline(query, tok)
            .map_err(|e| CliError::Parse(format!("`{query}`: {e}")))?
            .into_steps(),
    );
    let target = steps.pop().expect("pipelines are nonempty");
    let q = if implication {
        ProbQuery::implication(steps, target).map_err(undefined)?
    } else if steps.is_empty() {
        ProbQuery::plain(target)
    } else {
        ProbQuery::conditional(target, steps)
    };

    let corpus = load(input, cfg)?;
    let mut text = String::new();
    let query_json = json!({
        "text": q.to_string(),
        "kind": q.kind(),
        "target": q.target().to_string(),
        "given": q.given().iter().map(ToString::to_string).collect::<Vec<_>>(),
    });

    let results = if input.corpus.is_none() {
        let doc = &corpus.docs()[0];
        let p = q.evaluate(doc, cfg.mode, cfg.backend).map_err(undefined)?;
        let _ = writeln!(text, "{q} = {}", prob_text(&p));
        let mut v = prob_json(&p);
        v["doc_id"] = json!(doc.id());
        v
    } else {
        let docs: Vec<Value> = corpus
            .docs()
            .iter()
            .map(|d| match q.evaluate(d, cfg.mode, cfg.backend) {
                Ok(p) => {
                    let _ = writeln!(text, "{}: {}", d.id(), prob_text(&p));
                    let mut v = prob_json(&p);
                    v["doc_id"] = json!(d.id());
                    v
                }
                Err(e) => {
                    let _ = writeln!(text, "{}: undefined ({e})", d.id());
                    json!({ "doc_id": d.id(), "error": e.to_string() })
                }
            })
            .collect();
        let mut out = json!({ "documents": docs });
        if q.kind() == QueryKind::Plain {
            let p = probability::prob_collection(
                q.target(),
                &corpus,
                cfg.mode,
                cfg.backend,
                cfg.weighting,
            )
            .map_err(undefined)?;
            let _ = writeln!(text, "collection: {}", prob_text(&p));
            out["collection"] = prob_json(&p);
            out["weighting"] = json!(cfg.weighting);
        }
        out
    };
    Ok(Report {
        command: "prob",
        query: query_json,
        results,
        text,
    })
}
