//! Word-level precision/recall scoring against gold text and a corpus
//! runner.
//!
//! A corpus is a flat directory of `<name>.html` files, each paired with a
//! `<name><suffix>` UTF-8 gold file (suffix `.gold.txt` by default). HTML
//! files without a gold partner are skipped.

mod corpus;

use std::collections::HashMap;
use std::fs;
use std::path::{Path, PathBuf};

use rayon::prelude::*;
use serde::Serialize;

use crate::dom::parse_html_bytes;
use crate::error::{Error, Result};
use crate::extract::{fixed6, Extractor, Strategy};

pub use corpus::{generate_corpus, generate_corpus_with, CorpusOptions, GoldPair, TEMPLATE_COUNT};

pub const DEFAULT_GOLD_SUFFIX: &str = ".gold.txt";

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Scores {
    #[serde(serialize_with = "fixed6::serialize")]
    pub precision: f64,
    #[serde(serialize_with = "fixed6::serialize")]
    pub recall: f64,
    #[serde(serialize_with = "fixed6::serialize")]
    pub f1: f64,
}

impl Scores {
    pub const ZERO: Scores = Scores {
        precision: 0.0,
        recall: 0.0,
        f1: 0.0,
    };

    pub fn new(precision: f64, recall: f64) -> Self {
        let f1 = if precision + recall == 0.0 {
            0.0
        } else {
            2.0 * precision * recall / (precision + recall)
        };
        Scores {
            precision,
            recall,
            f1,
        }
    }
}

fn bag(text: &str) -> HashMap<String, usize> {
    let mut counts = HashMap::new();
    for word in text.split_whitespace() {
        *counts.entry(word.to_lowercase()).or_insert(0) += 1;
    }
    counts
}

/// Case-folded word-multiset precision, recall and F1. An empty extraction
/// has precision 0; an empty gold has recall 0.
pub fn score(extracted: &str, gold: &str) -> Scores {
    let (e, g) = (bag(extracted), bag(gold));
    let e_total: usize = e.values().sum();
    let g_total: usize = g.values().sum();
    let common: usize = e
        .iter()
        .map(|(w, &n)| n.min(g.get(w).copied().unwrap_or(0)))
        .sum();
    let ratio = |num: usize, den: usize| {
        if den == 0 {
            0.0
        } else {
            num as f64 / den as f64
        }
    };
    Scores::new(ratio(common, e_total), ratio(common, g_total))
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DocumentScore {
    pub path: String,
    #[serde(flatten)]
    pub scores: Scores,
    /// Why extraction failed, if it did; the document then scores zero.
    pub error: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EvalReport {
    pub strategy: Strategy,
    pub document_count: usize,
    pub documents: Vec<DocumentScore>,
    #[serde(rename = "macro")]
    pub macro_avg: Scores,
}

/// Lists `(html, gold)` path pairs in `dir`, sorted by html path.
pub fn find_pairs(dir: &Path, gold_suffix: &str) -> Result<Vec<(PathBuf, PathBuf)>> {
    let entries = fs::read_dir(dir).map_err(|e| Error::io(dir, e))?;
    let mut pairs = Vec::new();
    for entry in entries {
        let path = entry.map_err(|e| Error::io(dir, e))?.path();
        let Some(name) = path.file_name().and_then(|n| n.to_str()) else {
            continue;
        };
        let Some(stem) = name.strip_suffix(".html") else {
            continue;
        };
        let gold = dir.join(format!("{stem}{gold_suffix}"));
        if path.is_file() && gold.is_file() {
            pairs.push((path, gold));
        }
    }
    pairs.sort();
    Ok(pairs)
}

/// Runs `extractor` on every pair in `dir` and macro-averages the scores.
/// Extraction failures count as zero scores.
pub fn evaluate_corpus(dir: &Path, extractor: &Extractor, gold_suffix: &str) -> Result<EvalReport> {
    let pairs = find_pairs(dir, gold_suffix)?;
    if pairs.is_empty() {
        return Err(Error::NoPairs(dir.to_path_buf()));
    }
    let documents = pairs
        .par_iter()
        .map(|(html_path, gold_path)| {
            let html = fs::read(html_path).map_err(|e| Error::io(html_path, e))?;
            let gold = fs::read(gold_path).map_err(|e| Error::io(gold_path, e))?;
            let gold = String::from_utf8_lossy(&gold);
            let name = html_path
                .file_name()
                .map(|n| n.to_string_lossy().into_owned())
                .unwrap_or_default();
            let tree = parse_html_bytes(&html, &name);
            let (scores, error) = match extractor.extract(&tree) {
                Ok(res) => (score(&res.text, &gold), None),
                Err(e) => {
                    log::info!("{}: {e}", html_path.display());
                    (Scores::ZERO, Some(e.to_string()))
                }
            };
            Ok(DocumentScore {
                path: html_path.display().to_string(),
                scores,
                error,
            })
        })
        .collect::<Result<Vec<_>>>()?;

    let n = documents.len() as f64;
    let mean = |f: fn(&Scores) -> f64| documents.iter().map(|d| f(&d.scores)).sum::<f64>() / n;
    let macro_avg = Scores {
        precision: mean(|s| s.precision),
        recall: mean(|s| s.recall),
        f1: mean(|s| s.f1),
    };
    Ok(EvalReport {
        strategy: extractor.strategy(),
        document_count: documents.len(),
        documents,
        macro_avg,
    })
}
