//! Word/link scoring extractor.
//!
//! Every element is scored as a convex combination of its non-link text
//! ratio and its share of the page's words:
//!
//! ```text
//! score = alpha * (words - link_words) / words + (1 - alpha) * words / page_words
//! ```
//!
//! Elements with fewer than `min_words` words score 0 and are not candidates.

use crate::dom::{DomTree, NodeId};
use crate::error::{Error, Result};
use crate::extract::{ExtractionResult, Strategy};
use crate::stats::{annotate, NodeStats, StatsMap};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CoreexParams {
    pub alpha: f64,
    pub min_words: u64,
}

impl Default for CoreexParams {
    fn default() -> Self {
        CoreexParams {
            alpha: 0.99,
            min_words: 10,
        }
    }
}

impl CoreexParams {
    pub fn new(alpha: f64, min_words: u64) -> Result<Self> {
        let params = CoreexParams { alpha, min_words };
        params.validate()?;
        Ok(params)
    }

    pub fn validate(&self) -> Result<()> {
        if !(0.0..=1.0).contains(&self.alpha) {
            return Err(Error::InvalidParams(format!(
                "alpha must lie in [0, 1], got {}",
                self.alpha
            )));
        }
        Ok(())
    }
}

/// Scores of the element nodes of one tree.
#[derive(Debug, Clone, PartialEq)]
pub struct ScoreMap(Vec<Option<f64>>);

impl ScoreMap {
    pub fn get(&self, id: NodeId) -> Option<f64> {
        self.0.get(id.0).copied().flatten()
    }

    pub fn iter(&self) -> impl Iterator<Item = (NodeId, f64)> + '_ {
        self.0
            .iter()
            .enumerate()
            .filter_map(|(i, s)| s.map(|s| (NodeId(i), s)))
    }
}

pub fn score_node(stats: &NodeStats, page_words: u64, params: &CoreexParams) -> Result<f64> {
    if page_words == 0 {
        return Err(Error::EmptyPage);
    }
    if stats.word_count > page_words {
        return Err(Error::InvalidParams(format!(
            "node has {} words but the page only {page_words}",
            stats.word_count
        )));
    }
    if stats.word_count < params.min_words || stats.word_count == 0 {
        return Ok(0.0);
    }
    let words = stats.word_count as f64;
    let text_ratio = (stats.word_count - stats.link_word_count) as f64 / words;
    let page_share = words / page_words as f64;
    Ok(params.alpha * text_ratio + (1.0 - params.alpha) * page_share)
}

/// Scores every element node, the `document` root included.
pub fn score_all(tree: &DomTree, stats: &StatsMap, params: &CoreexParams) -> Result<ScoreMap> {
    let page_words = stats.get(NodeId::ROOT).word_count;
    let mut scores = vec![None; tree.node_count()];
    for node in tree.nodes().iter().filter(|n| n.is_element()) {
        scores[node.id().0] = Some(score_node(stats.get(node.id()), page_words, params)?);
    }
    Ok(ScoreMap(scores))
}

/// Highest-scoring element below the root. Ties go to the smaller id.
pub fn select_main_node(
    tree: &DomTree,
    stats: &StatsMap,
    params: &CoreexParams,
) -> Result<(NodeId, f64)> {
    params.validate()?;
    let page_words = stats.get(NodeId::ROOT).word_count;
    if page_words == 0 {
        return Err(Error::EmptyPage);
    }
    let mut best: Option<(NodeId, f64)> = None;
    for node in tree.nodes().iter().skip(1).filter(|n| n.is_element()) {
        let s = stats.get(node.id());
        if s.word_count < params.min_words {
            continue;
        }
        let score = score_node(s, page_words, params)?;
        if best.is_none_or(|(_, b)| score > b) {
            best = Some((node.id(), score));
        }
    }
    best.ok_or_else(|| {
        Error::NoContent(format!(
            "no element holds at least {} words",
            params.min_words
        ))
    })
}

pub fn extract_coreex(tree: &DomTree, params: &CoreexParams) -> Result<ExtractionResult> {
    let stats = annotate(tree);
    let (id, score) = select_main_node(tree, &stats, params)?;
    log::debug!("coreex selected node {id} with score {score:.6}");
    let s = stats.get(id);
    Ok(ExtractionResult {
        source_name: tree.source_name().to_owned(),
        strategy: Strategy::Coreex,
        node_path: tree.path_to(id),
        text: tree.node_text(id),
        word_count: s.word_count,
        punc_num: s.punc_num,
        score: Some(score),
        trace: None,
    })
}
