//! Punctuation-backtracking news extractor.
//!
//! The big-node holding the longest paragraph text is the starting point
//! (the snippet node). From there the walk climbs toward the root while each
//! parent adds periods or commas; the first parent that adds none marks its
//! child as the summary node, whose text is the article.

use serde::Serialize;

use crate::dom::{DomTree, NodeId};
use crate::error::{Error, Result};
use crate::extract::{ExtractionResult, Strategy};
use crate::stats::{annotate, punc_num, word_count, StatsMap};

pub const DEFAULT_BIG_TAGS: &[&str] = &[
    "p",
    "h1",
    "h2",
    "h3",
    "h4",
    "h5",
    "h6",
    "b",
    "i",
    "u",
    "em",
    "strong",
    "li",
    "td",
    "pre",
    "blockquote",
];

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EconParams {
    pub big_tags: Vec<String>,
}

impl Default for EconParams {
    fn default() -> Self {
        EconParams {
            big_tags: DEFAULT_BIG_TAGS.iter().map(|t| t.to_string()).collect(),
        }
    }
}

impl EconParams {
    /// Parses a comma-separated tag list. Blank entries are skipped.
    pub fn from_csv(csv: &str) -> Result<Self> {
        let big_tags: Vec<String> = csv
            .split(',')
            .map(|t| t.trim().to_lowercase())
            .filter(|t| !t.is_empty())
            .collect();
        if big_tags.is_empty() {
            return Err(Error::InvalidParams("big-node tag list is empty".into()));
        }
        Ok(EconParams { big_tags })
    }
}

/// The joined text of one big-node.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TextPara {
    pub owner: NodeId,
    pub text: String,
    pub punc: u64,
    pub words: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct BacktrackStep {
    pub child: NodeId,
    pub parent: NodeId,
    /// Punctuation the parent adds over the child.
    pub distance: i64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BacktrackTrace {
    pub steps: Vec<BacktrackStep>,
    pub summary: NodeId,
}

pub fn big_nodes(tree: &DomTree, params: &EconParams) -> Vec<NodeId> {
    tree.nodes()
        .iter()
        .filter(|n| {
            n.tag()
                .is_some_and(|t| params.big_tags.iter().any(|b| b == t))
        })
        .filter(|n| {
            !tree
                .ancestors(n.id())
                .any(|a| matches!(tree.node(a).tag(), Some("script" | "style")))
        })
        .map(|n| n.id())
        .collect()
}

pub fn joint_para(tree: &DomTree, big_node: NodeId) -> TextPara {
    let text = tree.node_text(big_node);
    TextPara {
        owner: big_node,
        punc: punc_num(&text),
        words: word_count(&text),
        text,
    }
}

/// Owner of the longest text-para, measured in characters. Ties go to the
/// smaller id.
pub fn snippet_node(paras: &[TextPara]) -> Result<NodeId> {
    let mut best: Option<(usize, NodeId)> = None;
    for para in paras {
        let len = para.text.chars().count();
        let better = match best {
            None => true,
            Some((l, id)) => len > l || (len == l && para.owner < id),
        };
        if better {
            best = Some((len, para.owner));
        }
    }
    match best {
        Some((len, id)) if len > 0 => Ok(id),
        _ => Err(Error::NoContent("every text-para is empty".into())),
    }
}

/// Climbs from `start` until a parent adds no punctuation. If every step up
/// to the `document` root adds some, the summary is the root's child on the
/// path.
pub fn backtrack_summary(
    tree: &DomTree,
    stats: &StatsMap,
    start: NodeId,
) -> Result<BacktrackTrace> {
    if tree.parent(start).is_none() {
        return Err(Error::NoParent(start.0));
    }
    let mut steps = Vec::new();
    let mut child = start;
    while let Some(parent) = tree.parent(child) {
        let distance = stats.get(parent).punc_num as i64 - stats.get(child).punc_num as i64;
        steps.push(BacktrackStep {
            child,
            parent,
            distance,
        });
        if distance == 0 || parent == NodeId::ROOT {
            break;
        }
        child = parent;
    }
    Ok(BacktrackTrace {
        steps,
        summary: child,
    })
}

pub fn extract_econ(tree: &DomTree, params: &EconParams) -> Result<ExtractionResult> {
    let bigs = big_nodes(tree, params);
    if bigs.is_empty() {
        return Err(Error::NoContent("page has no big-nodes".into()));
    }
    let paras: Vec<TextPara> = bigs.iter().map(|&id| joint_para(tree, id)).collect();
    let snippet = snippet_node(&paras)?;
    let stats = annotate(tree);
    let trace = backtrack_summary(tree, &stats, snippet)?;
    log::debug!(
        "econ snippet {snippet}, summary {} after {} steps",
        trace.summary,
        trace.steps.len()
    );
    let summary = trace.summary;
    let s = stats.get(summary);
    Ok(ExtractionResult {
        source_name: tree.source_name().to_owned(),
        strategy: Strategy::Econ,
        node_path: tree.path_to(summary),
        text: tree.node_text(summary),
        word_count: s.word_count,
        punc_num: s.punc_num,
        score: None,
        trace: Some(trace),
    })
}
