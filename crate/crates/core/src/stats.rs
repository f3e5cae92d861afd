//! Per-node word, link-word and punctuation counts.

use serde::Serialize;

use crate::dom::{DomTree, NodeId, NodeKind};

/// Period and comma, ASCII and CJK full-width.
pub const PUNCTUATION: [char; 5] = ['.', ',', '\u{3002}', '\u{FF0C}', '\u{FF0E}'];

/// Subtree-cumulative counts for one node.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct NodeStats {
    pub word_count: u64,
    /// Words lying under an `a` element that has an `href`.
    pub link_word_count: u64,
    pub punc_num: u64,
}

impl std::ops::AddAssign for NodeStats {
    fn add_assign(&mut self, rhs: Self) {
        self.word_count += rhs.word_count;
        self.link_word_count += rhs.link_word_count;
        self.punc_num += rhs.punc_num;
    }
}

/// Stats for every node of one tree, indexed by node id.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StatsMap(Vec<NodeStats>);

impl StatsMap {
    pub fn get(&self, id: NodeId) -> &NodeStats {
        &self.0[id.0]
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (NodeId, &NodeStats)> {
        self.0.iter().enumerate().map(|(i, s)| (NodeId(i), s))
    }

    /// Builds a map directly from per-node values, e.g. for rescaled copies.
    pub fn from_vec(stats: Vec<NodeStats>) -> Self {
        StatsMap(stats)
    }
}

/// Number of maximal non-whitespace runs.
pub fn word_count(text: &str) -> u64 {
    text.split_whitespace().count() as u64
}

pub fn punc_num(text: &str) -> u64 {
    text.chars().filter(|c| PUNCTUATION.contains(c)).count() as u64
}

fn is_link(tree: &DomTree, id: NodeId) -> bool {
    let node = tree.node(id);
    node.tag() == Some("a") && node.attr("href").is_some()
}

/// Counts words, link words and punctuation for every node in one pass.
pub fn annotate(tree: &DomTree) -> StatsMap {
    let n = tree.node_count();
    let mut in_link = vec![false; n];
    let mut stats = vec![NodeStats::default(); n];

    // Parents precede children in pre-order.
    for node in tree.nodes() {
        let id = node.id();
        let parent_link = node.parent().is_some_and(|p| in_link[p.0]);
        in_link[id.0] = parent_link || is_link(tree, id);
        if let NodeKind::Text(t) = node.kind() {
            let words = word_count(t);
            stats[id.0] = NodeStats {
                word_count: words,
                link_word_count: if parent_link { words } else { 0 },
                punc_num: punc_num(t),
            };
        }
    }
    for node in tree.nodes().iter().rev() {
        if let Some(p) = node.parent() {
            let s = stats[node.id().0];
            stats[p.0] += s;
        }
    }
    StatsMap(stats)
}
