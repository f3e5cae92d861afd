//! Structural similarity between labeled ordered trees.
//!
//! Two measures are provided, both over restricted top-down mappings (a
//! node can only be mapped if its parent is mapped to the other node's
//! parent):
//!
//! * [`simple_tree_matching`] counts the largest such mapping between
//!   equal labels;
//! * [`rtdm`] prices the cheapest one under a delete/insert/replace
//!   [`CostModel`], with an optional pruning threshold.
//!
//! The exponential [`brute_force_stm`] and [`brute_force_rtdm`] enumerate
//! every mapping and exist to check the dynamic programs on small trees.

mod brute;
mod mapping;
mod rtdm;
mod stm;

use std::fmt;
use std::ops::{Index, IndexMut};
use std::str::FromStr;

use rand::Rng;

use crate::dom::{DomTree, NodeKind};
use crate::error::{Error, Result};

pub use brute::{brute_force_rtdm, brute_force_stm, RTDM_BRUTE_FORCE_LIMIT, STM_BRUTE_FORCE_LIMIT};
pub use mapping::{validate_mapping, Mapping};
pub use rtdm::{rtdm, CostModel, UnitCosts};
pub use stm::{simple_tree_matching, simple_tree_matching_counted, stm_mapping, stm_normalized};

/// Tag-only projection of a DOM tree.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SimTree {
    label: String,
    children: Vec<SimTree>,
    size: usize,
}

impl SimTree {
    pub fn new(label: impl Into<String>, children: Vec<SimTree>) -> Self {
        let size = 1 + children.iter().map(|c| c.size).sum::<usize>();
        SimTree {
            label: label.into(),
            children,
            size,
        }
    }

    pub fn leaf(label: impl Into<String>) -> Self {
        SimTree::new(label, Vec::new())
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn children(&self) -> &[SimTree] {
        &self.children
    }

    /// Number of nodes, self included.
    pub fn size(&self) -> usize {
        self.size
    }

    pub fn degree(&self) -> usize {
        self.children.len()
    }

    pub fn is_leaf(&self) -> bool {
        self.children.is_empty()
    }

    pub fn height(&self) -> usize {
        1 + self.children.iter().map(SimTree::height).max().unwrap_or(0)
    }

    /// Subtrees in pre-order, starting with `self`.
    pub fn preorder(&self) -> Vec<&SimTree> {
        let mut out = Vec::with_capacity(self.size);
        let mut stack = vec![self];
        while let Some(t) = stack.pop() {
            out.push(t);
            stack.extend(t.children.iter().rev());
        }
        out
    }

    /// A random tree with exactly `size` nodes: every node after the first
    /// attaches as the last child of a uniformly chosen earlier node.
    pub fn random<R: Rng + ?Sized>(rng: &mut R, size: usize, labels: &[&str]) -> SimTree {
        assert!(size > 0 && !labels.is_empty());
        let mut kids: Vec<Vec<usize>> = vec![Vec::new(); size];
        for k in 1..size {
            kids[rng.random_range(0..k)].push(k);
        }
        let names: Vec<&str> = (0..size)
            .map(|_| labels[rng.random_range(0..labels.len())])
            .collect();
        fn build(i: usize, kids: &[Vec<usize>], names: &[&str]) -> SimTree {
            SimTree::new(
                names[i],
                kids[i].iter().map(|&c| build(c, kids, names)).collect(),
            )
        }
        build(0, &kids, &names)
    }
}

/// Writes the `a(b,c(d))` notation accepted by [`FromStr`].
impl fmt::Display for SimTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label)?;
        if !self.children.is_empty() {
            f.write_str("(")?;
            for (i, c) in self.children.iter().enumerate() {
                if i > 0 {
                    f.write_str(",")?;
                }
                write!(f, "{c}")?;
            }
            f.write_str(")")?;
        }
        Ok(())
    }
}

impl FromStr for SimTree {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut parser = NotationParser { src: s, pos: 0 };
        let tree = parser.tree()?;
        parser.skip_ws();
        if parser.pos != s.len() {
            return Err(parser.error("trailing input"));
        }
        Ok(tree)
    }
}

struct NotationParser<'a> {
    src: &'a str,
    pos: usize,
}

impl NotationParser<'_> {
    fn error(&self, what: &str) -> Error {
        Error::InvalidParams(format!("bad tree notation at byte {}: {what}", self.pos))
    }

    fn skip_ws(&mut self) {
        let rest = &self.src[self.pos..];
        self.pos += rest.len() - rest.trim_start().len();
    }

    fn peek(&self) -> Option<char> {
        self.src[self.pos..].chars().next()
    }

    fn tree(&mut self) -> Result<SimTree> {
        self.skip_ws();
        let rest = &self.src[self.pos..];
        let len = rest
            .find(|c: char| c.is_whitespace() || matches!(c, '(' | ')' | ','))
            .unwrap_or(rest.len());
        if len == 0 {
            return Err(self.error("expected a label"));
        }
        let label = &rest[..len];
        self.pos += len;
        self.skip_ws();
        let mut children = Vec::new();
        if self.peek() == Some('(') {
            self.pos += 1;
            loop {
                children.push(self.tree()?);
                self.skip_ws();
                match self.peek() {
                    Some(',') => self.pos += 1,
                    Some(')') => {
                        self.pos += 1;
                        break;
                    }
                    _ => return Err(self.error("expected ',' or ')'")),
                }
            }
        }
        Ok(SimTree::new(label, children))
    }
}

/// Drops text nodes and keeps element tags, preserving child order.
pub fn project_sim(tree: &DomTree) -> SimTree {
    let mut built: Vec<Option<SimTree>> = vec![None; tree.node_count()];
    for node in tree.nodes().iter().rev() {
        if let NodeKind::Element { tag, .. } = node.kind() {
            let children = node
                .children()
                .iter()
                .filter_map(|c| built[c.0].take())
                .collect();
            built[node.id().0] = Some(SimTree::new(tag.clone(), children));
        }
    }
    built[0].take().expect("root is an element")
}

/// Dense row-major table backing the dynamic programs.
#[derive(Debug, Clone, PartialEq)]
pub struct DpMatrix<T> {
    rows: usize,
    cols: usize,
    cells: Vec<T>,
}

impl<T: Clone> DpMatrix<T> {
    pub fn new(rows: usize, cols: usize, fill: T) -> Self {
        DpMatrix {
            rows,
            cols,
            cells: vec![fill; rows * cols],
        }
    }
}

impl<T> DpMatrix<T> {
    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }
}

impl<T> Index<(usize, usize)> for DpMatrix<T> {
    type Output = T;

    fn index(&self, (i, j): (usize, usize)) -> &T {
        assert!(i < self.rows && j < self.cols);
        &self.cells[i * self.cols + j]
    }
}

impl<T> IndexMut<(usize, usize)> for DpMatrix<T> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut T {
        assert!(i < self.rows && j < self.cols);
        &mut self.cells[i * self.cols + j]
    }
}
