use std::collections::hash_map::DefaultHasher;
use std::hash::{Hash, Hasher};

use super::{DpMatrix, SimTree};

/// Prices of the three edit operations. `replace` is only consulted for
/// nodes whose labels differ; equal labels always map for free.
pub trait CostModel {
    fn delete(&self, node: &SimTree) -> f64;
    fn insert(&self, node: &SimTree) -> f64;
    fn replace(&self, from: &SimTree, to: &SimTree) -> f64;

    /// Substitution is pruned once the aligned prefix already costs more
    /// than this.
    fn epsilon(&self) -> f64 {
        f64::INFINITY
    }
}

/// Every operation costs 1.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct UnitCosts {
    pub epsilon: f64,
}

impl Default for UnitCosts {
    fn default() -> Self {
        UnitCosts {
            epsilon: f64::INFINITY,
        }
    }
}

impl UnitCosts {
    pub fn with_epsilon(epsilon: f64) -> Self {
        UnitCosts { epsilon }
    }
}

impl CostModel for UnitCosts {
    fn delete(&self, _: &SimTree) -> f64 {
        1.0
    }

    fn insert(&self, _: &SimTree) -> f64 {
        1.0
    }

    fn replace(&self, from: &SimTree, to: &SimTree) -> f64 {
        if from.label() == to.label() {
            0.0
        } else {
            1.0
        }
    }

    fn epsilon(&self) -> f64 {
        self.epsilon
    }
}

pub(super) fn relabel<C: CostModel + ?Sized>(costs: &C, from: &SimTree, to: &SimTree) -> f64 {
    if from.label() == to.label() {
        0.0
    } else {
        costs.replace(from, to)
    }
}

/// Per-node data precomputed once per tree, indexed by pre-order position.
struct Indexed<'a> {
    nodes: Vec<&'a SimTree>,
    children: Vec<Vec<usize>>,
    /// Cost of deleting (or inserting) the whole subtree.
    subtree_cost: Vec<f64>,
    shape_hash: Vec<u64>,
}

impl<'a> Indexed<'a> {
    fn new(tree: &'a SimTree, node_cost: impl Fn(&SimTree) -> f64) -> Self {
        let nodes = tree.preorder();
        let n = nodes.len();
        let mut children = vec![Vec::new(); n];
        for (i, node) in nodes.iter().enumerate() {
            let mut next = i + 1;
            for c in node.children() {
                children[i].push(next);
                next += c.size();
            }
        }
        let mut subtree_cost = vec![0.0; n];
        let mut shape_hash = vec![0; n];
        for i in (0..n).rev() {
            subtree_cost[i] =
                node_cost(nodes[i]) + children[i].iter().map(|&c| subtree_cost[c]).sum::<f64>();
            let mut h = DefaultHasher::new();
            nodes[i].label().hash(&mut h);
            for &c in &children[i] {
                shape_hash[c].hash(&mut h);
            }
            shape_hash[i] = h.finish();
        }
        Indexed {
            nodes,
            children,
            subtree_cost,
            shape_hash,
        }
    }

    fn descendant_cost(&self, i: usize) -> f64 {
        self.children[i].iter().map(|&c| self.subtree_cost[c]).sum()
    }

    fn is_leaf(&self, i: usize) -> bool {
        self.children[i].is_empty()
    }
}

/// Restricted top-down edit distance.
///
/// Children of the two roots are aligned by a sequence DP: a child subtree
/// is deleted or inserted whole, or paired with a child of the other side.
/// Pairing costs nothing for identical subtrees; a leaf paired with a
/// subtree costs a relabel plus deleting/inserting the rest; two inner nodes
/// recurse. Pairing is skipped once the diagonal prefix exceeds
/// `costs.epsilon()`. Differing root labels add one relabel.
pub fn rtdm<C: CostModel + ?Sized>(a: &SimTree, b: &SimTree, costs: &C) -> f64 {
    let ia = Indexed::new(a, |n| costs.delete(n));
    let ib = Indexed::new(b, |n| costs.insert(n));
    relabel(costs, a, b) + align_children(&ia, 0, &ib, 0, costs)
}

fn align_children<C: CostModel + ?Sized>(
    a: &Indexed,
    ai: usize,
    b: &Indexed,
    bi: usize,
    costs: &C,
) -> f64 {
    let (ac, bc) = (&a.children[ai], &b.children[bi]);
    let (m, n) = (ac.len(), bc.len());
    let epsilon = costs.epsilon();
    let mut table = DpMatrix::new(m + 1, n + 1, 0.0f64);
    for i in 1..=m {
        table[(i, 0)] = table[(i - 1, 0)] + a.subtree_cost[ac[i - 1]];
    }
    for j in 1..=n {
        table[(0, j)] = table[(0, j - 1)] + b.subtree_cost[bc[j - 1]];
    }
    for i in 1..=m {
        for j in 1..=n {
            let (x, y) = (ac[i - 1], bc[j - 1]);
            let del = table[(i - 1, j)] + a.subtree_cost[x];
            let ins = table[(i, j - 1)] + b.subtree_cost[y];
            let diag = table[(i - 1, j - 1)];
            let sub = if diag > epsilon {
                f64::INFINITY
            } else if a.shape_hash[x] == b.shape_hash[y] && a.nodes[x] == b.nodes[y] {
                diag
            } else if a.is_leaf(x) {
                let rest = b.descendant_cost(y);
                diag + relabel(costs, a.nodes[x], b.nodes[y]) + rest
            } else if b.is_leaf(y) {
                let rest = a.descendant_cost(x);
                diag + relabel(costs, a.nodes[x], b.nodes[y]) + rest
            } else {
                diag + relabel(costs, a.nodes[x], b.nodes[y]) + align_children(a, x, b, y, costs)
            };
            table[(i, j)] = del.min(ins).min(sub);
        }
    }
    table[(m, n)]
}
