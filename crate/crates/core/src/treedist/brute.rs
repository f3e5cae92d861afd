//! Exhaustive enumeration of restricted top-down mappings. Exponential; only
//! for checking the dynamic programs on small trees.

use super::mapping::{compatible, extents};
use super::rtdm::{relabel, CostModel};
use super::SimTree;
use crate::error::{Error, Result};

pub const STM_BRUTE_FORCE_LIMIT: usize = 8;
pub const RTDM_BRUTE_FORCE_LIMIT: usize = 7;

struct Flat<'a> {
    nodes: Vec<&'a SimTree>,
    parent: Vec<Option<usize>>,
    ext: Vec<usize>,
}

impl<'a> Flat<'a> {
    fn new(tree: &'a SimTree, limit: usize) -> Result<Self> {
        if tree.size() > limit {
            return Err(Error::TreeTooLarge {
                size: tree.size(),
                limit,
            });
        }
        let nodes = tree.preorder();
        let ext = extents(tree);
        let mut parent = vec![None; nodes.len()];
        for (i, node) in nodes.iter().enumerate() {
            let mut next = i + 1;
            for c in node.children() {
                parent[next] = Some(i);
                next += c.size();
            }
        }
        Ok(Flat { nodes, parent, ext })
    }
}

struct Search<'s, 'a, F> {
    a: &'s Flat<'a>,
    b: &'s Flat<'a>,
    candidates: Vec<(usize, usize)>,
    chosen: Vec<(usize, usize)>,
    visit: F,
}

impl<F: FnMut(&[(usize, usize)])> Search<'_, '_, F> {
    fn admissible(&self, (i, j): (usize, usize)) -> bool {
        let closed = match (self.a.parent[i], self.b.parent[j]) {
            (Some(pi), Some(pj)) => self.chosen.contains(&(pi, pj)),
            _ => false,
        };
        closed
            && self
                .chosen
                .iter()
                .all(|&q| compatible(&self.a.ext, &self.b.ext, (i, j), q))
    }

    fn run(&mut self, k: usize) {
        if k == self.candidates.len() {
            (self.visit)(&self.chosen);
            return;
        }
        self.run(k + 1);
        let pair = self.candidates[k];
        if self.admissible(pair) {
            self.chosen.push(pair);
            self.run(k + 1);
            self.chosen.pop();
        }
    }
}

/// Calls `visit` once for every valid, parent-closed mapping that maps root
/// to root and only uses pairs accepted by `allow`.
fn for_each_mapping(
    a: &Flat,
    b: &Flat,
    allow: impl Fn(&SimTree, &SimTree) -> bool,
    visit: impl FnMut(&[(usize, usize)]),
) {
    if !allow(a.nodes[0], b.nodes[0]) {
        return;
    }
    // Parents precede children in lexicographic order, so closure can be
    // checked at insertion time.
    let mut candidates = Vec::new();
    for i in 1..a.nodes.len() {
        for j in 1..b.nodes.len() {
            if allow(a.nodes[i], b.nodes[j]) {
                candidates.push((i, j));
            }
        }
    }
    let mut search = Search {
        a,
        b,
        candidates,
        chosen: vec![(0, 0)],
        visit,
    };
    search.run(0);
}

/// Largest parent-closed mapping between equal labels, by enumeration.
/// Both trees must have at most [`STM_BRUTE_FORCE_LIMIT`] nodes.
pub fn brute_force_stm(a: &SimTree, b: &SimTree) -> Result<usize> {
    let fa = Flat::new(a, STM_BRUTE_FORCE_LIMIT)?;
    let fb = Flat::new(b, STM_BRUTE_FORCE_LIMIT)?;
    let mut best = 0;
    for_each_mapping(
        &fa,
        &fb,
        |x, y| x.label() == y.label(),
        |m| best = best.max(m.len()),
    );
    Ok(best)
}

/// Cheapest parent-closed mapping with roots mapped: relabel every mapped
/// pair with differing labels, delete every unmapped node of `a`, insert
/// every unmapped node of `b`. Both trees must have at most
/// [`RTDM_BRUTE_FORCE_LIMIT`] nodes.
pub fn brute_force_rtdm<C: CostModel + ?Sized>(a: &SimTree, b: &SimTree, costs: &C) -> Result<f64> {
    let fa = Flat::new(a, RTDM_BRUTE_FORCE_LIMIT)?;
    let fb = Flat::new(b, RTDM_BRUTE_FORCE_LIMIT)?;
    let mut best = f64::INFINITY;
    for_each_mapping(
        &fa,
        &fb,
        |_, _| true,
        |m| {
            let mut a_used = vec![false; fa.nodes.len()];
            let mut b_used = vec![false; fb.nodes.len()];
            let mut cost = 0.0;
            for &(i, j) in m {
                a_used[i] = true;
                b_used[j] = true;
                cost += relabel(costs, fa.nodes[i], fb.nodes[j]);
            }
            for (i, &used) in a_used.iter().enumerate() {
                if !used {
                    cost += costs.delete(fa.nodes[i]);
                }
            }
            for (j, &used) in b_used.iter().enumerate() {
                if !used {
                    cost += costs.insert(fb.nodes[j]);
                }
            }
            best = best.min(cost);
        },
    );
    Ok(best)
}
