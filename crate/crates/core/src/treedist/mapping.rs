use super::SimTree;

/// Pairs `(i, j)` of pre-order indices, `i` into the first tree and `j`
/// into the second.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct Mapping(Vec<(usize, usize)>);

impl Mapping {
    pub fn new(pairs: Vec<(usize, usize)>) -> Self {
        Mapping(pairs)
    }

    pub fn pairs(&self) -> &[(usize, usize)] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, pair: (usize, usize)) -> bool {
        self.0.contains(&pair)
    }
}

impl FromIterator<(usize, usize)> for Mapping {
    fn from_iter<I: IntoIterator<Item = (usize, usize)>>(iter: I) -> Self {
        Mapping(iter.into_iter().collect())
    }
}

/// Subtree sizes indexed by pre-order position.
pub(super) fn extents(tree: &SimTree) -> Vec<usize> {
    tree.preorder().iter().map(|t| t.size()).collect()
}

pub(super) fn is_ancestor(ext: &[usize], x: usize, y: usize) -> bool {
    x < y && y < x + ext[x]
}

pub(super) fn is_left_of(ext: &[usize], x: usize, y: usize) -> bool {
    x + ext[x] <= y
}

/// The three mapping conditions for one pair of pairs, both directions.
pub(super) fn compatible(
    a_ext: &[usize],
    b_ext: &[usize],
    (i1, j1): (usize, usize),
    (i2, j2): (usize, usize),
) -> bool {
    (i1 == i2) == (j1 == j2)
        && is_left_of(a_ext, i1, i2) == is_left_of(b_ext, j1, j2)
        && is_left_of(a_ext, i2, i1) == is_left_of(b_ext, j2, j1)
        && is_ancestor(a_ext, i1, i2) == is_ancestor(b_ext, j1, j2)
        && is_ancestor(a_ext, i2, i1) == is_ancestor(b_ext, j2, j1)
}

/// True iff every pair of pairs keeps one-to-one correspondence, sibling
/// order and ancestry. Out-of-range indices make the mapping invalid.
pub fn validate_mapping(m: &Mapping, a: &SimTree, b: &SimTree) -> bool {
    let (a_ext, b_ext) = (extents(a), extents(b));
    if m.pairs()
        .iter()
        .any(|&(i, j)| i >= a_ext.len() || j >= b_ext.len())
    {
        return false;
    }
    let pairs = m.pairs();
    pairs.iter().enumerate().all(|(k, &p)| {
        pairs[k + 1..]
            .iter()
            .all(|&q| compatible(&a_ext, &b_ext, p, q))
    })
}
