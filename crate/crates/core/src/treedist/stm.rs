use super::{DpMatrix, Mapping, SimTree};

/// Size of the largest top-down mapping between equal labels. Roots with
/// different labels match nothing.
pub fn simple_tree_matching(a: &SimTree, b: &SimTree) -> usize {
    simple_tree_matching_counted(a, b).0
}

/// Same as [`simple_tree_matching`], also returning how many recursive
/// invocations were made.
pub fn simple_tree_matching_counted(a: &SimTree, b: &SimTree) -> (usize, u64) {
    let mut calls = 0;
    let score = matching(a, b, &mut calls, None);
    (score, calls)
}

/// `2 * STM(a, b) / (|a| + |b|)`, in `[0, 1]`.
pub fn stm_normalized(a: &SimTree, b: &SimTree) -> f64 {
    2.0 * simple_tree_matching(a, b) as f64 / (a.size() + b.size()) as f64
}

fn matching(
    a: &SimTree,
    b: &SimTree,
    calls: &mut u64,
    weights: Option<&mut DpMatrix<usize>>,
) -> usize {
    *calls += 1;
    if a.label() != b.label() {
        return 0;
    }
    let (m, n) = (a.degree(), b.degree());
    let mut table = DpMatrix::new(m + 1, n + 1, 0usize);
    let mut w = DpMatrix::new(m + 1, n + 1, 0usize);
    for i in 1..=m {
        for j in 1..=n {
            w[(i, j)] = matching(&a.children()[i - 1], &b.children()[j - 1], calls, None);
            table[(i, j)] = table[(i, j - 1)]
                .max(table[(i - 1, j)])
                .max(table[(i - 1, j - 1)] + w[(i, j)]);
        }
    }
    if let Some(out) = weights {
        *out = w;
    }
    table[(m, n)] + 1
}

/// One maximum mapping, as pre-order index pairs, recovered by tracing back
/// through the matching tables.
pub fn stm_mapping(a: &SimTree, b: &SimTree) -> Mapping {
    let mut pairs = Vec::new();
    trace(a, 0, b, 0, &mut pairs);
    pairs.sort_unstable();
    Mapping::new(pairs)
}

fn trace(a: &SimTree, a_at: usize, b: &SimTree, b_at: usize, out: &mut Vec<(usize, usize)>) {
    let mut w = DpMatrix::new(1, 1, 0);
    if matching(a, b, &mut 0, Some(&mut w)) == 0 {
        return;
    }
    out.push((a_at, b_at));
    let (m, n) = (a.degree(), b.degree());
    let mut table = DpMatrix::new(m + 1, n + 1, 0usize);
    for i in 1..=m {
        for j in 1..=n {
            table[(i, j)] = table[(i, j - 1)]
                .max(table[(i - 1, j)])
                .max(table[(i - 1, j - 1)] + w[(i, j)]);
        }
    }
    let offsets = |t: &SimTree, at: usize| -> Vec<usize> {
        t.children()
            .iter()
            .scan(at + 1, |next, c| {
                let here = *next;
                *next += c.size();
                Some(here)
            })
            .collect()
    };
    let (a_off, b_off) = (offsets(a, a_at), offsets(b, b_at));
    let (mut i, mut j) = (m, n);
    while i > 0 && j > 0 {
        if w[(i, j)] > 0 && table[(i, j)] == table[(i - 1, j - 1)] + w[(i, j)] {
            trace(
                &a.children()[i - 1],
                a_off[i - 1],
                &b.children()[j - 1],
                b_off[j - 1],
                out,
            );
            i -= 1;
            j -= 1;
        } else if table[(i, j)] == table[(i - 1, j)] {
            i -= 1;
        } else {
            j -= 1;
        }
    }
}
