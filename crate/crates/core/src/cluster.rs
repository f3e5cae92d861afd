//! Structural page clustering: pairwise normalized tree distance, then
//! connected components under a distance threshold (single linkage).

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::treedist::{rtdm, stm_normalized, SimTree, UnitCosts};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Algo {
    Stm,
    Rtdm,
}

impl fmt::Display for Algo {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Algo::Stm => "stm",
            Algo::Rtdm => "rtdm",
        })
    }
}

impl FromStr for Algo {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "stm" => Ok(Algo::Stm),
            "rtdm" => Ok(Algo::Rtdm),
            other => Err(Error::InvalidParams(format!("unknown algorithm {other:?}"))),
        }
    }
}

/// Distance in `[0, 1]`; 0 for identical trees.
///
/// For `stm` this is `1 - stm_normalized`; for `rtdm` the unit-cost distance
/// divided by the combined size, which bounds it.
pub fn normalized_distance(a: &SimTree, b: &SimTree, algo: Algo) -> f64 {
    match algo {
        Algo::Stm => 1.0 - stm_normalized(a, b),
        Algo::Rtdm => {
            let cost = rtdm(a, b, &UnitCosts::default());
            (cost / (a.size() + b.size()) as f64).clamp(0.0, 1.0)
        }
    }
}

/// Symmetric, zero-diagonal pairwise distances.
#[derive(Debug, Clone, PartialEq)]
pub struct DistanceMatrix {
    n: usize,
    cells: Vec<f64>,
}

impl DistanceMatrix {
    /// Computes every unordered pair once, in parallel.
    pub fn from_trees(trees: &[SimTree], algo: Algo) -> Self {
        let n = trees.len();
        let pairs: Vec<(usize, usize)> = (0..n)
            .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
            .collect();
        let values: Vec<f64> = pairs
            .par_iter()
            .map(|&(i, j)| normalized_distance(&trees[i], &trees[j], algo))
            .collect();
        let mut m = DistanceMatrix {
            n,
            cells: vec![0.0; n * n],
        };
        for (&(i, j), &d) in pairs.iter().zip(&values) {
            m.cells[i * n + j] = d;
            m.cells[j * n + i] = d;
        }
        m
    }

    /// Builds a matrix from explicit rows, checking shape, symmetry, the
    /// zero diagonal and the `[0, 1]` range.
    pub fn from_rows(rows: Vec<Vec<f64>>) -> Result<Self> {
        let n = rows.len();
        let bad = |msg: String| Err(Error::InvalidParams(msg));
        if rows.iter().any(|r| r.len() != n) {
            return bad("distance matrix is not square".into());
        }
        for (i, row) in rows.iter().enumerate() {
            if row[i] != 0.0 {
                return bad(format!("diagonal entry {i} is not zero"));
            }
            for (j, &d) in row.iter().enumerate() {
                if !(0.0..=1.0).contains(&d) || d != rows[j][i] {
                    return bad(format!("entry ({i}, {j}) is out of range or asymmetric"));
                }
            }
        }
        Ok(DistanceMatrix {
            n,
            cells: rows.into_iter().flatten().collect(),
        })
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.cells[i * self.n + j]
    }

    pub fn rows(&self) -> Vec<Vec<f64>> {
        self.cells
            .chunks(self.n.max(1))
            .map(<[f64]>::to_vec)
            .take(self.n)
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ClusterSet {
    pub threshold: f64,
    /// Sorted member indices per group, groups ordered by smallest member.
    pub groups: Vec<Vec<usize>>,
}

impl ClusterSet {
    /// Largest pairwise distance inside each group.
    pub fn diameters(&self, matrix: &DistanceMatrix) -> Vec<f64> {
        self.groups
            .iter()
            .map(|g| {
                g.iter()
                    .flat_map(|&i| g.iter().map(move |&j| matrix.get(i, j)))
                    .fold(0.0, f64::max)
            })
            .collect()
    }
}

fn find(parent: &mut [usize], mut x: usize) -> usize {
    while parent[x] != x {
        parent[x] = parent[parent[x]];
        x = parent[x];
    }
    x
}

/// Connected components of the graph linking pages at distance `<= threshold`.
pub fn cluster_pages(matrix: &DistanceMatrix, threshold: f64) -> Result<ClusterSet> {
    if !(0.0..=1.0).contains(&threshold) {
        return Err(Error::InvalidParams(format!(
            "threshold must lie in [0, 1], got {threshold}"
        )));
    }
    let n = matrix.len();
    let mut parent: Vec<usize> = (0..n).collect();
    for i in 0..n {
        for j in i + 1..n {
            if matrix.get(i, j) <= threshold {
                let (ri, rj) = (find(&mut parent, i), find(&mut parent, j));
                if ri != rj {
                    parent[ri.max(rj)] = ri.min(rj);
                }
            }
        }
    }
    let mut groups: Vec<Vec<usize>> = Vec::new();
    let mut slot = vec![usize::MAX; n];
    for i in 0..n {
        let root = find(&mut parent, i);
        if slot[root] == usize::MAX {
            slot[root] = groups.len();
            groups.push(Vec::new());
        }
        groups[slot[root]].push(i);
    }
    Ok(ClusterSet { threshold, groups })
}
