//! Combinatorial engines: maximum-cardinality bipartite matching
//! (Hopcroft–Karp), bottleneck perfect matching by threshold search over the
//! sorted pairwise costs, min-cost perfect matching (Hungarian method) and
//! unit-capacity max flow (Dinic).
//!
//! Costs are supplied as a closure `Fn(left, right) -> f64`. Engines own all
//! their scratch state, so concurrent calls are independent.

mod flow;
mod hopcroft_karp;
mod hungarian;

pub use flow::{max_flow_unit, FlowNetwork, FlowResult};
pub use hopcroft_karp::max_cardinality_matching;
pub use hungarian::min_cost_perfect_matching;

use crate::error::{Error, Result};

/// Largest side length for which the full cost matrix is materialized.
pub const DENSE_LIMIT: usize = 4096;

/// Bipartite graph given by adjacency lists of the left side.
#[derive(Debug, Clone, PartialEq)]
pub struct BipartiteGraph {
    left_size: usize,
    right_size: usize,
    adjacency: Vec<Vec<usize>>,
}

impl BipartiteGraph {
    pub fn new(right_size: usize, adjacency: Vec<Vec<usize>>) -> Result<Self> {
        for (u, row) in adjacency.iter().enumerate() {
            if let Some(&v) = row.iter().find(|&&v| v >= right_size) {
                return Err(Error::InvalidParameter(format!(
                    "edge ({u}, {v}) points past right side of size {right_size}"
                )));
            }
        }
        Ok(Self {
            left_size: adjacency.len(),
            right_size,
            adjacency,
        })
    }

    /// Graph of all pairs whose cost is at most `threshold`.
    pub fn from_threshold<F>(left: usize, right: usize, cost: F, threshold: f64) -> Self
    where
        F: Fn(usize, usize) -> f64,
    {
        let adjacency = (0..left)
            .map(|i| (0..right).filter(|&j| cost(i, j) <= threshold).collect())
            .collect();
        Self {
            left_size: left,
            right_size: right,
            adjacency,
        }
    }

    pub fn left_size(&self) -> usize {
        self.left_size
    }

    pub fn right_size(&self) -> usize {
        self.right_size
    }

    pub fn adjacency(&self) -> &[Vec<usize>] {
        &self.adjacency
    }
}

/// A (possibly partial) matching from left indices to right indices.
#[derive(Debug, Clone, PartialEq)]
pub struct Matching {
    pub pairs: Vec<Option<usize>>,
    pub bottleneck_cost: Option<f64>,
    pub total_cost: Option<f64>,
}

impl Matching {
    pub fn from_assignment(assignment: Vec<usize>) -> Self {
        Self {
            pairs: assignment.into_iter().map(Some).collect(),
            bottleneck_cost: None,
            total_cost: None,
        }
    }

    pub fn cardinality(&self) -> usize {
        self.pairs.iter().flatten().count()
    }

    pub fn is_perfect(&self) -> bool {
        self.pairs.iter().all(Option::is_some)
    }

    /// Left-to-right assignment, when every left index is matched.
    pub fn assignment(&self) -> Option<Vec<usize>> {
        self.pairs.iter().copied().collect()
    }

    pub fn iter_pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.pairs
            .iter()
            .enumerate()
            .filter_map(|(i, j)| j.map(|j| (i, j)))
    }

    /// No right index is used twice.
    pub fn is_injective(&self) -> bool {
        let mut seen = std::collections::HashSet::new();
        self.iter_pairs().all(|(_, j)| seen.insert(j))
    }
}

/// Cost lookups with the matrix materialized up to [`DENSE_LIMIT`].
pub(crate) enum CostTable<F> {
    Dense { cols: usize, values: Vec<f64> },
    Lazy(F),
}

impl<F: Fn(usize, usize) -> f64> CostTable<F> {
    pub(crate) fn new(rows: usize, cols: usize, cost: F) -> Self {
        if rows.max(cols) <= DENSE_LIMIT {
            let mut values = Vec::with_capacity(rows * cols);
            for i in 0..rows {
                for j in 0..cols {
                    values.push(cost(i, j));
                }
            }
            CostTable::Dense { cols, values }
        } else {
            CostTable::Lazy(cost)
        }
    }

    #[inline]
    pub(crate) fn get(&self, i: usize, j: usize) -> f64 {
        match self {
            CostTable::Dense { cols, values } => values[i * cols + j],
            CostTable::Lazy(f) => f(i, j),
        }
    }
}

/// Perfect matching minimizing the largest edge cost.
///
/// Every pairwise cost is collected, deduplicated and sorted; the engine then
/// bisects over indices of that list for the smallest threshold whose
/// admissible graph has a perfect matching. The reported bottleneck is always
/// one of the pairwise costs.
pub fn bottleneck_perfect_matching<F>(left: usize, right: usize, cost: F) -> Result<Matching>
where
    F: Fn(usize, usize) -> f64,
{
    if left != right {
        return Err(Error::SizeMismatch { left, right });
    }
    let n = left;
    if n == 0 {
        return Ok(Matching {
            pairs: Vec::new(),
            bottleneck_cost: Some(0.0),
            total_cost: None,
        });
    }
    let table = CostTable::new(n, n, cost);

    let mut candidates = Vec::with_capacity(n * n);
    for i in 0..n {
        for j in 0..n {
            candidates.push(table.get(i, j));
        }
    }
    candidates.sort_unstable_by(f64::total_cmp);
    candidates.dedup();

    // Every row and every column needs at least one admissible edge.
    let mut lower = 0.0f64;
    for i in 0..n {
        let row_min = (0..n).map(|j| table.get(i, j)).fold(f64::INFINITY, f64::min);
        let col_min = (0..n).map(|j| table.get(j, i)).fold(f64::INFINITY, f64::min);
        lower = lower.max(row_min).max(col_min);
    }

    let try_threshold = |t: f64| -> Option<Vec<usize>> {
        let adjacency: Vec<Vec<usize>> = (0..n)
            .map(|i| (0..n).filter(|&j| table.get(i, j) <= t).collect())
            .collect();
        let (pairs, size) = hopcroft_karp::run(&adjacency, n);
        (size == n).then(|| pairs.into_iter().map(|p| p.unwrap()).collect())
    };

    let mut lo = candidates.partition_point(|&c| c < lower);
    let mut hi = candidates.len() - 1;
    let mut best = None;
    while lo < hi {
        let mid = lo + (hi - lo) / 2;
        match try_threshold(candidates[mid]) {
            Some(a) => {
                best = Some(a);
                hi = mid;
            }
            None => lo = mid + 1,
        }
    }
    // `best`, when set, was found at the current `hi`.
    let assignment = best.unwrap_or_else(|| {
        try_threshold(candidates[hi]).expect("largest candidate admits every edge")
    });
    let bottleneck = assignment
        .iter()
        .enumerate()
        .map(|(i, &j)| table.get(i, j))
        .fold(0.0, f64::max);
    let mut m = Matching::from_assignment(assignment);
    m.bottleneck_cost = Some(bottleneck);
    Ok(m)
}

/// Compensated (Neumaier) summation.
pub(crate) fn compensated_sum<I: IntoIterator<Item = f64>>(values: I) -> f64 {
    let mut sum = 0.0f64;
    let mut c = 0.0f64;
    for v in values {
        let t = sum + v;
        if sum.abs() >= v.abs() {
            c += (sum - t) + v;
        } else {
            c += (v - t) + sum;
        }
        sum = t;
    }
    sum + c
}
