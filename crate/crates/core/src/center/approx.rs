//! Factor-2 approximation for any number of sets: the points of the first
//! set are the centers, each other set is matched to them optimally.

use std::thread;

use super::{assemble, check_equal_sizes, colored_sets, CenterSolution, Cluster, Objective, SelectionMode};
use crate::distances::wasserstein_matching;
use crate::error::{Error, Result};
use crate::geometry::{AugPoint, Metric, Point};
use crate::ground::GroundCost;
use crate::matching::{bottleneck_perfect_matching, Matching};

/// Approximate center of `sets` (at least two, equal sizes). The returned
/// centers are the points of `sets[0]`, so the solution is valid in every
/// selection mode; `mode` is only recorded.
pub fn approx_center(
    sets: &[Vec<Point>],
    mode: SelectionMode,
    metric: Metric,
    objective: Objective,
) -> Result<CenterSolution> {
    metric.validate()?;
    approx_with(&colored_sets(sets), &metric, mode, objective)
}

pub(crate) fn approx_with<C: GroundCost + ?Sized>(
    sets: &[Vec<AugPoint>],
    cost: &C,
    mode: SelectionMode,
    objective: Objective,
) -> Result<CenterSolution> {
    objective.validate()?;
    if sets.len() < 2 {
        return Err(Error::InvalidParameter(format!(
            "need at least two sets, got {}",
            sets.len()
        )));
    }
    let n = check_equal_sizes(sets)?;
    let centers = &sets[0];

    let match_one = |other: &Vec<AugPoint>| -> Result<Matching> {
        let c = |i: usize, j: usize| cost.cost(&centers[i], &other[j]);
        match objective {
            Objective::Bottleneck => bottleneck_perfect_matching(n, n, c),
            Objective::Wasserstein(p) => wasserstein_matching(n, n, c, p).map(|(m, _)| m),
        }
    };
    let matchings: Vec<Result<Matching>> = thread::scope(|s| {
        let handles: Vec<_> = sets[1..]
            .iter()
            .map(|other| s.spawn(move || match_one(other)))
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("matching thread panicked"))
            .collect()
    });
    let assignments = matchings
        .into_iter()
        .map(|m| m.map(|m| m.assignment().expect("perfect")))
        .collect::<Result<Vec<_>>>()?;

    let clusters = (0..n)
        .map(|j| Cluster {
            center: centers[j],
            source: Some((0, j)),
            members: std::iter::once(j)
                .chain(assignments.iter().map(|a| a[j]))
                .collect(),
        })
        .collect();
    Ok(assemble(sets, cost, clusters, mode, objective))
}
