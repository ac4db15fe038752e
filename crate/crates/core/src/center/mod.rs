//! Center point sets and center persistence diagrams.
//!
//! Every algorithm works on colored sets (`&[Vec<AugPoint>]`) under a
//! [`GroundCost`]; the public point-set entry points wrap plain points with a
//! [`Metric`], while [`center_diagrams`] runs the same code on augmented
//! diagram sets under [`crate::distances::DiagramCost`].

mod approx;
mod brute;
mod diagrams;
mod eval;
mod exact2;

pub use approx::approx_center;
pub use brute::{brute_force_center, brute_force_feasible, clustering_count, BRUTE_FORCE_LIMIT};
pub use diagrams::{center_diagrams, Algorithm, DiagramCenter};
pub use eval::{eval_center, eval_centers, eval_diagram_center, Check, Evaluation, Violation};
pub use exact2::{
    center2_continuous, center2_no_replacement, center2_with_replacement, no_replacement_network,
};

pub(crate) use approx::approx_with;
pub(crate) use brute::brute_force_with;
pub(crate) use exact2::{exact2_continuous, exact2_no_replacement, exact2_with_replacement};

use std::fmt;
use std::str::FromStr;

use crate::distances::check_exponent;
use crate::error::{Error, Result};
use crate::geometry::{AugPoint, Point};
use crate::ground::GroundCost;
use crate::matching::{compensated_sum, Matching};

/// Where center points may come from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SelectionMode {
    /// From the multiset union of the inputs, each point used at most once.
    NoReplacement,
    /// From the set union of the inputs, reuse allowed.
    WithReplacement,
    /// Anywhere in the plane.
    Continuous,
}

impl SelectionMode {
    pub const ALL: [SelectionMode; 3] = [
        SelectionMode::NoReplacement,
        SelectionMode::WithReplacement,
        SelectionMode::Continuous,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            SelectionMode::NoReplacement => "no-replacement",
            SelectionMode::WithReplacement => "replacement",
            SelectionMode::Continuous => "continuous",
        }
    }
}

impl fmt::Display for SelectionMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for SelectionMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        SelectionMode::ALL
            .into_iter()
            .find(|m| m.name() == s)
            .ok_or_else(|| Error::InvalidParameter(format!("unknown mode '{s}'")))
    }
}

/// What is minimized: the largest per-set bottleneck distance, or the
/// largest per-set p-Wasserstein distance.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Objective {
    Bottleneck,
    Wasserstein(f64),
}

impl Objective {
    pub fn validate(&self) -> Result<()> {
        match *self {
            Objective::Bottleneck => Ok(()),
            Objective::Wasserstein(p) => check_exponent(p),
        }
    }

    /// Combines the per-cluster costs seen by one input set.
    pub fn aggregate(&self, costs: &[f64]) -> f64 {
        match *self {
            Objective::Bottleneck => costs.iter().copied().fold(0.0, f64::max),
            Objective::Wasserstein(p) => p_norm(costs, p),
        }
    }
}

impl fmt::Display for Objective {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Objective::Bottleneck => f.write_str("bottleneck"),
            Objective::Wasserstein(p) => write!(f, "wasserstein(p={p})"),
        }
    }
}

/// `(sum c^p)^(1/p)` with scaling by the largest term.
pub(crate) fn p_norm(costs: &[f64], p: f64) -> f64 {
    let scale = costs.iter().copied().fold(0.0, f64::max);
    if scale == 0.0 {
        return 0.0;
    }
    scale * compensated_sum(costs.iter().map(|c| (c / scale).powf(p))).powf(1.0 / p)
}

/// One center with the input points it covers.
#[derive(Debug, Clone, PartialEq)]
pub struct Cluster {
    pub center: AugPoint,
    /// `(set, index)` of the input point serving as center, for discrete
    /// selections.
    pub source: Option<(usize, usize)>,
    /// One index per input set.
    pub members: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CenterSolution {
    pub clusters: Vec<Cluster>,
    /// Per input set: cluster index -> member index.
    pub matchings: Vec<Matching>,
    pub objective_value: f64,
    pub mode: SelectionMode,
    pub objective: Objective,
}

impl CenterSolution {
    pub fn centers(&self) -> Vec<Point> {
        self.clusters.iter().map(|c| c.center.pt).collect()
    }

    pub fn center_points(&self) -> Vec<AugPoint> {
        self.clusters.iter().map(|c| c.center).collect()
    }
}

/// Builds the per-set matchings and the objective from a clustering.
/// Clusters are put in canonical order (by their first-set member).
pub(crate) fn assemble<C: GroundCost + ?Sized>(
    sets: &[Vec<AugPoint>],
    cost: &C,
    mut clusters: Vec<Cluster>,
    mode: SelectionMode,
    objective: Objective,
) -> CenterSolution {
    clusters.sort_by_key(|c| c.members.first().copied());
    let mut matchings = Vec::with_capacity(sets.len());
    let mut value = 0.0f64;
    for (i, set) in sets.iter().enumerate() {
        let costs: Vec<f64> = clusters
            .iter()
            .map(|c| cost.cost(&c.center, &set[c.members[i]]))
            .collect();
        let mut m = Matching::from_assignment(clusters.iter().map(|c| c.members[i]).collect());
        m.bottleneck_cost = Some(costs.iter().copied().fold(0.0, f64::max));
        if let Objective::Wasserstein(p) = objective {
            m.total_cost = Some(compensated_sum(costs.iter().map(|c| c.powf(p))));
        }
        value = value.max(objective.aggregate(&costs));
        matchings.push(m);
    }
    CenterSolution {
        clusters,
        matchings,
        objective_value: value,
        mode,
        objective,
    }
}

pub(crate) fn colored_sets(sets: &[Vec<Point>]) -> Vec<Vec<AugPoint>> {
    sets.iter()
        .enumerate()
        .map(|(c, s)| AugPoint::colored(s, c))
        .collect()
}

pub(crate) fn check_equal_sizes<T>(sets: &[Vec<T>]) -> Result<usize> {
    let n = sets.first().map_or(0, Vec::len);
    if let Some(s) = sets.iter().find(|s| s.len() != n) {
        return Err(Error::SizeMismatch {
            left: n,
            right: s.len(),
        });
    }
    Ok(n)
}

/// Deterministic tie-break between equally good discrete centers: smaller
/// coordinates first, then off-diagonal before diagonal.
pub(crate) fn prefer(a: &AugPoint, b: &AugPoint) -> std::cmp::Ordering {
    a.pt.x
        .total_cmp(&b.pt.x)
        .then(a.pt.y.total_cmp(&b.pt.y))
        .then(a.on_diagonal.cmp(&b.on_diagonal))
}
