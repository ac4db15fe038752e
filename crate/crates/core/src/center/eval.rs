//! Independent scoring of proposed centers.

use std::collections::HashMap;
use std::fmt;

use super::{assemble, colored_sets, CenterSolution, Objective, SelectionMode};
use crate::distances::{bottleneck_distance, wasserstein_distance, wasserstein_matching};
use crate::error::Result;
use crate::geometry::{check_diagrams, validate_diagram, AugPoint, Diagram, Metric, Point, EPS};
use crate::ground::{free_center, GroundCost};
use crate::matching::bottleneck_perfect_matching;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Check {
    CenterCount,
    Membership,
    Multiplicity,
    ClusterStructure,
    ObjectiveMismatch,
    DiagramValidity,
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Check::CenterCount => "center-count",
            Check::Membership => "membership",
            Check::Multiplicity => "multiplicity",
            Check::ClusterStructure => "cluster-structure",
            Check::ObjectiveMismatch => "objective-mismatch",
            Check::DiagramValidity => "diagram-validity",
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Violation {
    pub check: Check,
    pub detail: String,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.check, self.detail)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Evaluation {
    /// Objective of the centers under optimal matchings to every input.
    pub value: f64,
    pub violations: Vec<Violation>,
}

impl Evaluation {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

fn violation(check: Check, detail: impl Into<String>) -> Violation {
    Violation {
        check,
        detail: detail.into(),
    }
}

/// Scores `centers` against `sets`: the objective under optimal matchings
/// and whether the centers are admissible for `mode`.
pub fn eval_centers(
    centers: &[Point],
    sets: &[Vec<Point>],
    mode: SelectionMode,
    metric: Metric,
    objective: Objective,
) -> Result<Evaluation> {
    metric.validate()?;
    objective.validate()?;
    let centers: Vec<AugPoint> = centers.iter().map(|&p| free_center(p)).collect();
    let sets = colored_sets(sets);
    let mut violations = selection_violations(&centers, &sets, mode);
    let value = match matched_value(&centers, &sets, &metric, objective)? {
        Some(v) => v,
        None => {
            violations.push(violation(
                Check::CenterCount,
                format!("{} centers for sets of sizes {:?}", centers.len(), sizes(&sets)),
            ));
            f64::INFINITY
        }
    };
    Ok(Evaluation { value, violations })
}

/// Scores a solution: its centers as in [`eval_centers`], plus consistency of
/// its clusters, matchings and reported objective.
pub fn eval_center(solution: &CenterSolution, sets: &[Vec<Point>], metric: Metric) -> Result<Evaluation> {
    let mut eval = eval_centers(&solution.centers(), sets, solution.mode, metric, solution.objective)?;
    eval.violations
        .extend(structure_violations(solution, &colored_sets(sets), &metric));
    Ok(eval)
}

fn sizes(sets: &[Vec<AugPoint>]) -> Vec<usize> {
    sets.iter().map(Vec::len).collect()
}

/// Objective under optimal matchings, or `None` when some set has a
/// different size than the center.
pub(crate) fn matched_value<C: GroundCost + ?Sized>(
    centers: &[AugPoint],
    sets: &[Vec<AugPoint>],
    cost: &C,
    objective: Objective,
) -> Result<Option<f64>> {
    let n = centers.len();
    if sets.iter().any(|s| s.len() != n) {
        return Ok(None);
    }
    let mut value = 0.0f64;
    for s in sets {
        let c = |i: usize, j: usize| cost.cost(&centers[i], &s[j]);
        let v = match objective {
            Objective::Bottleneck => bottleneck_perfect_matching(n, n, c)?.bottleneck_cost.unwrap_or(0.0),
            Objective::Wasserstein(p) => wasserstein_matching(n, n, c, p)?.1,
        };
        value = value.max(v);
    }
    Ok(Some(value))
}

fn selection_violations(centers: &[AugPoint], sets: &[Vec<AugPoint>], mode: SelectionMode) -> Vec<Violation> {
    let pts: Vec<Point> = centers.iter().map(|c| c.pt).collect();
    let pool: Vec<Point> = sets.iter().flatten().map(|p| p.pt).collect();
    multiset_violations(&pts, &pool, mode)
}

fn multiset_violations(centers: &[Point], pool: &[Point], mode: SelectionMode) -> Vec<Violation> {
    if mode == SelectionMode::Continuous {
        return Vec::new();
    }
    let mut available: HashMap<(u64, u64), usize> = HashMap::new();
    for p in pool {
        *available.entry(p.key()).or_default() += 1;
    }
    let mut used: HashMap<(u64, u64), usize> = HashMap::new();
    let mut out = Vec::new();
    for c in centers {
        let Some(&have) = available.get(&c.key()) else {
            out.push(violation(Check::Membership, format!("center {c} is not an input point")));
            continue;
        };
        let u = used.entry(c.key()).or_default();
        *u += 1;
        if mode == SelectionMode::NoReplacement && *u == have + 1 {
            out.push(violation(
                Check::Multiplicity,
                format!("center {c} used more than its {have} occurrence(s)"),
            ));
        }
    }
    out
}

pub(crate) fn structure_violations<C: GroundCost + ?Sized>(
    solution: &CenterSolution,
    sets: &[Vec<AugPoint>],
    cost: &C,
) -> Vec<Violation> {
    let mut out = Vec::new();
    let n = solution.clusters.len();
    if solution.matchings.len() != sets.len() {
        out.push(violation(
            Check::ClusterStructure,
            format!("{} matchings for {} sets", solution.matchings.len(), sets.len()),
        ));
        return out;
    }
    for (i, (m, set)) in solution.matchings.iter().zip(sets).enumerate() {
        if set.len() != n || m.pairs.len() != n || !m.is_perfect() || !m.is_injective() {
            out.push(violation(Check::ClusterStructure, format!("matching to set {i} is not a bijection")));
            return out;
        }
        if m.pairs.iter().flatten().any(|&j| j >= set.len()) {
            out.push(violation(Check::ClusterStructure, format!("matching to set {i} is out of range")));
            return out;
        }
    }
    for (c, cl) in solution.clusters.iter().enumerate() {
        let consistent = cl.members.len() == sets.len()
            && cl
                .members
                .iter()
                .zip(&solution.matchings)
                .all(|(&k, m)| m.pairs[c] == Some(k));
        if !consistent {
            out.push(violation(
                Check::ClusterStructure,
                format!("cluster {c} disagrees with the matchings"),
            ));
            return out;
        }
        if let Some((s, k)) = cl.source {
            if sets.get(s).and_then(|set| set.get(k)).map(|p| p.pt) != Some(cl.center.pt) {
                out.push(violation(
                    Check::ClusterStructure,
                    format!("cluster {c} names a source that is not its center"),
                ));
            }
        }
    }
    let recomputed = assemble(sets, cost, solution.clusters.clone(), solution.mode, solution.objective);
    let diff = (recomputed.objective_value - solution.objective_value).abs();
    if diff > EPS * recomputed.objective_value.abs().max(1.0) {
        out.push(violation(
            Check::ObjectiveMismatch,
            format!(
                "reported {} but the clusters give {}",
                solution.objective_value, recomputed.objective_value
            ),
        ));
    }
    out
}

/// Scores a center diagram: the largest distance to the inputs, validity of
/// the diagram, and admissibility of its points for `mode`.
pub fn eval_diagram_center(
    center: &Diagram,
    diagrams: &[Diagram],
    mode: SelectionMode,
    objective: Objective,
) -> Result<Evaluation> {
    objective.validate()?;
    check_diagrams(diagrams)?;
    let mut violations: Vec<Violation> = validate_diagram(center)
        .into_iter()
        .map(|v| violation(Check::DiagramValidity, v.to_string()))
        .collect();
    if !violations.is_empty() {
        return Ok(Evaluation {
            value: f64::INFINITY,
            violations,
        });
    }
    let pool: Vec<Point> = diagrams.iter().flat_map(|d| d.points.iter().copied()).collect();
    violations.extend(multiset_violations(&center.points, &pool, mode));
    let mut value = 0.0f64;
    for d in diagrams {
        let v = match objective {
            Objective::Bottleneck => bottleneck_distance(center, d)?,
            Objective::Wasserstein(p) => wasserstein_distance(center, d, p)?,
        };
        value = value.max(v);
    }
    Ok(Evaluation { value, violations })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::center::{center2_no_replacement, center2_with_replacement};

    fn pts(v: &[(f64, f64)]) -> Vec<Point> {
        v.iter().map(|&p| p.into()).collect()
    }

    #[test]
    fn value_uses_optimal_matching() {
        let sets = vec![pts(&[(0., 0.), (4., 0.)]), pts(&[(5., 0.), (1., 0.)])];
        let e = eval_centers(&pts(&[(4., 0.), (0., 0.)]), &sets, SelectionMode::NoReplacement, Metric::L2, Objective::Bottleneck)
            .unwrap();
        assert_eq!(e.value, 1.0);
        assert!(e.is_valid());
    }

    #[test]
    fn detects_selection_violations() {
        let sets = vec![pts(&[(0., 0.), (1., 0.)]), pts(&[(2., 0.), (3., 0.)])];
        let twice = pts(&[(0., 0.), (0., 0.)]);
        let e = eval_centers(&twice, &sets, SelectionMode::NoReplacement, Metric::L2, Objective::Bottleneck).unwrap();
        assert_eq!(e.violations.len(), 1);
        assert_eq!(e.violations[0].check, Check::Multiplicity);
        let e = eval_centers(&twice, &sets, SelectionMode::WithReplacement, Metric::L2, Objective::Bottleneck).unwrap();
        assert!(e.is_valid());
        let outside = pts(&[(0.5, 0.), (0., 0.)]);
        let e = eval_centers(&outside, &sets, SelectionMode::WithReplacement, Metric::L2, Objective::Bottleneck).unwrap();
        assert_eq!(e.violations[0].check, Check::Membership);
        assert!(eval_centers(&outside, &sets, SelectionMode::Continuous, Metric::L2, Objective::Bottleneck)
            .unwrap()
            .is_valid());
        let short = eval_centers(&outside[..1], &sets, SelectionMode::Continuous, Metric::L2, Objective::Bottleneck).unwrap();
        assert_eq!(short.violations[0].check, Check::CenterCount);
    }

    #[test]
    fn solutions_pass_their_own_checks() {
        let p1 = pts(&[(0., 0.), (-1., 0.), (3., 3.)]);
        let p2 = pts(&[(1., 0.), (1., 0.), (3., 4.)]);
        for s in [
            center2_no_replacement(&p1, &p2, Metric::L2).unwrap(),
            center2_with_replacement(&p1, &p2, Metric::L2).unwrap(),
        ] {
            let e = eval_center(&s, &[p1.clone(), p2.clone()], Metric::L2).unwrap();
            assert!(e.is_valid(), "{:?}", e.violations);
            assert!((e.value - s.objective_value).abs() < 1e-12);
        }
    }

    #[test]
    fn tampered_objective_is_reported() {
        let p1 = pts(&[(0., 0.)]);
        let p2 = pts(&[(2., 0.)]);
        let mut s = center2_no_replacement(&p1, &p2, Metric::L2).unwrap();
        s.objective_value = 1.0;
        let e = eval_center(&s, &[p1, p2], Metric::L2).unwrap();
        assert_eq!(e.violations[0].check, Check::ObjectiveMismatch);
    }

    #[test]
    fn diagram_center_checks() {
        let a = Diagram::new(pts(&[(0., 4.)]));
        let b = Diagram::new(pts(&[(0., 6.)]));
        let e = eval_diagram_center(&a, &[a.clone(), b.clone()], SelectionMode::NoReplacement, Objective::Bottleneck)
            .unwrap();
        assert_eq!(e.value, 2.0);
        assert!(e.is_valid());
        let bad = Diagram::new(pts(&[(3., 1.)]));
        let e = eval_diagram_center(&bad, &[a, b], SelectionMode::Continuous, Objective::Bottleneck).unwrap();
        assert_eq!(e.violations[0].check, Check::DiagramValidity);
    }
}
