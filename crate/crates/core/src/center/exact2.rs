//! Exact centers for two sets of equal size.

use super::{assemble, colored_sets, prefer, CenterSolution, Cluster, Objective, SelectionMode};
use crate::error::{Error, Result};
use crate::geometry::{AugPoint, Metric, Point};
use crate::ground::GroundCost;
use crate::matching::{bottleneck_perfect_matching, max_flow_unit, FlowNetwork};

/// Optimal center drawn from the multiset `p1 ∪ p2` without reuse.
pub fn center2_no_replacement(p1: &[Point], p2: &[Point], metric: Metric) -> Result<CenterSolution> {
    metric.validate()?;
    let sets = colored_sets(&[p1.to_vec(), p2.to_vec()]);
    exact2_no_replacement(&sets[0], &sets[1], &metric)
}

/// Optimal center drawn from the set `p1 ∪ p2` with reuse.
pub fn center2_with_replacement(p1: &[Point], p2: &[Point], metric: Metric) -> Result<CenterSolution> {
    metric.validate()?;
    let sets = colored_sets(&[p1.to_vec(), p2.to_vec()]);
    exact2_with_replacement(&sets[0], &sets[1], &metric)
}

/// Optimal unrestricted center: midpoints of a bottleneck matching.
pub fn center2_continuous(p1: &[Point], p2: &[Point], metric: Metric) -> Result<CenterSolution> {
    metric.validate()?;
    let sets = colored_sets(&[p1.to_vec(), p2.to_vec()]);
    exact2_continuous(&sets[0], &sets[1], &metric)
}

fn check_pair(a: &[AugPoint], b: &[AugPoint]) -> Result<usize> {
    if a.len() != b.len() {
        return Err(Error::SizeMismatch {
            left: a.len(),
            right: b.len(),
        });
    }
    if a.is_empty() {
        return Err(Error::EmptyInput);
    }
    Ok(a.len())
}

/// Layout of the four-layer network: source, sink, then `p1` (n nodes), the
/// candidate centers twice (2n nodes each), then `p2` (n nodes).
struct Layers {
    n: usize,
}

impl Layers {
    const SOURCE: usize = 0;
    const SINK: usize = 1;

    fn first(&self, i: usize) -> usize {
        2 + i
    }
    fn center_in(&self, c: usize) -> usize {
        2 + self.n + c
    }
    fn center_out(&self, c: usize) -> usize {
        2 + 3 * self.n + c
    }
    fn second(&self, j: usize) -> usize {
        2 + 5 * self.n + j
    }
    fn node_count(&self) -> usize {
        2 + 6 * self.n
    }
}

struct NetworkArcs {
    net: FlowNetwork,
    /// arc index -> (first-set index, candidate) for layer 1 -> 2 arcs
    into_center: Vec<(usize, usize, usize)>,
    /// arc index -> (candidate, second-set index) for layer 3 -> 4 arcs
    out_of_center: Vec<(usize, usize, usize)>,
}

fn build_network(to_center: &[Vec<f64>], from_center: &[Vec<f64>], r: f64) -> NetworkArcs {
    let n = to_center.len();
    let layers = Layers { n };
    let mut net = FlowNetwork::new(layers.node_count(), Layers::SOURCE, Layers::SINK);
    let mut into_center = Vec::new();
    let mut out_of_center = Vec::new();
    for i in 0..n {
        net.add_arc(Layers::SOURCE, layers.first(i));
    }
    for (i, row) in to_center.iter().enumerate() {
        for (c, &d) in row.iter().enumerate() {
            if d <= r {
                let a = net.add_arc(layers.first(i), layers.center_in(c));
                into_center.push((a, i, c));
            }
        }
    }
    for c in 0..2 * n {
        net.add_arc(layers.center_in(c), layers.center_out(c));
    }
    for (c, row) in from_center.iter().enumerate() {
        for (j, &d) in row.iter().enumerate() {
            if d <= r {
                let a = net.add_arc(layers.center_out(c), layers.second(j));
                out_of_center.push((a, c, j));
            }
        }
    }
    for j in 0..n {
        net.add_arc(layers.second(j), Layers::SINK);
    }
    NetworkArcs {
        net,
        into_center,
        out_of_center,
    }
}

fn cost_tables<C: GroundCost + ?Sized>(
    a: &[AugPoint],
    b: &[AugPoint],
    cost: &C,
) -> (Vec<AugPoint>, Vec<Vec<f64>>, Vec<Vec<f64>>) {
    let candidates: Vec<AugPoint> = a.iter().chain(b).copied().collect();
    let to_center = a
        .iter()
        .map(|p| candidates.iter().map(|c| cost.cost(c, p)).collect())
        .collect();
    let from_center = candidates
        .iter()
        .map(|c| b.iter().map(|q| cost.cost(c, q)).collect())
        .collect();
    (candidates, to_center, from_center)
}

/// The four-layer unit-capacity network deciding whether radius `r` is
/// feasible for the no-replacement center of `p1` and `p2`.
pub fn no_replacement_network(p1: &[Point], p2: &[Point], metric: Metric, r: f64) -> Result<FlowNetwork> {
    let sets = colored_sets(&[p1.to_vec(), p2.to_vec()]);
    check_pair(&sets[0], &sets[1])?;
    let (_, to_center, from_center) = cost_tables(&sets[0], &sets[1], &metric);
    Ok(build_network(&to_center, &from_center, r).net)
}

pub(crate) fn exact2_no_replacement<C: GroundCost + ?Sized>(
    a: &[AugPoint],
    b: &[AugPoint],
    cost: &C,
) -> Result<CenterSolution> {
    let n = check_pair(a, b)?;
    let (candidates, to_center, from_center) = cost_tables(a, b, cost);

    let mut radii: Vec<f64> = to_center.iter().chain(&from_center).flatten().copied().collect();
    radii.sort_unstable_by(f64::total_cmp);
    radii.dedup();

    let solve = |r: f64| -> Option<Vec<Cluster>> {
        let arcs = build_network(&to_center, &from_center, r);
        let flow = max_flow_unit(&arcs.net).expect("well-formed network");
        if flow.value < n {
            return None;
        }
        let mut used = vec![false; arcs.net.arcs.len()];
        for &i in &flow.used_arcs {
            used[i] = true;
        }
        let mut center_of = vec![usize::MAX; n];
        for &(arc, i, c) in &arcs.into_center {
            if used[arc] {
                center_of[i] = c;
            }
        }
        let mut partner = vec![usize::MAX; 2 * n];
        for &(arc, c, j) in &arcs.out_of_center {
            if used[arc] {
                partner[c] = j;
            }
        }
        Some(
            (0..n)
                .map(|i| {
                    let c = center_of[i];
                    Cluster {
                        center: candidates[c],
                        source: Some(if c < n { (0, c) } else { (1, c - n) }),
                        members: vec![i, partner[c]],
                    }
                })
                .collect(),
        )
    };

    let (mut lo, mut hi) = (0, radii.len() - 1);
    let mut best = None;
    while lo < hi {
        let mid = lo + (hi - lo) / 2;
        match solve(radii[mid]) {
            Some(c) => {
                best = Some(c);
                hi = mid;
            }
            None => lo = mid + 1,
        }
    }
    let clusters = best.unwrap_or_else(|| solve(radii[hi]).expect("largest radius is feasible"));
    let sets = [a.to_vec(), b.to_vec()];
    Ok(assemble(&sets, cost, clusters, SelectionMode::NoReplacement, Objective::Bottleneck))
}

pub(crate) fn exact2_with_replacement<C: GroundCost + ?Sized>(
    a: &[AugPoint],
    b: &[AugPoint],
    cost: &C,
) -> Result<CenterSolution> {
    let n = check_pair(a, b)?;
    let (candidates, to_center, from_center) = cost_tables(a, b, cost);

    // smallest radius at which some candidate covers both a_i and b_j
    let mut pair_radius = vec![vec![0.0; n]; n];
    let mut witness = vec![vec![0usize; n]; n];
    for i in 0..n {
        for j in 0..n {
            let mut best = 0;
            let mut best_r = f64::INFINITY;
            for w in 0..candidates.len() {
                let r = to_center[i][w].max(from_center[w][j]);
                if r < best_r || (r == best_r && prefer(&candidates[w], &candidates[best]).is_lt()) {
                    best = w;
                    best_r = r;
                }
            }
            pair_radius[i][j] = best_r;
            witness[i][j] = best;
        }
    }
    let m = bottleneck_perfect_matching(n, n, |i, j| pair_radius[i][j])?;
    let clusters = m
        .iter_pairs()
        .map(|(i, j)| {
            let w = witness[i][j];
            Cluster {
                center: candidates[w],
                source: Some(if w < n { (0, w) } else { (1, w - n) }),
                members: vec![i, j],
            }
        })
        .collect();
    let sets = [a.to_vec(), b.to_vec()];
    Ok(assemble(&sets, cost, clusters, SelectionMode::WithReplacement, Objective::Bottleneck))
}

pub(crate) fn exact2_continuous<C: GroundCost + ?Sized>(
    a: &[AugPoint],
    b: &[AugPoint],
    cost: &C,
) -> Result<CenterSolution> {
    if a.len() != b.len() {
        return Err(Error::SizeMismatch {
            left: a.len(),
            right: b.len(),
        });
    }
    let m = bottleneck_perfect_matching(a.len(), b.len(), |i, j| cost.cost(&a[i], &b[j]))?;
    let clusters = m
        .iter_pairs()
        .map(|(i, j)| Cluster {
            center: cost.midpoint(&a[i], &b[j]),
            source: None,
            members: vec![i, j],
        })
        .collect();
    let sets = [a.to_vec(), b.to_vec()];
    let mut sol = assemble(&sets, cost, clusters, SelectionMode::Continuous, Objective::Bottleneck);
    sol.objective_value = 0.5 * m.bottleneck_cost.unwrap_or(0.0);
    Ok(sol)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pts(v: &[(f64, f64)]) -> Vec<Point> {
        v.iter().map(|&p| p.into()).collect()
    }

    #[test]
    fn no_replacement_single_pair() {
        let s = center2_no_replacement(&pts(&[(0., 0.)]), &pts(&[(2., 0.)]), Metric::L2).unwrap();
        assert_eq!(s.objective_value, 2.0);
        let c = s.centers()[0];
        assert!(c == Point::new(0., 0.) || c == Point::new(2., 0.));
    }

    #[test]
    fn no_replacement_identity() {
        let p = pts(&[(0., 0.), (3., 1.), (3., 1.)]);
        let s = center2_no_replacement(&p, &p, Metric::L2).unwrap();
        assert_eq!(s.objective_value, 0.0);
        let mut c = s.centers();
        c.sort_by(|a, b| a.x.total_cmp(&b.x));
        assert_eq!(c, p);
    }

    #[test]
    fn no_replacement_two_clusters() {
        let s = center2_no_replacement(
            &pts(&[(0., 0.), (4., 0.)]),
            &pts(&[(1., 0.), (5., 0.)]),
            Metric::L2,
        )
        .unwrap();
        assert_eq!(s.objective_value, 1.0);
        let mut c = s.centers();
        c.sort_by(|a, b| a.x.total_cmp(&b.x));
        assert!(
            c == pts(&[(0., 0.), (4., 0.)]) || c == pts(&[(1., 0.), (5., 0.)]),
            "{c:?}"
        );
    }

    #[test]
    fn network_for_single_pair_at_radius_two() {
        let net = no_replacement_network(&pts(&[(0., 0.)]), &pts(&[(2., 0.)]), Metric::L2, 2.0).unwrap();
        // s, t, one first-set node, two candidates in and out, one second-set node
        assert_eq!(net.node_count, 8);
        let flow = max_flow_unit(&net).unwrap();
        assert_eq!(flow.value, 1);
        let below = no_replacement_network(&pts(&[(0., 0.)]), &pts(&[(2., 0.)]), Metric::L2, 1.9).unwrap();
        assert_eq!(max_flow_unit(&below).unwrap().value, 0);
    }

    #[test]
    fn with_replacement_needs_input_witness() {
        let s = center2_with_replacement(&pts(&[(0., 0.)]), &pts(&[(2., 0.)]), Metric::L2).unwrap();
        assert_eq!(s.objective_value, 2.0);
        // lexicographically smallest witness
        assert_eq!(s.centers(), pts(&[(0., 0.)]));
        assert_eq!(s.clusters[0].source, Some((0, 0)));
    }

    #[test]
    fn with_replacement_uses_outside_witness() {
        // (0,0) covers the far pair; the near pair is covered by its own point
        let p1 = pts(&[(0., 0.), (-1., 0.)]);
        let p2 = pts(&[(1., 0.), (1., 0.)]);
        let s = center2_with_replacement(&p1, &p2, Metric::L2).unwrap();
        assert_eq!(s.objective_value, 1.0);
        let far = s.clusters.iter().find(|c| c.members[0] == 1).unwrap();
        assert_eq!(far.center.pt, Point::new(0., 0.));
        let nr = center2_no_replacement(&p1, &p2, Metric::L2).unwrap();
        assert_eq!(nr.objective_value, 1.0);
    }

    #[test]
    fn continuous_midpoints() {
        let s = center2_continuous(&pts(&[(0., 0.)]), &pts(&[(2., 0.)]), Metric::L2).unwrap();
        assert_eq!(s.centers(), pts(&[(1., 0.)]));
        assert_eq!(s.objective_value, 1.0);

        let s = center2_continuous(
            &pts(&[(0., 0.), (1., 0.)]),
            &pts(&[(0., 1.), (2., 0.)]),
            Metric::LInf,
        )
        .unwrap();
        assert_eq!(s.objective_value, 0.5);
        assert_eq!(s.centers(), pts(&[(0., 0.5), (1.5, 0.)]));
    }

    #[test]
    fn size_and_empty_errors() {
        let one = pts(&[(0., 0.)]);
        assert!(matches!(
            center2_no_replacement(&one, &[], Metric::L2),
            Err(Error::SizeMismatch { .. })
        ));
        assert_eq!(center2_with_replacement(&[], &[], Metric::L2), Err(Error::EmptyInput));
        assert!(center2_continuous(&one, &[], Metric::L2).is_err());
        assert!(center2_continuous(&[], &[], Metric::L2).unwrap().clusters.is_empty());
    }
}
