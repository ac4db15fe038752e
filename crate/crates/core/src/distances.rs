//! Bottleneck and p-Wasserstein distances between persistence diagrams.
//!
//! Both reduce to a perfect matching between equal-size augmented sets: each
//! diagram's own points followed by the diagonal projections of the other
//! diagrams' points. Two diagonal points always match at cost zero; every
//! other pair costs their L-infinity distance.

use crate::error::{Error, Result};
use crate::geometry::{check_diagrams, dist_point, AugPoint, Diagram, Metric, Point};
use crate::ground::{free_center, metric_gradient, GroundCost};
use crate::enclosing::midrange;
use crate::matching::{
    bottleneck_perfect_matching, compensated_sum, min_cost_perfect_matching, Matching, DENSE_LIMIT,
};

/// Points of one diagram plus the diagonal projections of all the others,
/// all carrying that diagram's color.
#[derive(Debug, Clone, PartialEq)]
pub struct AugmentedSet {
    pub color: usize,
    pub points: Vec<AugPoint>,
    /// For each entry of `points`, the (diagram, index) it came from.
    pub sources: Vec<(usize, usize)>,
}

impl AugmentedSet {
    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// Number of leading entries that are original (off-diagonal) points.
    pub fn original_count(&self) -> usize {
        self.points.iter().take_while(|p| !p.on_diagonal).count()
    }
}

/// Builds the augmented set of color `color` (0-based) from `diagrams`.
pub fn augment(diagrams: &[Diagram], color: usize) -> Result<AugmentedSet> {
    if color >= diagrams.len() {
        return Err(Error::ColorOutOfRange {
            index: color,
            count: diagrams.len(),
        });
    }
    let total: usize = diagrams.iter().map(Diagram::len).sum();
    let mut points = Vec::with_capacity(total);
    let mut sources = Vec::with_capacity(total);
    for (j, &p) in diagrams[color].points.iter().enumerate() {
        points.push(AugPoint::new(p, color));
        sources.push((color, j));
    }
    for (k, d) in diagrams.iter().enumerate() {
        if k == color {
            continue;
        }
        for (j, &p) in d.points.iter().enumerate() {
            points.push(AugPoint::projected(p, color));
            sources.push((k, j));
        }
    }
    Ok(AugmentedSet {
        color,
        points,
        sources,
    })
}

/// Cost rule between augmented points: zero for two diagonal points,
/// L-infinity distance otherwise.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct DiagramCost;

impl GroundCost for DiagramCost {
    fn cost(&self, a: &AugPoint, b: &AugPoint) -> f64 {
        if a.on_diagonal && b.on_diagonal {
            0.0
        } else {
            dist_point(a.pt, b.pt, Metric::LInf)
        }
    }

    fn cost_gradient(&self, center: &AugPoint, member: &AugPoint) -> [f64; 2] {
        if center.on_diagonal && member.on_diagonal {
            [0.0, 0.0]
        } else {
            metric_gradient(center.pt, member.pt, Metric::LInf)
        }
    }

    fn midpoint(&self, a: &AugPoint, b: &AugPoint) -> AugPoint {
        let pt = Point::new(0.5 * (a.pt.x + b.pt.x), 0.5 * (a.pt.y + b.pt.y));
        AugPoint {
            pt,
            color: 0,
            on_diagonal: a.on_diagonal && b.on_diagonal,
        }
    }

    fn one_center(&self, members: &[AugPoint]) -> (AugPoint, f64) {
        let all: Vec<Point> = members.iter().map(|m| m.pt).collect();
        let Some(box_center) = midrange(&all) else {
            return (free_center(Point::default()), 0.0);
        };
        let off: Vec<&AugPoint> = members.iter().filter(|m| !m.on_diagonal).collect();
        if off.is_empty() {
            let c = AugPoint {
                pt: box_center,
                color: 0,
                on_diagonal: true,
            };
            return (c, 0.0);
        }
        let free = free_center(box_center);
        let free_r = self.radius(&free, members);

        // best point (t, t): midrange of every coordinate of the off members
        let lo = off.iter().map(|m| m.pt.x.min(m.pt.y)).fold(f64::INFINITY, f64::min);
        let hi = off.iter().map(|m| m.pt.x.max(m.pt.y)).fold(f64::NEG_INFINITY, f64::max);
        let t = 0.5 * (lo + hi);
        let diag = AugPoint {
            pt: Point::new(t, t),
            color: 0,
            on_diagonal: true,
        };
        let diag_r = self.radius(&diag, members);
        if diag_r < free_r {
            (diag, diag_r)
        } else {
            (free, free_r)
        }
    }

    fn center_placements(&self, members: &[AugPoint]) -> Vec<bool> {
        if members.iter().all(|m| m.on_diagonal) {
            vec![true]
        } else {
            vec![false, true]
        }
    }
}

fn augmented_pair(a: &Diagram, b: &Diagram) -> (Vec<AugPoint>, Vec<AugPoint>) {
    let pair = [a.clone(), b.clone()];
    let left = augment(&pair, 0).expect("two diagrams").points;
    let right = augment(&pair, 1).expect("two diagrams").points;
    (left, right)
}

/// Bottleneck distance between two diagrams (sizes may differ).
pub fn bottleneck_distance(a: &Diagram, b: &Diagram) -> Result<f64> {
    check_diagrams(&[a.clone(), b.clone()])?;
    let (left, right) = augmented_pair(a, b);
    let m = bottleneck_perfect_matching(left.len(), right.len(), |i, j| {
        DiagramCost.cost(&left[i], &right[j])
    })?;
    Ok(m.bottleneck_cost.unwrap_or(0.0))
}

/// p-Wasserstein distance between two diagrams, `1 <= p < inf`.
pub fn wasserstein_distance(a: &Diagram, b: &Diagram, p: f64) -> Result<f64> {
    check_exponent(p)?;
    check_diagrams(&[a.clone(), b.clone()])?;
    let (left, right) = augmented_pair(a, b);
    let (_, value) = wasserstein_matching(left.len(), right.len(), |i, j| {
        DiagramCost.cost(&left[i], &right[j])
    }, p)?;
    Ok(value)
}

pub(crate) fn check_exponent(p: f64) -> Result<()> {
    if p.is_finite() && p >= 1.0 {
        Ok(())
    } else {
        Err(Error::InvalidParameter(format!(
            "Wasserstein exponent must be finite and >= 1, got {p}"
        )))
    }
}

/// Min-sum perfect matching under costs raised to the `p`-th power.
///
/// Costs are divided by the largest pairwise cost before exponentiation so
/// that large `p` neither overflows nor flushes to zero; the matched terms are
/// summed with compensation. Returns the matching (with `bottleneck_cost` and
/// `total_cost = sum c^p` filled in) and `(sum c^p)^(1/p)`.
pub fn wasserstein_matching<F>(left: usize, right: usize, cost: F, p: f64) -> Result<(Matching, f64)>
where
    F: Fn(usize, usize) -> f64,
{
    check_exponent(p)?;
    if left != right {
        return Err(Error::SizeMismatch { left, right });
    }
    let n = left;
    let scale = if n <= DENSE_LIMIT {
        let mut s = 0.0f64;
        for i in 0..n {
            for j in 0..n {
                s = s.max(cost(i, j));
            }
        }
        s
    } else {
        1.0
    };
    if n == 0 || scale == 0.0 {
        let mut m = Matching::from_assignment((0..n).collect());
        m.bottleneck_cost = Some(0.0);
        m.total_cost = Some(0.0);
        return Ok((m, 0.0));
    }
    let mut m = min_cost_perfect_matching(n, n, |i, j| (cost(i, j) / scale).powf(p))?;
    let assignment = m.assignment().expect("perfect");
    let chosen: Vec<f64> = assignment.iter().enumerate().map(|(i, &j)| cost(i, j)).collect();
    let normalized = compensated_sum(chosen.iter().map(|c| (c / scale).powf(p)));
    let value = scale * normalized.powf(1.0 / p);
    m.bottleneck_cost = Some(chosen.iter().copied().fold(0.0, f64::max));
    m.total_cost = Some(normalized * scale.powf(p));
    Ok((m, value))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dgm(pts: &[(f64, f64)]) -> Diagram {
        pts.iter().map(|&p| Point::from(p)).collect()
    }

    #[test]
    fn augment_two_diagrams() {
        let d = [dgm(&[(0., 2.)]), dgm(&[(0., 4.)])];
        let a = augment(&d, 0).unwrap();
        assert_eq!(a.points.len(), 2);
        assert_eq!(a.points[0], AugPoint::new(Point::new(0., 2.), 0));
        assert_eq!(
            a.points[1],
            AugPoint {
                pt: Point::new(2., 2.),
                color: 0,
                on_diagonal: true
            }
        );
        assert_eq!(a.sources, vec![(0, 0), (1, 0)]);
        assert_eq!(a.original_count(), 1);
    }

    #[test]
    fn augment_size_identity_and_range() {
        let two = dgm(&[(0., 1.), (1., 3.)]);
        let d = [two.clone(), two.clone(), two];
        let a = augment(&d, 1).unwrap();
        assert_eq!(a.len(), 6);
        assert!(a.points[2..].iter().all(|p| p.on_diagonal && p.color == 1));
        assert_eq!(
            augment(&d, 3),
            Err(Error::ColorOutOfRange { index: 3, count: 3 })
        );
    }

    #[test]
    fn augment_with_empty_partner() {
        let d = [dgm(&[(0., 2.), (1., 5.)]), Diagram::default()];
        let a = augment(&d, 0).unwrap();
        assert_eq!(a.points.iter().map(|p| p.pt).collect::<Vec<_>>(), d[0].points);
    }

    #[test]
    fn bottleneck_examples() {
        assert_eq!(bottleneck_distance(&dgm(&[(1., 3.)]), &Diagram::default()).unwrap(), 1.0);
        let a = dgm(&[(0., 2.), (5., 9.)]);
        assert_eq!(bottleneck_distance(&a, &a).unwrap(), 0.0);
        // direct 8, through the diagonal max(1, 5)
        assert_eq!(bottleneck_distance(&dgm(&[(0., 2.)]), &dgm(&[(0., 10.)])).unwrap(), 5.0);
        assert_eq!(bottleneck_distance(&Diagram::default(), &Diagram::default()).unwrap(), 0.0);
    }

    #[test]
    fn wasserstein_examples() {
        let a = dgm(&[(0., 2.)]);
        let b = dgm(&[(0., 10.)]);
        assert_eq!(wasserstein_distance(&a, &b, 1.0).unwrap(), 6.0);
        let w2 = wasserstein_distance(&a, &b, 2.0).unwrap();
        assert!((w2 - 26f64.sqrt()).abs() < 1e-12);
        for p in [1.0, 2.0, 7.5] {
            assert_eq!(wasserstein_distance(&b, &b, p).unwrap(), 0.0);
        }
    }

    #[test]
    fn invalid_inputs() {
        let a = dgm(&[(0., 2.)]);
        assert!(wasserstein_distance(&a, &a, 0.5).is_err());
        assert!(wasserstein_distance(&a, &a, f64::INFINITY).is_err());
        let bad = dgm(&[(3., 1.)]);
        assert!(matches!(
            bottleneck_distance(&a, &bad),
            Err(Error::InvalidDiagram { diagram: 1, .. })
        ));
    }

    #[test]
    fn large_exponent_stays_finite() {
        let a = dgm(&[(0., 1e3), (5., 400.)]);
        let b = dgm(&[(1., 900.)]);
        let w = wasserstein_distance(&a, &b, 200.0).unwrap();
        let db = bottleneck_distance(&a, &b).unwrap();
        assert!(w.is_finite() && w >= db - 1e-9 && w <= db * 1.05, "{w} {db}");
    }

    #[test]
    fn diagram_cost_one_center() {
        let on = |x: f64| AugPoint { pt: Point::new(x, x), color: 0, on_diagonal: true };
        let off = |x: f64, y: f64| AugPoint::new(Point::new(x, y), 0);

        let (c, r) = DiagramCost.one_center(&[on(1.), on(7.)]);
        assert!(c.on_diagonal);
        assert_eq!(r, 0.0);

        // near pair: the free midrange wins
        let (c, r) = DiagramCost.one_center(&[off(0., 10.), on(5.)]);
        assert!(!c.on_diagonal);
        assert_eq!(r, 2.5);

        // far diagonal member: a diagonal center is better
        let (c, r) = DiagramCost.one_center(&[off(0., 10.), on(100.)]);
        assert!(c.on_diagonal);
        assert_eq!(r, 5.0);
    }
}
