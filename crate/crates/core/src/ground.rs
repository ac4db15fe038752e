//! Ground costs between colored points. Point-set problems use a plain
//! [`Metric`]; diagram problems use the diagonal-aware rule in
//! [`crate::distances::DiagramCost`].

use crate::enclosing::{l1_center, midrange, min_enclosing_circle, minimize_convex};
use crate::geometry::{dist_point, AugPoint, Metric, Point};

/// Cost model used by the center algorithms. Besides pairwise costs it knows
/// how to place continuous centers.
pub trait GroundCost: Sync {
    fn cost(&self, a: &AugPoint, b: &AugPoint) -> f64;

    /// A subgradient of `cost(center, member)` with respect to the center's
    /// coordinates.
    fn cost_gradient(&self, center: &AugPoint, member: &AugPoint) -> [f64; 2];

    /// Point at cost `cost(a, b) / 2` from both ends.
    fn midpoint(&self, a: &AugPoint, b: &AugPoint) -> AugPoint;

    /// Exact continuous 1-center of `members` and its radius.
    fn one_center(&self, members: &[AugPoint]) -> (AugPoint, f64);

    /// Center placements worth trying for a cluster in continuous search:
    /// `false` is a free point, `true` a point constrained to the diagonal.
    fn center_placements(&self, members: &[AugPoint]) -> Vec<bool> {
        let _ = members;
        vec![false]
    }

    fn radius(&self, center: &AugPoint, members: &[AugPoint]) -> f64 {
        members.iter().map(|m| self.cost(center, m)).fold(0.0, f64::max)
    }
}

pub(crate) fn free_center(pt: Point) -> AugPoint {
    AugPoint::new(pt, 0)
}

/// Subgradient of `dist(c, m)` with respect to `c`.
pub(crate) fn metric_gradient(c: Point, m: Point, metric: Metric) -> [f64; 2] {
    let dx = c.x - m.x;
    let dy = c.y - m.y;
    match metric.normalized() {
        Metric::L2 => {
            let d = dx.hypot(dy);
            if d == 0.0 {
                [0.0, 0.0]
            } else {
                [dx / d, dy / d]
            }
        }
        Metric::LInf => {
            if dx == 0.0 && dy == 0.0 {
                [0.0, 0.0]
            } else if dx.abs() >= dy.abs() {
                [dx.signum(), 0.0]
            } else {
                [0.0, dy.signum()]
            }
        }
        Metric::Lp(p) => {
            let d = dist_point(c, m, metric);
            if d == 0.0 {
                return [0.0, 0.0];
            }
            let gx = dx.signum() * (dx.abs() / d).powf(p - 1.0);
            let gy = dy.signum() * (dy.abs() / d).powf(p - 1.0);
            [gx, gy]
        }
    }
}

impl GroundCost for Metric {
    fn cost(&self, a: &AugPoint, b: &AugPoint) -> f64 {
        dist_point(a.pt, b.pt, *self)
    }

    fn cost_gradient(&self, center: &AugPoint, member: &AugPoint) -> [f64; 2] {
        metric_gradient(center.pt, member.pt, *self)
    }

    fn midpoint(&self, a: &AugPoint, b: &AugPoint) -> AugPoint {
        free_center(Point::new(0.5 * (a.pt.x + b.pt.x), 0.5 * (a.pt.y + b.pt.y)))
    }

    fn one_center(&self, members: &[AugPoint]) -> (AugPoint, f64) {
        let pts: Vec<Point> = members.iter().map(|m| m.pt).collect();
        if pts.is_empty() {
            return (free_center(Point::default()), 0.0);
        }
        let center = match self.normalized() {
            Metric::L2 => min_enclosing_circle(&pts).map(|c| c.center),
            Metric::LInf => midrange(&pts),
            Metric::Lp(p) if p == 1.0 => l1_center(&pts),
            Metric::Lp(_) => Some(lp_center(&pts, *self)),
        }
        .expect("non-empty");
        let c = free_center(center);
        (c, self.radius(&c, members))
    }
}

fn lp_center(pts: &[Point], metric: Metric) -> Point {
    let start = midrange(pts).expect("non-empty");
    let spread = pts
        .iter()
        .map(|p| dist_point(*p, start, Metric::L2))
        .fold(0.0, f64::max);
    if spread == 0.0 {
        return start;
    }
    let (x, _) = minimize_convex(&[start.x, start.y], 1.01 * spread, 1e-13 * spread, 4000, |x, g| {
        let c = Point::new(x[0], x[1]);
        let (i, v) = pts
            .iter()
            .map(|&p| dist_point(c, p, metric))
            .enumerate()
            .max_by(|a, b| a.1.total_cmp(&b.1))
            .unwrap();
        let d = metric_gradient(c, pts[i], metric);
        g.copy_from_slice(&d);
        v
    });
    Point::new(x[0], x[1])
}

#[cfg(test)]
mod tests {
    use super::*;

    fn aug(x: f64, y: f64) -> AugPoint {
        AugPoint::new(Point::new(x, y), 0)
    }

    #[test]
    fn one_centers_for_each_metric() {
        let tri = [aug(0., 0.), aug(1., 0.), aug(0., 1.)];
        let (c, r) = Metric::LInf.one_center(&tri);
        assert_eq!(c.pt, Point::new(0.5, 0.5));
        assert_eq!(r, 0.5);

        let (_, r2) = Metric::L2.one_center(&tri);
        assert!((r2 - 0.5f64.sqrt()).abs() < 1e-12);

        let (_, r1) = Metric::Lp(1.0).one_center(&tri);
        assert!((r1 - 1.0).abs() < 1e-12);

        // L3 radius sits between L-infinity and L2
        let (_, r3) = Metric::Lp(3.0).one_center(&tri);
        assert!(r3 < r2 + 1e-12 && r3 > 0.5 - 1e-12, "{r3}");
    }

    #[test]
    fn lp_center_matches_symmetric_case() {
        // two points: the midpoint is optimal for every norm
        let pair = [aug(0., 0.), aug(2., 2.)];
        let (c, r) = Metric::Lp(3.0).one_center(&pair);
        let expect = dist_point(Point::new(0., 0.), Point::new(1., 1.), Metric::Lp(3.0));
        assert!((r - expect).abs() < 1e-9, "{c:?} {r}");
    }

    #[test]
    fn gradients_point_away_from_member() {
        let g = metric_gradient(Point::new(3., 4.), Point::new(0., 0.), Metric::L2);
        assert!((g[0] - 0.6).abs() < 1e-15 && (g[1] - 0.8).abs() < 1e-15);
        assert_eq!(metric_gradient(Point::new(3., 4.), Point::new(0., 0.), Metric::LInf), [0.0, 1.0]);
        assert_eq!(metric_gradient(Point::new(1., 1.), Point::new(1., 1.), Metric::Lp(3.0)), [0.0, 0.0]);
    }
}
