//! Continuous 1-center solvers: minimum enclosing circle (L2), midrange
//! (L-infinity), and a central-cut ellipsoid method for the remaining convex
//! cases.

use crate::geometry::Point;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Circle {
    pub center: Point,
    pub radius: f64,
}

impl Circle {
    fn contains(&self, p: Point) -> bool {
        (p.x - self.center.x).hypot(p.y - self.center.y) <= self.radius * (1.0 + 1e-14) + 1e-14
    }
}

/// Smallest circle enclosing `points` (incremental Welzl-style construction).
/// Returns `None` for an empty slice.
pub fn min_enclosing_circle(points: &[Point]) -> Option<Circle> {
    let mut c: Option<Circle> = None;
    for (i, &p) in points.iter().enumerate() {
        if c.map_or(true, |c| !c.contains(p)) {
            c = Some(circle_with_one(&points[..i], p));
        }
    }
    c
}

fn circle_with_one(points: &[Point], p: Point) -> Circle {
    let mut c = Circle { center: p, radius: 0.0 };
    for (i, &q) in points.iter().enumerate() {
        if !c.contains(q) {
            c = circle_with_two(&points[..i], p, q);
        }
    }
    c
}

fn circle_with_two(points: &[Point], p: Point, q: Point) -> Circle {
    let mut c = diameter_circle(p, q);
    for (i, &r) in points.iter().enumerate() {
        if !c.contains(r) {
            c = circumcircle(p, q, r).unwrap_or_else(|| {
                // collinear: the farthest pair spans the circle
                let cands = [diameter_circle(p, q), diameter_circle(p, r), diameter_circle(q, r)];
                cands
                    .into_iter()
                    .filter(|c| points[..=i].iter().chain([&p, &q]).all(|&s| c.contains(s)))
                    .min_by(|a, b| a.radius.total_cmp(&b.radius))
                    .unwrap_or(cands[0])
            });
        }
    }
    c
}

fn diameter_circle(a: Point, b: Point) -> Circle {
    let center = Point::new(0.5 * (a.x + b.x), 0.5 * (a.y + b.y));
    let radius = (a.x - center.x)
        .hypot(a.y - center.y)
        .max((b.x - center.x).hypot(b.y - center.y));
    Circle { center, radius }
}

fn circumcircle(a: Point, b: Point, c: Point) -> Option<Circle> {
    // translate to reduce cancellation
    let ox = a.x.min(b.x).min(c.x) + 0.5 * (a.x.max(b.x).max(c.x) - a.x.min(b.x).min(c.x));
    let oy = a.y.min(b.y).min(c.y) + 0.5 * (a.y.max(b.y).max(c.y) - a.y.min(b.y).min(c.y));
    let (ax, ay) = (a.x - ox, a.y - oy);
    let (bx, by) = (b.x - ox, b.y - oy);
    let (cx, cy) = (c.x - ox, c.y - oy);
    let d = 2.0 * (ax * (by - cy) + bx * (cy - ay) + cx * (ay - by));
    if d == 0.0 {
        return None;
    }
    let a2 = ax * ax + ay * ay;
    let b2 = bx * bx + by * by;
    let c2 = cx * cx + cy * cy;
    let x = (a2 * (by - cy) + b2 * (cy - ay) + c2 * (ay - by)) / d;
    let y = (a2 * (cx - bx) + b2 * (ax - cx) + c2 * (bx - ax)) / d;
    let center = Point::new(ox + x, oy + y);
    let radius = [a, b, c]
        .iter()
        .map(|p| (p.x - center.x).hypot(p.y - center.y))
        .fold(0.0, f64::max);
    Some(Circle { center, radius })
}

/// Center of the bounding box: the exact L-infinity 1-center.
pub fn midrange(points: &[Point]) -> Option<Point> {
    let first = points.first()?;
    let (mut x0, mut x1, mut y0, mut y1) = (first.x, first.x, first.y, first.y);
    for p in points {
        x0 = x0.min(p.x);
        x1 = x1.max(p.x);
        y0 = y0.min(p.y);
        y1 = y1.max(p.y);
    }
    Some(Point::new(0.5 * (x0 + x1), 0.5 * (y0 + y1)))
}

/// Exact L1 1-center: the midrange in coordinates rotated by 45 degrees,
/// where L1 becomes L-infinity.
pub fn l1_center(points: &[Point]) -> Option<Point> {
    let rotated: Vec<Point> = points.iter().map(|p| Point::new(p.x + p.y, p.y - p.x)).collect();
    let c = midrange(&rotated)?;
    Some(Point::new(0.5 * (c.x - c.y), 0.5 * (c.x + c.y)))
}

/// Minimizes a convex function given by a value/subgradient oracle over the
/// ball of `radius` around `start`. The oracle writes a subgradient into its
/// second argument and returns the value.
///
/// Central-cut ellipsoid iterations stop once the certified gap
/// `best - lower_bound` falls below `tol` (or after `max_iter` steps).
/// Returns the best point found and its value.
pub fn minimize_convex<F>(start: &[f64], radius: f64, tol: f64, max_iter: usize, mut f: F) -> (Vec<f64>, f64)
where
    F: FnMut(&[f64], &mut [f64]) -> f64,
{
    let k = start.len();
    let mut x = start.to_vec();
    let mut g = vec![0.0; k];
    let mut best_x = x.clone();
    let mut best = f(&x, &mut g);
    if k == 0 || radius <= 0.0 {
        return (best_x, best);
    }
    if k == 1 {
        return golden_section(start[0], radius, tol, |t| {
            let mut g = [0.0];
            f(&[t], &mut g)
        });
    }

    // A is the ellipsoid shape matrix (row-major k x k).
    let mut a = vec![0.0; k * k];
    for i in 0..k {
        a[i * k + i] = radius * radius;
    }
    let mut ag = vec![0.0; k];
    let kf = k as f64;
    let shrink = kf * kf / (kf * kf - 1.0);
    let mut lower = f64::NEG_INFINITY;
    let mut value = best;
    for _ in 0..max_iter {
        for i in 0..k {
            ag[i] = (0..k).map(|j| a[i * k + j] * g[j]).sum();
        }
        let gag: f64 = (0..k).map(|i| g[i] * ag[i]).sum();
        if !(gag > 0.0) {
            // zero subgradient: x is optimal
            break;
        }
        let norm = gag.sqrt();
        lower = lower.max(value - norm);
        if best - lower <= tol {
            break;
        }
        for i in 0..k {
            ag[i] /= norm;
            x[i] -= ag[i] / (kf + 1.0);
        }
        let c = 2.0 / (kf + 1.0);
        for i in 0..k {
            for j in i..k {
                let v = shrink * (a[i * k + j] - c * ag[i] * ag[j]);
                a[i * k + j] = v;
                a[j * k + i] = v;
            }
        }
        value = f(&x, &mut g);
        if value < best {
            best = value;
            best_x.copy_from_slice(&x);
        }
    }
    (best_x, best)
}

fn golden_section<F: FnMut(f64) -> f64>(center: f64, radius: f64, tol: f64, mut f: F) -> (Vec<f64>, f64) {
    let inv_phi = (5f64.sqrt() - 1.0) / 2.0;
    let (mut lo, mut hi) = (center - radius, center + radius);
    let mut c = hi - inv_phi * (hi - lo);
    let mut d = lo + inv_phi * (hi - lo);
    let (mut fc, mut fd) = (f(c), f(d));
    for _ in 0..200 {
        if hi - lo <= tol * 1e-3 {
            break;
        }
        if fc <= fd {
            hi = d;
            d = c;
            fd = fc;
            c = hi - inv_phi * (hi - lo);
            fc = f(c);
        } else {
            lo = c;
            c = d;
            fc = fd;
            d = lo + inv_phi * (hi - lo);
            fd = f(d);
        }
    }
    let (x, v) = if fc <= fd { (c, fc) } else { (d, fd) };
    let fcen = f(center);
    if fcen <= v {
        (vec![center], fcen)
    } else {
        (vec![x], v)
    }
}
