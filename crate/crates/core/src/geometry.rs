//! Planar points, ground metrics, persistence diagrams and the colored
//! points used by every matching computation.

use std::fmt;

use crate::error::{Error, Result};

/// Absolute tolerance for floating comparisons across the crate.
pub const EPS: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Point {
    pub x: f64,
    pub y: f64,
}

impl Point {
    pub const fn new(x: f64, y: f64) -> Self {
        Self { x, y }
    }

    pub fn is_finite(&self) -> bool {
        self.x.is_finite() && self.y.is_finite()
    }

    /// Bitwise identity, used for multiset bookkeeping.
    pub(crate) fn key(&self) -> (u64, u64) {
        // normalize -0.0 so that it collides with 0.0
        ((self.x + 0.0).to_bits(), (self.y + 0.0).to_bits())
    }
}

impl From<(f64, f64)> for Point {
    fn from((x, y): (f64, f64)) -> Self {
        Self::new(x, y)
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

/// Ground metric on the plane.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Metric {
    L2,
    LInf,
    /// L_p with a finite exponent `p >= 1`.
    Lp(f64),
}

impl Metric {
    pub fn lp(p: f64) -> Result<Self> {
        let m = Metric::Lp(p);
        m.validate()?;
        Ok(m)
    }

    pub fn validate(&self) -> Result<()> {
        match *self {
            Metric::Lp(p) if !(p.is_finite() && p >= 1.0) => Err(Error::InvalidParameter(
                format!("L_p exponent must be finite and >= 1, got {p}"),
            )),
            _ => Ok(()),
        }
    }

    /// Canonical form: `Lp(2)` is `L2`.
    pub fn normalized(self) -> Self {
        match self {
            Metric::Lp(p) if p == 2.0 => Metric::L2,
            other => other,
        }
    }
}

/// Distance between two points under `metric`.
pub fn dist_point(a: Point, b: Point, metric: Metric) -> f64 {
    let dx = (a.x - b.x).abs();
    let dy = (a.y - b.y).abs();
    match metric.normalized() {
        Metric::L2 => dx.hypot(dy),
        Metric::LInf => dx.max(dy),
        Metric::Lp(p) if p == 1.0 => dx + dy,
        Metric::Lp(p) => {
            let scale = dx.max(dy);
            if scale == 0.0 {
                return 0.0;
            }
            let s = (dx / scale).powf(p) + (dy / scale).powf(p);
            scale * s.powf(1.0 / p)
        }
    }
}

/// Foot of the perpendicular from `p` onto the diagonal `y = x`.
pub fn project_to_diagonal(p: Point) -> Point {
    let t = 0.5 * (p.x + p.y);
    Point::new(t, t)
}

/// L-infinity distance from `p` to the diagonal, i.e. half its persistence.
pub fn diagonal_distance(p: Point) -> f64 {
    0.5 * (p.y - p.x).abs()
}

/// A persistence diagram: a multiset of (birth, death) points. The diagonal
/// is implicit.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct Diagram {
    pub points: Vec<Point>,
}

impl Diagram {
    pub fn new(points: Vec<Point>) -> Self {
        Self { points }
    }

    /// Builds a diagram and rejects it if any point violates the diagram rules.
    pub fn try_new(points: Vec<Point>) -> Result<Self> {
        let d = Self { points };
        let violations = validate_diagram(&d);
        if violations.is_empty() {
            Ok(d)
        } else {
            Err(Error::InvalidDiagram {
                diagram: 0,
                violations,
            })
        }
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }
}

impl FromIterator<Point> for Diagram {
    fn from_iter<I: IntoIterator<Item = Point>>(iter: I) -> Self {
        Self::new(iter.into_iter().collect())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DiagramRule {
    NonFinite,
    DeathBeforeBirth,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DiagramViolation {
    pub index: usize,
    pub rule: DiagramRule,
}

impl fmt::Display for DiagramViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rule = match self.rule {
            DiagramRule::NonFinite => "non-finite coordinate",
            DiagramRule::DeathBeforeBirth => "death < birth",
        };
        write!(f, "index {}: {}", self.index, rule)
    }
}

/// Lists every point that is not a finite (birth, death) pair with
/// `death >= birth`. Points on the diagonal are allowed.
pub fn validate_diagram(d: &Diagram) -> Vec<DiagramViolation> {
    d.points
        .iter()
        .enumerate()
        .filter_map(|(index, p)| {
            let rule = if !p.is_finite() {
                DiagramRule::NonFinite
            } else if p.y < p.x {
                DiagramRule::DeathBeforeBirth
            } else {
                return None;
            };
            Some(DiagramViolation { index, rule })
        })
        .collect()
}

pub(crate) fn check_diagrams(diagrams: &[Diagram]) -> Result<()> {
    for (i, d) in diagrams.iter().enumerate() {
        let violations = validate_diagram(d);
        if !violations.is_empty() {
            return Err(Error::InvalidDiagram {
                diagram: i,
                violations,
            });
        }
    }
    Ok(())
}

/// A point tagged with its color (0-based input set index) and whether it
/// stands for the diagonal.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AugPoint {
    pub pt: Point,
    pub color: usize,
    pub on_diagonal: bool,
}

impl AugPoint {
    pub fn new(pt: Point, color: usize) -> Self {
        Self {
            pt,
            color,
            on_diagonal: false,
        }
    }

    /// The diagonal projection of `p`, tagged with `color`.
    pub fn projected(p: Point, color: usize) -> Self {
        Self {
            pt: project_to_diagonal(p),
            color,
            on_diagonal: true,
        }
    }

    pub(crate) fn colored(points: &[Point], color: usize) -> Vec<AugPoint> {
        points.iter().map(|&p| AugPoint::new(p, color)).collect()
    }
}
