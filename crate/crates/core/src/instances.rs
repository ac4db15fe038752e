//! Deterministic fixture generators.
//!
//! Random fixtures come from SplitMix64: the state advances by
//! `0x9E3779B97F4A7C15` per draw and the output is the state passed through
//! the standard two-multiply finalizer. The state is seeded with the raw
//! seed. A uniform real in `[0, 1)` is the top 53 bits of a draw times
//! `2^-53`. Points are drawn diagram by diagram, `x` before `y`.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::geometry::{diagonal_distance, dist_point, Diagram, Metric, Point};

#[derive(Debug, Clone)]
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub fn new(seed: u64) -> Self {
        SplitMix64 { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9E37_79B9_7F4A_7C15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    }

    /// Uniform in `[0, 1)`.
    pub fn next_f64(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    /// Uniform in `[lo, hi)`.
    pub fn uniform(&mut self, lo: f64, hi: f64) -> f64 {
        lo + (hi - lo) * self.next_f64()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum GenKind {
    Random,
    Tight,
    Gap,
    Circle,
    ElementGadget,
    TripleGadget,
    WassersteinGadget,
}

impl GenKind {
    pub const ALL: [GenKind; 7] = [
        GenKind::Random,
        GenKind::Tight,
        GenKind::Gap,
        GenKind::Circle,
        GenKind::ElementGadget,
        GenKind::TripleGadget,
        GenKind::WassersteinGadget,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            GenKind::Random => "random",
            GenKind::Tight => "tight",
            GenKind::Gap => "gap",
            GenKind::Circle => "circle",
            GenKind::ElementGadget => "element_gadget",
            GenKind::TripleGadget => "triple_gadget",
            GenKind::WassersteinGadget => "wasserstein_gadget",
        }
    }
}

impl fmt::Display for GenKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for GenKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        GenKind::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| Error::InvalidParameter(format!("unknown generator kind '{s}'")))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct GenSpec {
    pub kind: GenKind,
    /// Points per diagram (random only).
    pub n: usize,
    /// Number of diagrams (random only).
    pub m: usize,
    pub seed: u64,
    /// Coordinate range for random points.
    pub bbox: (f64, f64),
    /// Number of path points in the element gadget.
    pub d: usize,
    /// Triple gadget: whether the approach paths pull the triple apart.
    pub pull: bool,
    /// Element gadget: whether the first path point is absorbed by a nearby
    /// external pair (otherwise the pair is placed far away).
    pub absorbed: bool,
}

impl Default for GenSpec {
    fn default() -> Self {
        GenSpec {
            kind: GenKind::Random,
            n: 3,
            m: 2,
            seed: 0,
            bbox: (0.0, 10.0),
            d: 2,
            pull: false,
            absorbed: true,
        }
    }
}

impl GenSpec {
    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::InvalidParameter(msg));
        match self.kind {
            GenKind::Random => {
                if self.n == 0 {
                    return bad("random fixtures need n >= 1".into());
                }
                if self.m < 2 {
                    return bad(format!("random fixtures need m >= 2, got {}", self.m));
                }
                let (lo, hi) = self.bbox;
                if !(lo.is_finite() && hi.is_finite() && lo <= hi) {
                    return bad(format!("invalid bounding box ({lo}, {hi})"));
                }
            }
            GenKind::ElementGadget if self.d < 2 => {
                return bad(format!("element gadget needs d >= 2, got {}", self.d));
            }
            _ => {}
        }
        Ok(())
    }

    /// Manifest lines describing this spec.
    pub fn manifest(&self) -> Vec<(String, String)> {
        let mut out = vec![("kind".to_string(), self.kind.to_string())];
        match self.kind {
            GenKind::Random => {
                out.push(("n".into(), self.n.to_string()));
                out.push(("m".into(), self.m.to_string()));
                out.push(("seed".into(), self.seed.to_string()));
                out.push(("bbox".into(), format!("{} {}", self.bbox.0, self.bbox.1)));
            }
            GenKind::ElementGadget => {
                out.push(("d".into(), self.d.to_string()));
                out.push(("absorbed".into(), self.absorbed.to_string()));
            }
            GenKind::TripleGadget => out.push(("pull".into(), self.pull.to_string())),
            _ => {}
        }
        out
    }
}

/// Generates the diagrams described by `spec`. Geometric fixtures are moved
/// away from the diagonal with [`shift_from_diagonal`].
pub fn generate(spec: &GenSpec) -> Result<Vec<Diagram>> {
    spec.validate()?;
    match spec.kind {
        GenKind::Random => gen_random(spec),
        _ => shift_from_diagonal(&point_sets(spec)?),
    }
}

/// Raw colored point sets of a geometric fixture (random fixtures return the
/// random diagrams' points).
pub fn point_sets(spec: &GenSpec) -> Result<Vec<Vec<Point>>> {
    spec.validate()?;
    Ok(match spec.kind {
        GenKind::Random => gen_random(spec)?.into_iter().map(|d| d.points).collect(),
        GenKind::Tight => gen_tight(),
        GenKind::Gap => gen_gap(),
        GenKind::Circle => gen_circle(),
        GenKind::ElementGadget => gen_element_gadget(spec.d, spec.absorbed)?,
        GenKind::TripleGadget => gen_triple_gadget(spec.pull),
        GenKind::WassersteinGadget => gen_wasserstein_gadget(),
    })
}

/// `m` diagrams of `n` points uniform in the bounding box, swapped into
/// `y >= x` when needed.
pub fn gen_random(spec: &GenSpec) -> Result<Vec<Diagram>> {
    spec.validate()?;
    let mut rng = SplitMix64::new(spec.seed);
    let (lo, hi) = spec.bbox;
    Ok((0..spec.m)
        .map(|_| {
            (0..spec.n)
                .map(|_| {
                    let a = rng.uniform(lo, hi);
                    let b = rng.uniform(lo, hi);
                    Point::new(a.min(b), a.max(b))
                })
                .collect()
        })
        .collect())
}

/// `m` unconstrained point sets of `n` points uniform in `[lo, hi)^2`.
pub fn random_point_sets(n: usize, m: usize, seed: u64, bbox: (f64, f64)) -> Vec<Vec<Point>> {
    let mut rng = SplitMix64::new(seed);
    (0..m)
        .map(|_| {
            (0..n)
                .map(|_| {
                    let x = rng.uniform(bbox.0, bbox.1);
                    let y = rng.uniform(bbox.0, bbox.1);
                    Point::new(x, y)
                })
                .collect()
        })
        .collect()
}

/// One point per color on a right angle. The first-set center costs 1
/// (L-infinity) while the best free center costs 1/2.
pub fn gen_tight() -> Vec<Vec<Point>> {
    vec![
        vec![Point::new(0.0, 0.0)],
        vec![Point::new(1.0, 0.0)],
        vec![Point::new(0.0, 1.0)],
    ]
}

/// Collinear instance where only one input point covers both clusters at
/// radius 1/2. With reuse the optimum is 1/2; without it is 1.
pub fn gen_gap() -> Vec<Vec<Point>> {
    vec![
        vec![Point::new(0.5, 0.0), Point::new(0.0, 0.0)],
        vec![Point::new(1.0, 0.0), Point::new(1.0, 0.0)],
        vec![Point::new(0.0, 0.0), Point::new(0.0, 0.0)],
    ]
}

/// Five points on the unit circle and one at its center. The optimal
/// no-replacement radius is 1.
pub fn gen_circle() -> Vec<Vec<Point>> {
    vec![
        vec![Point::new(1.0, 0.0), Point::new(0.0, 0.0)],
        vec![Point::new(0.0, 1.0), Point::new(-1.0, 0.0)],
        vec![Point::new(0.0, -1.0), Point::new(0.6, 0.8)],
    ]
}

/// Horizontal path of `d` first-color points at unit spacing. Each edge
/// carries the other two colors at 1/3 and 2/3, in alternating order from
/// edge to edge. A pair of the other colors near the first path point (or
/// far from it when `absorbed` is false) balances the set sizes.
pub fn gen_element_gadget(d: usize, absorbed: bool) -> Result<Vec<Vec<Point>>> {
    if d < 2 {
        return Err(Error::InvalidParameter(format!("element gadget needs d >= 2, got {d}")));
    }
    let mut sets = vec![Vec::new(), Vec::new(), Vec::new()];
    for k in 0..d {
        sets[0].push(Point::new(k as f64, 0.0));
    }
    for k in 0..d - 1 {
        let (near, far) = if k % 2 == 0 { (1, 2) } else { (2, 1) };
        let x = k as f64;
        sets[near].push(Point::new(x + 1.0 / 3.0, 0.0));
        sets[far].push(Point::new(x + 2.0 / 3.0, 0.0));
    }
    if absorbed {
        sets[1].push(Point::new(0.0, -1.0 / 3.0));
        sets[2].push(Point::new(0.0, -2.0 / 3.0));
    } else {
        sets[1].push(Point::new(0.0, -10.0));
        sets[2].push(Point::new(0.0, -20.0));
    }
    Ok(sets)
}

/// Three coincident points of distinct colors at the origin. With `pull`,
/// three approach paths (left, top, right) each end 1/3 and 2/3 away in the
/// two colors that complete a cluster with one triple point.
pub fn gen_triple_gadget(pull: bool) -> Vec<Vec<Point>> {
    let o = Point::new(0.0, 0.0);
    let mut sets = vec![vec![o], vec![o], vec![o]];
    if pull {
        let t = 1.0 / 3.0;
        sets[1].push(Point::new(-t, 0.0));
        sets[2].push(Point::new(-2.0 * t, 0.0));
        sets[2].push(Point::new(0.0, t));
        sets[0].push(Point::new(0.0, 2.0 * t));
        sets[0].push(Point::new(t, 0.0));
        sets[1].push(Point::new(2.0 * t, 0.0));
    }
    sets
}

/// Triple gadget with only the left and right paths, so one triple point
/// stays behind. Far points balance the set sizes.
pub fn gen_triple_gadget_partial() -> Vec<Vec<Point>> {
    let t = 1.0 / 3.0;
    let o = Point::new(0.0, 0.0);
    vec![
        vec![o, Point::new(t, 0.0), Point::new(0.0, 10.0)],
        vec![o, Point::new(-t, 0.0), Point::new(2.0 * t, 0.0)],
        vec![o, Point::new(-2.0 * t, 0.0), Point::new(0.0, -10.0)],
    ]
}

/// Unit square with first-color corners and a pair of the other colors at
/// every edge midpoint. Each cluster is a corner with an adjacent midpoint
/// pair, an axis-parallel interval of length 1/2.
pub fn gen_wasserstein_gadget() -> Vec<Vec<Point>> {
    let corners = [(0.0, 0.0), (1.0, 0.0), (1.0, 1.0), (0.0, 1.0)];
    let mids = [(0.5, 0.0), (1.0, 0.5), (0.5, 1.0), (0.0, 0.5)];
    let c: Vec<Point> = corners.iter().map(|&p| p.into()).collect();
    let m: Vec<Point> = mids.iter().map(|&p| p.into()).collect();
    vec![c, m.clone(), m]
}

/// Translates all points upward by a whole number so that each lies at
/// L-infinity distance at least twice the diameter (and at least 1) from the
/// diagonal.
pub fn shift_from_diagonal(sets: &[Vec<Point>]) -> Result<Vec<Diagram>> {
    let all: Vec<Point> = sets.iter().flatten().copied().collect();
    if all.is_empty() {
        return Err(Error::EmptyInput);
    }
    if let Some(p) = all.iter().find(|p| !p.is_finite()) {
        return Err(Error::InvalidParameter(format!("non-finite point {p}")));
    }
    let mut diameter = 0.0f64;
    for (i, a) in all.iter().enumerate() {
        for b in &all[i + 1..] {
            diameter = diameter.max(dist_point(*a, *b, Metric::LInf));
        }
    }
    let target = 2.0 * diameter.max(0.5);
    // diagonal distance is (y - x) / 2, so lifting by s adds s / 2
    let need = all
        .iter()
        .map(|p| 2.0 * (target - diagonal_distance(*p)))
        .fold(0.0, f64::max);
    let s = need.ceil();
    Ok(sets
        .iter()
        .map(|set| set.iter().map(|p| Point::new(p.x, p.y + s)).collect())
        .collect())
}
