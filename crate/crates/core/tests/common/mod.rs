//! Exhaustive reference computations used only by the tests. They share no
//! code with the library beyond the `Point` type.

#![allow(dead_code)]

use pdcenter::{Diagram, Point};

pub fn linf(a: Point, b: Point) -> f64 {
    (a.x - b.x).abs().max((a.y - b.y).abs())
}

pub fn l2(a: Point, b: Point) -> f64 {
    ((a.x - b.x).powi(2) + (a.y - b.y).powi(2)).sqrt()
}

fn to_diagonal(p: Point) -> f64 {
    (p.y - p.x).abs() / 2.0
}

/// Enumerates every partial injection from `a` into `b`; unmatched points on
/// either side go to the diagonal. Returns the best bottleneck cost and the
/// best `sum c^p`.
fn enumerate(a: &[Point], b: &[Point], p: f64) -> (f64, f64) {
    fn rec(i: usize, a: &[Point], b: &[Point], used: &mut Vec<bool>, costs: &mut Vec<f64>, p: f64, best: &mut (f64, f64)) {
        if i == a.len() {
            let mut all = costs.clone();
            for (j, q) in b.iter().enumerate() {
                if !used[j] {
                    all.push(to_diagonal(*q));
                }
            }
            let bott = all.iter().copied().fold(0.0, f64::max);
            let sum: f64 = all.iter().map(|c| c.powf(p)).sum();
            best.0 = best.0.min(bott);
            best.1 = best.1.min(sum);
            return;
        }
        costs.push(to_diagonal(a[i]));
        rec(i + 1, a, b, used, costs, p, best);
        costs.pop();
        for j in 0..b.len() {
            if used[j] {
                continue;
            }
            used[j] = true;
            costs.push(linf(a[i], b[j]));
            rec(i + 1, a, b, used, costs, p, best);
            costs.pop();
            used[j] = false;
        }
    }
    let mut best = (f64::INFINITY, f64::INFINITY);
    rec(0, a, b, &mut vec![false; b.len()], &mut Vec::new(), p, &mut best);
    best
}

pub fn oracle_bottleneck(a: &Diagram, b: &Diagram) -> f64 {
    enumerate(&a.points, &b.points, 1.0).0
}

pub fn oracle_wasserstein(a: &Diagram, b: &Diagram, p: f64) -> f64 {
    enumerate(&a.points, &b.points, p).1.powf(1.0 / p)
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Ground {
    L2,
    LInf,
}

impl Ground {
    pub fn d(self, a: Point, b: Point) -> f64 {
        match self {
            Ground::L2 => l2(a, b),
            Ground::LInf => linf(a, b),
        }
    }
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for k in 0..=p.len() {
            let mut q = p.clone();
            q.insert(k, n - 1);
            out.push(q);
        }
    }
    out
}

/// Every clustering as `clusters[c] = [index in set 0, index in set 1, ...]`.
fn clusterings(n: usize, m: usize) -> Vec<Vec<Vec<usize>>> {
    let perms = permutations(n);
    let mut out: Vec<Vec<Vec<usize>>> = vec![(0..n).map(|c| vec![c]).collect()];
    for _ in 1..m {
        let mut next = Vec::new();
        for partial in &out {
            for p in &perms {
                let mut ext = partial.clone();
                for (c, row) in ext.iter_mut().enumerate() {
                    row.push(p[c]);
                }
                next.push(ext);
            }
        }
        out = next;
    }
    out
}

/// Optimal discrete bottleneck center by trying every clustering and every
/// assignment of input points to clusters (distinct points when `distinct`).
pub fn oracle_discrete_center(sets: &[Vec<Point>], ground: Ground, distinct: bool) -> f64 {
    let n = sets[0].len();
    let pool: Vec<Point> = sets.iter().flatten().copied().collect();
    let mut best = f64::INFINITY;
    for cl in clusterings(n, sets.len()) {
        let cover: Vec<Vec<f64>> = cl
            .iter()
            .map(|row| {
                pool.iter()
                    .map(|&w| row.iter().enumerate().map(|(i, &k)| ground.d(w, sets[i][k])).fold(0.0, f64::max))
                    .collect()
            })
            .collect();
        let mut choice = vec![0usize; n];
        loop {
            let ok = !distinct || {
                let mut seen = vec![false; pool.len()];
                choice.iter().all(|&w| !std::mem::replace(&mut seen[w], true))
            };
            if ok {
                let v = (0..n).map(|c| cover[c][choice[c]]).fold(0.0, f64::max);
                best = best.min(v);
            }
            let mut c = 0;
            while c < n {
                choice[c] += 1;
                if choice[c] < pool.len() {
                    break;
                }
                choice[c] = 0;
                c += 1;
            }
            if c == n {
                break;
            }
        }
    }
    if n == 0 {
        0.0
    } else {
        best
    }
}

/// Smallest enclosing radius of at most three points.
fn enclosing_radius(pts: &[Point], ground: Ground) -> f64 {
    match ground {
        Ground::LInf => {
            let (mut x0, mut x1, mut y0, mut y1) = (f64::INFINITY, f64::NEG_INFINITY, f64::INFINITY, f64::NEG_INFINITY);
            for p in pts {
                x0 = x0.min(p.x);
                x1 = x1.max(p.x);
                y0 = y0.min(p.y);
                y1 = y1.max(p.y);
            }
            ((x1 - x0).max(y1 - y0)) / 2.0
        }
        Ground::L2 => {
            assert!(pts.len() <= 3);
            let mut best = f64::INFINITY;
            // circles on a diameter
            for i in 0..pts.len() {
                for j in i..pts.len() {
                    let c = Point::new((pts[i].x + pts[j].x) / 2.0, (pts[i].y + pts[j].y) / 2.0);
                    let r = pts.iter().map(|&p| l2(c, p)).fold(0.0, f64::max);
                    best = best.min(r);
                }
            }
            // circumcircle
            if pts.len() == 3 {
                let (a, b, c) = (pts[0], pts[1], pts[2]);
                let d = 2.0 * (a.x * (b.y - c.y) + b.x * (c.y - a.y) + c.x * (a.y - b.y));
                if d.abs() > 1e-12 {
                    let a2 = a.x * a.x + a.y * a.y;
                    let b2 = b.x * b.x + b.y * b.y;
                    let c2 = c.x * c.x + c.y * c.y;
                    let ux = (a2 * (b.y - c.y) + b2 * (c.y - a.y) + c2 * (a.y - b.y)) / d;
                    let uy = (a2 * (c.x - b.x) + b2 * (a.x - c.x) + c2 * (b.x - a.x)) / d;
                    let u = Point::new(ux, uy);
                    best = best.min(pts.iter().map(|&p| l2(u, p)).fold(0.0, f64::max));
                }
            }
            best
        }
    }
}

/// Optimal continuous bottleneck center for `m <= 3`.
pub fn oracle_continuous_center(sets: &[Vec<Point>], ground: Ground) -> f64 {
    let n = sets[0].len();
    if n == 0 {
        return 0.0;
    }
    clusterings(n, sets.len())
        .iter()
        .map(|cl| {
            cl.iter()
                .map(|row| {
                    let pts: Vec<Point> = row.iter().enumerate().map(|(i, &k)| sets[i][k]).collect();
                    enclosing_radius(&pts, ground)
                })
                .fold(0.0, f64::max)
        })
        .fold(f64::INFINITY, f64::min)
}

/// Small deterministic generator for test inputs (xorshift64*).
pub struct Lcg(u64);

impl Lcg {
    pub fn new(seed: u64) -> Self {
        Lcg(seed.wrapping_mul(0x2545_F491_4F6C_DD1D) | 1)
    }

    pub fn next(&mut self) -> u64 {
        self.0 ^= self.0 >> 12;
        self.0 ^= self.0 << 25;
        self.0 ^= self.0 >> 27;
        self.0.wrapping_mul(0x2545_F491_4F6C_DD1D)
    }

    pub fn unit(&mut self) -> f64 {
        (self.next() >> 11) as f64 / (1u64 << 53) as f64
    }

    pub fn below(&mut self, k: usize) -> usize {
        (self.next() % k as u64) as usize
    }

    /// Coordinates on a coarse grid half the time, to exercise ties.
    pub fn coord(&mut self, grid: bool) -> f64 {
        if grid {
            self.below(5) as f64
        } else {
            10.0 * self.unit()
        }
    }

    pub fn diagram(&mut self, size: usize, grid: bool) -> Diagram {
        Diagram::new(
            (0..size)
                .map(|_| {
                    let a = self.coord(grid);
                    let b = self.coord(grid);
                    Point::new(a.min(b), a.max(b))
                })
                .collect(),
        )
    }

    pub fn sets(&mut self, n: usize, m: usize, grid: bool) -> Vec<Vec<Point>> {
        (0..m)
            .map(|_| (0..n).map(|_| Point::new(self.coord(grid), self.coord(grid))).collect())
            .collect()
    }
}
