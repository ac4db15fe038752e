//! Exhaustive reference solver for small instances.
//!
//! Every clustering (one point of each set per cluster) is enumerated by
//! taking the first set in input order and a permutation of each other set.
//! For each clustering the best admissible centers are found:
//!
//! * bottleneck, no replacement: bottleneck assignment of clusters to
//!   distinct candidates (threshold bisection with augmenting paths);
//! * bottleneck, with replacement: the best candidate per cluster;
//! * bottleneck, continuous: the exact 1-center of each cluster;
//! * Wasserstein, discrete: depth-first search over candidate choices;
//! * Wasserstein, continuous: ellipsoid minimization of the convex
//!   objective, once per diagonal/free placement pattern.

use super::{assemble, check_equal_sizes, colored_sets, prefer, CenterSolution, Cluster, Objective, SelectionMode};
use crate::enclosing::minimize_convex;
use crate::error::{Error, Result};
use crate::geometry::{AugPoint, Metric, Point};
use crate::ground::{free_center, GroundCost};

/// Largest number of clusterings the solver will enumerate.
pub const BRUTE_FORCE_LIMIT: f64 = 1e7;

/// Limit on clusterings times candidate choices for discrete Wasserstein.
const WASSERSTEIN_WORK_LIMIT: f64 = 1e8;

/// `(n!)^(m-1)`, the number of clusterings of `m` sets of size `n`.
pub fn clustering_count(n: usize, m: usize) -> f64 {
    let fact: f64 = (1..=n).map(|k| k as f64).product();
    fact.powi(m.saturating_sub(1) as i32)
}

pub fn brute_force_center(
    sets: &[Vec<Point>],
    mode: SelectionMode,
    metric: Metric,
    objective: Objective,
) -> Result<CenterSolution> {
    metric.validate()?;
    brute_force_with(&colored_sets(sets), &metric, mode, objective)
}

/// Whether some center achieves bottleneck objective at most `radius`.
pub fn brute_force_feasible(sets: &[Vec<Point>], mode: SelectionMode, metric: Metric, radius: f64) -> Result<bool> {
    metric.validate()?;
    let sets = colored_sets(sets);
    let inst = Instance::new(&sets, &metric, Objective::Bottleneck)?;
    let mut found = false;
    inst.for_each_clustering(|members| {
        let ok = match mode {
            SelectionMode::NoReplacement => {
                let k = inst.cover_table(members);
                kuhn(&threshold_adjacency(&k, inst.candidates.len(), radius), inst.candidates.len()).is_some()
            }
            SelectionMode::WithReplacement => {
                let k = inst.cover_table(members);
                k.chunks(inst.candidates.len()).all(|row| row.iter().any(|&v| v <= radius))
            }
            SelectionMode::Continuous => (0..inst.n).all(|c| {
                let pts = inst.cluster_points(members, c);
                inst.cost.one_center(&pts).1 <= radius
            }),
        };
        found = ok;
        !ok
    });
    Ok(found)
}

pub(crate) fn brute_force_with<C: GroundCost + ?Sized>(
    sets: &[Vec<AugPoint>],
    cost: &C,
    mode: SelectionMode,
    objective: Objective,
) -> Result<CenterSolution> {
    let inst = Instance::new(sets, cost, objective)?;
    if matches!(objective, Objective::Wasserstein(_)) && mode != SelectionMode::Continuous {
        let choices = (inst.candidates.len() as f64).powi(inst.n as i32);
        let work = clustering_count(inst.n, sets.len()) * choices;
        if work > WASSERSTEIN_WORK_LIMIT {
            return Err(Error::InstanceTooLarge {
                work,
                limit: WASSERSTEIN_WORK_LIMIT,
            });
        }
    }

    let mut best = f64::INFINITY;
    let mut best_clusters: Vec<Cluster> = Vec::new();
    inst.for_each_clustering(|members| {
        let found = match (objective, mode) {
            (Objective::Bottleneck, SelectionMode::NoReplacement) => inst.bottleneck_distinct(members, best),
            (Objective::Bottleneck, SelectionMode::WithReplacement) => inst.bottleneck_shared(members),
            (Objective::Bottleneck, SelectionMode::Continuous) => inst.bottleneck_free(members),
            (Objective::Wasserstein(p), SelectionMode::Continuous) => inst.wasserstein_free(members, p),
            (Objective::Wasserstein(p), discrete) => {
                inst.wasserstein_discrete(members, p, discrete == SelectionMode::NoReplacement, best)
            }
        };
        if let Some((value, clusters)) = found {
            if value < best {
                best = value;
                best_clusters = clusters;
            }
        }
        true
    });
    let mut sol = assemble(sets, cost, best_clusters, mode, objective);
    if inst.n == 0 {
        sol.objective_value = 0.0;
    }
    Ok(sol)
}

struct Instance<'a, C: ?Sized> {
    sets: &'a [Vec<AugPoint>],
    cost: &'a C,
    n: usize,
    candidates: Vec<(AugPoint, (usize, usize))>,
    /// `cand_cost[w][i][k]`: cost from candidate `w` to point `k` of set `i`.
    cand_cost: Vec<Vec<Vec<f64>>>,
}

impl<'a, C: GroundCost + ?Sized> Instance<'a, C> {
    fn new(sets: &'a [Vec<AugPoint>], cost: &'a C, objective: Objective) -> Result<Self> {
        objective.validate()?;
        if sets.len() < 2 {
            return Err(Error::InvalidParameter(format!(
                "need at least two sets, got {}",
                sets.len()
            )));
        }
        let n = check_equal_sizes(sets)?;
        let work = clustering_count(n, sets.len());
        if work > BRUTE_FORCE_LIMIT {
            return Err(Error::InstanceTooLarge {
                work,
                limit: BRUTE_FORCE_LIMIT,
            });
        }
        let candidates: Vec<(AugPoint, (usize, usize))> = sets
            .iter()
            .enumerate()
            .flat_map(|(i, s)| s.iter().enumerate().map(move |(k, p)| (*p, (i, k))))
            .collect();
        let cand_cost = candidates
            .iter()
            .map(|(w, _)| {
                sets.iter()
                    .map(|s| s.iter().map(|q| cost.cost(w, q)).collect())
                    .collect()
            })
            .collect();
        Ok(Instance {
            sets,
            cost,
            n,
            candidates,
            cand_cost,
        })
    }

    /// Calls `visit` with `members[c][i]` for every clustering until it
    /// returns `false`.
    fn for_each_clustering<F: FnMut(&[Vec<usize>]) -> bool>(&self, mut visit: F) {
        let m = self.sets.len();
        let n = self.n;
        let mut perms: Vec<Vec<usize>> = vec![(0..n).collect(); m - 1];
        let mut members = vec![vec![0; m]; n];
        loop {
            for (c, row) in members.iter_mut().enumerate() {
                row[0] = c;
                for (i, p) in perms.iter().enumerate() {
                    row[i + 1] = p[c];
                }
            }
            if !visit(&members) {
                return;
            }
            let mut k = perms.len();
            loop {
                if k == 0 {
                    return;
                }
                k -= 1;
                if next_permutation(&mut perms[k]) {
                    break;
                }
            }
        }
    }

    fn cluster_points(&self, members: &[Vec<usize>], c: usize) -> Vec<AugPoint> {
        members[c]
            .iter()
            .enumerate()
            .map(|(i, &k)| self.sets[i][k])
            .collect()
    }

    /// Row-major `n x candidates`: radius at which candidate `w` covers
    /// cluster `c`.
    fn cover_table(&self, members: &[Vec<usize>]) -> Vec<f64> {
        let mut k = Vec::with_capacity(self.n * self.candidates.len());
        for row in members {
            for w in &self.cand_cost {
                k.push(row.iter().enumerate().map(|(i, &idx)| w[i][idx]).fold(0.0, f64::max));
            }
        }
        k
    }

    fn cluster_of(&self, members: &[Vec<usize>], c: usize, w: usize) -> Cluster {
        let (center, source) = self.candidates[w];
        Cluster {
            center,
            source: Some(source),
            members: members[c].clone(),
        }
    }

    fn bottleneck_distinct(&self, members: &[Vec<usize>], bound: f64) -> Option<(f64, Vec<Cluster>)> {
        let width = self.candidates.len();
        let k = self.cover_table(members);
        let lower = k
            .chunks(width)
            .map(|row| row.iter().copied().fold(f64::INFINITY, f64::min))
            .fold(0.0, f64::max);
        let mut values: Vec<f64> = k.iter().copied().filter(|&v| v >= lower && v < bound).collect();
        values.sort_unstable_by(f64::total_cmp);
        values.dedup();
        let try_at = |r: f64| kuhn(&threshold_adjacency(&k, width, r), width);
        let mut hi = values.len().checked_sub(1)?;
        let mut best = try_at(values[hi])?;
        let mut lo = 0;
        while lo < hi {
            let mid = lo + (hi - lo) / 2;
            match try_at(values[mid]) {
                Some(a) => {
                    best = a;
                    hi = mid;
                }
                None => lo = mid + 1,
            }
        }
        let clusters = best.iter().enumerate().map(|(c, &w)| self.cluster_of(members, c, w)).collect();
        Some((values[hi], clusters))
    }

    fn bottleneck_shared(&self, members: &[Vec<usize>]) -> Option<(f64, Vec<Cluster>)> {
        let width = self.candidates.len();
        let k = self.cover_table(members);
        let mut value = 0.0f64;
        let mut clusters = Vec::with_capacity(self.n);
        for (c, row) in k.chunks(width).enumerate() {
            let mut w = 0;
            for v in 1..width {
                if row[v] < row[w] || (row[v] == row[w] && prefer(&self.candidates[v].0, &self.candidates[w].0).is_lt()) {
                    w = v;
                }
            }
            value = value.max(row[w]);
            clusters.push(self.cluster_of(members, c, w));
        }
        Some((value, clusters))
    }

    fn bottleneck_free(&self, members: &[Vec<usize>]) -> Option<(f64, Vec<Cluster>)> {
        let mut value = 0.0f64;
        let mut clusters = Vec::with_capacity(self.n);
        for (c, row) in members.iter().enumerate() {
            let (center, r) = self.cost.one_center(&self.cluster_points(members, c));
            value = value.max(r);
            clusters.push(Cluster {
                center,
                source: None,
                members: row.clone(),
            });
        }
        Some((value, clusters))
    }

    fn wasserstein_discrete(
        &self,
        members: &[Vec<usize>],
        p: f64,
        distinct: bool,
        bound: f64,
    ) -> Option<(f64, Vec<Cluster>)> {
        let m = self.sets.len();
        // cluster -> candidate -> per-set cost^p
        let powered: Vec<Vec<Vec<f64>>> = members
            .iter()
            .map(|row| {
                self.cand_cost
                    .iter()
                    .map(|w| row.iter().enumerate().map(|(i, &k)| w[i][k].powf(p)).collect())
                    .collect()
            })
            .collect();
        let mut search = DiscreteSearch {
            powered: &powered,
            distinct,
            used: vec![false; self.candidates.len()],
            sums: vec![0.0; m],
            choice: vec![0; self.n],
            best: if bound.is_finite() { bound.powf(p) } else { f64::INFINITY },
            best_choice: None,
        };
        search.run(0);
        let choice = search.best_choice?;
        let value = search.best.powf(1.0 / p);
        let clusters = choice.iter().enumerate().map(|(c, &w)| self.cluster_of(members, c, w)).collect();
        Some((value, clusters))
    }

    fn wasserstein_free(&self, members: &[Vec<usize>], p: f64) -> Option<(f64, Vec<Cluster>)> {
        let points: Vec<Vec<AugPoint>> = (0..self.n).map(|c| self.cluster_points(members, c)).collect();
        let placements: Vec<Vec<bool>> = points.iter().map(|pts| self.cost.center_placements(pts)).collect();
        let mut best: Option<(f64, Vec<AugPoint>)> = None;
        let mut pattern = vec![0usize; self.n];
        loop {
            let diag: Vec<bool> = pattern.iter().zip(&placements).map(|(&k, pl)| pl[k]).collect();
            let (centers, value) = self.minimize_placement(&points, &diag, p);
            if best.as_ref().map_or(true, |(b, _)| value < *b) {
                best = Some((value, centers));
            }
            // advance the mixed-radix pattern
            let mut c = 0;
            while c < self.n {
                pattern[c] += 1;
                if pattern[c] < placements[c].len() {
                    break;
                }
                pattern[c] = 0;
                c += 1;
            }
            if c == self.n {
                break;
            }
        }
        let (value, centers) = best?;
        let clusters = centers
            .into_iter()
            .zip(members)
            .map(|(center, row)| Cluster {
                center,
                source: None,
                members: row.clone(),
            })
            .collect();
        Some((value, clusters))
    }

    /// Minimizes `max_i (sum_c cost(x_c, member_ci)^p)^(1/p)` with each center
    /// either free (two coordinates) or on the diagonal (one).
    fn minimize_placement(&self, points: &[Vec<AugPoint>], diag: &[bool], p: f64) -> (Vec<AugPoint>, f64) {
        let m = self.sets.len();
        let mut offset = Vec::with_capacity(self.n);
        let mut start = Vec::new();
        let mut spread = 0.0f64;
        for (pts, &d) in points.iter().zip(diag) {
            offset.push(start.len());
            let (c, r) = self.cost.one_center(pts);
            spread = spread.max(r);
            for q in pts {
                spread = spread.max(q.pt.x.abs().max(q.pt.y.abs()) - c.pt.x.abs().max(c.pt.y.abs()));
            }
            if d {
                start.push(0.5 * (c.pt.x + c.pt.y));
            } else {
                start.extend([c.pt.x, c.pt.y]);
            }
        }
        let decode = |x: &[f64], c: usize| -> AugPoint {
            let o = offset[c];
            if diag[c] {
                AugPoint {
                    pt: Point::new(x[o], x[o]),
                    color: 0,
                    on_diagonal: true,
                }
            } else {
                free_center(Point::new(x[o], x[o + 1]))
            }
        };
        let radius = 4.0 * spread + 1.0;
        let dim = start.len();
        let scale = spread.max(1e-300);
        let (x, value) = minimize_convex(&start, radius, 1e-13 * scale, 600 * dim * dim + 2000, |x, g| {
            g.iter_mut().for_each(|v| *v = 0.0);
            let centers: Vec<AugPoint> = (0..self.n).map(|c| decode(x, c)).collect();
            let mut worst = (0.0f64, usize::MAX);
            for i in 0..m {
                let costs: Vec<f64> = (0..self.n).map(|c| self.cost.cost(&centers[c], &points[c][i])).collect();
                let v = super::p_norm(&costs, p);
                if worst.1 == usize::MAX || v > worst.0 {
                    worst = (v, i);
                }
            }
            let (v, i) = worst;
            if v > 0.0 {
                for c in 0..self.n {
                    let d = self.cost.cost(&centers[c], &points[c][i]);
                    if d == 0.0 {
                        continue;
                    }
                    let w = (d / v).powf(p - 1.0);
                    let gr = self.cost.cost_gradient(&centers[c], &points[c][i]);
                    let o = offset[c];
                    if diag[c] {
                        g[o] += w * (gr[0] + gr[1]);
                    } else {
                        g[o] += w * gr[0];
                        g[o + 1] += w * gr[1];
                    }
                }
            }
            v
        });
        ((0..self.n).map(|c| decode(&x, c)).collect(), value)
    }
}

struct DiscreteSearch<'a> {
    powered: &'a [Vec<Vec<f64>>],
    distinct: bool,
    used: Vec<bool>,
    sums: Vec<f64>,
    choice: Vec<usize>,
    best: f64,
    best_choice: Option<Vec<usize>>,
}

impl DiscreteSearch<'_> {
    fn run(&mut self, c: usize) {
        if c == self.choice.len() {
            let v = self.sums.iter().copied().fold(0.0, f64::max);
            if v < self.best {
                self.best = v;
                self.best_choice = Some(self.choice.clone());
            }
            return;
        }
        for w in 0..self.powered[c].len() {
            if self.distinct && self.used[w] {
                continue;
            }
            let add = &self.powered[c][w];
            if self.sums.iter().zip(add).any(|(s, a)| s + a >= self.best) {
                continue;
            }
            for (s, a) in self.sums.iter_mut().zip(add) {
                *s += a;
            }
            self.used[w] = true;
            self.choice[c] = w;
            self.run(c + 1);
            self.used[w] = false;
            for (s, a) in self.sums.iter_mut().zip(add) {
                *s -= a;
            }
        }
    }
}

fn threshold_adjacency(table: &[f64], width: usize, r: f64) -> Vec<Vec<usize>> {
    table
        .chunks(width)
        .map(|row| (0..width).filter(|&w| row[w] <= r).collect())
        .collect()
}

/// Simple augmenting-path matcher; returns a left-perfect assignment.
fn kuhn(adj: &[Vec<usize>], right: usize) -> Option<Vec<usize>> {
    fn augment(u: usize, adj: &[Vec<usize>], seen: &mut [bool], owner: &mut [Option<usize>]) -> bool {
        for &v in &adj[u] {
            if seen[v] {
                continue;
            }
            seen[v] = true;
            if owner[v].map_or(true, |w| augment(w, adj, seen, owner)) {
                owner[v] = Some(u);
                return true;
            }
        }
        false
    }
    let mut owner = vec![None; right];
    for u in 0..adj.len() {
        let mut seen = vec![false; right];
        if !augment(u, adj, &mut seen, &mut owner) {
            return None;
        }
    }
    let mut assign = vec![0; adj.len()];
    for (v, o) in owner.iter().enumerate() {
        if let Some(u) = o {
            assign[*u] = v;
        }
    }
    Some(assign)
}

/// Lexicographic successor; on the last permutation resets to sorted order
/// and returns `false`.
fn next_permutation(a: &mut [usize]) -> bool {
    if a.len() < 2 {
        return false;
    }
    let mut i = a.len() - 1;
    while i > 0 && a[i - 1] >= a[i] {
        i -= 1;
    }
    if i == 0 {
        a.reverse();
        return false;
    }
    let mut j = a.len() - 1;
    while a[j] <= a[i - 1] {
        j -= 1;
    }
    a.swap(i - 1, j);
    a[i..].reverse();
    true
}
