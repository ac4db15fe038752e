mod common;

use common::{oracle_continuous_center, oracle_discrete_center, Ground};
use pdcenter::center::{brute_force_center, brute_force_feasible, Algorithm};
use pdcenter::instances::{
    gen_circle, gen_element_gadget, gen_gap, gen_tight, gen_triple_gadget, gen_triple_gadget_partial,
    gen_wasserstein_gadget, generate, point_sets, shift_from_diagonal, GenKind, GenSpec,
};
use pdcenter::{
    approx_center, bottleneck_distance, center_diagrams, dist_point, wasserstein_distance, Diagram, Metric,
    Objective, Point, SelectionMode,
};

const TOL: f64 = 1e-9;

fn brute(sets: &[Vec<Point>], mode: SelectionMode, metric: Metric) -> f64 {
    brute_force_center(sets, mode, metric, Objective::Bottleneck)
        .unwrap()
        .objective_value
}

fn all_pairwise(sets: &[Vec<Point>], metric: Metric) -> Vec<f64> {
    let pts: Vec<Point> = sets.iter().flatten().copied().collect();
    let mut out = Vec::new();
    for a in &pts {
        for b in &pts {
            out.push(dist_point(*a, *b, metric));
        }
    }
    out
}

#[test]
fn tight_fixture_ratio_is_two() {
    let s = gen_tight();
    let a = approx_center(&s, SelectionMode::Continuous, Metric::LInf, Objective::Bottleneck).unwrap();
    assert_eq!(a.objective_value, 1.0);
    assert_eq!(a.centers(), vec![Point::new(0.0, 0.0)]);
    let b = brute_force_center(&s, SelectionMode::Continuous, Metric::LInf, Objective::Bottleneck).unwrap();
    assert_eq!(b.objective_value, 0.5);
    assert_eq!(b.centers(), vec![Point::new(0.5, 0.5)]);
    assert_eq!(oracle_continuous_center(&s, Ground::LInf), 0.5);
}

#[test]
fn gap_fixture_doubles_without_replacement() {
    let s = gen_gap();
    for (metric, ground) in [(Metric::L2, Ground::L2), (Metric::LInf, Ground::LInf)] {
        let nr = brute(&s, SelectionMode::NoReplacement, metric);
        let wr = brute_force_center(&s, SelectionMode::WithReplacement, metric, Objective::Bottleneck).unwrap();
        assert_eq!(nr, 1.0);
        assert_eq!(wr.objective_value, 0.5);
        assert_eq!(nr, oracle_discrete_center(&s, ground, true));
        assert_eq!(wr.objective_value, oracle_discrete_center(&s, ground, false));
        // the reused center
        let c = wr.centers();
        assert_eq!(c[0], c[1]);
    }
}

#[test]
fn circle_fixture_needs_radius_one() {
    let s = gen_circle();
    for p in s.iter().flatten() {
        let r = p.x.hypot(p.y);
        assert!(r == 0.0 || (r - 1.0).abs() < 1e-15);
    }
    assert_eq!(brute(&s, SelectionMode::NoReplacement, Metric::L2), 1.0);
    assert_eq!(oracle_discrete_center(&s, Ground::L2, true), 1.0);
}

#[test]
fn triple_gadget_dichotomy() {
    for (metric, ground) in [(Metric::L2, Ground::L2), (Metric::LInf, Ground::LInf)] {
        let off = gen_triple_gadget(false);
        assert_eq!(brute(&off, SelectionMode::NoReplacement, metric), 0.0);
        let on = gen_triple_gadget(true);
        let v = brute(&on, SelectionMode::NoReplacement, metric);
        assert!((v - 1.0 / 3.0).abs() < TOL, "{v}");
        assert_eq!(v, oracle_discrete_center(&on, ground, true));
        for r in all_pairwise(&on, metric) {
            if r > 0.0 && r < v {
                assert!(!brute_force_feasible(&on, SelectionMode::NoReplacement, metric, r).unwrap());
            }
        }
        if metric != Metric::L2 {
            // L-infinity balls admit an optimum that keeps two triple points together
            continue;
        }
        // the triple point is split across three clusters
        let sol = brute_force_center(&on, SelectionMode::NoReplacement, metric, Objective::Bottleneck).unwrap();
        let origin_members = sol
            .clusters
            .iter()
            .filter(|c| c.members.iter().enumerate().any(|(i, &k)| on[i][k] == Point::new(0., 0.)))
            .count();
        assert_eq!(origin_members, 3);
    }
}

#[test]
fn partial_pull_is_infeasible_at_one_third() {
    let s = gen_triple_gadget_partial();
    assert!(!brute_force_feasible(&s, SelectionMode::NoReplacement, Metric::L2, 1.0 / 3.0).unwrap());
    assert!(brute(&s, SelectionMode::NoReplacement, Metric::L2) > 1.0 / 3.0 + 1e-3);
}

#[test]
fn element_gadget_absorption() {
    for d in 2..=4 {
        let near = gen_element_gadget(d, true).unwrap();
        let v = brute(&near, SelectionMode::NoReplacement, Metric::L2);
        assert!((v - 1.0 / 3.0).abs() < TOL, "d={d}: {v}");
        let far = gen_element_gadget(d, false).unwrap();
        assert!(!brute_force_feasible(&far, SelectionMode::NoReplacement, Metric::L2, 1.0 / 3.0).unwrap());
    }
    let g = gen_element_gadget(2, true).unwrap();
    assert_eq!(g[0].len() + g[1].len() + g[2].len() - 2, 4);
}

#[test]
fn wasserstein_gadget_quarter_radius() {
    let s = gen_wasserstein_gadget();
    for metric in [Metric::L2, Metric::LInf] {
        let c = brute(&s, SelectionMode::Continuous, metric);
        assert!((c - 0.25).abs() < TOL, "{c}");
    }
    let w = brute_force_center(&s, SelectionMode::Continuous, Metric::LInf, Objective::Wasserstein(1.0)).unwrap();
    // four clusters, each contributing 1/4 to every set
    assert!((w.objective_value - 1.0).abs() < 1e-7, "{}", w.objective_value);
}

#[test]
fn shifted_gadgets_ignore_the_diagonal() {
    for sets in [gen_tight(), gen_triple_gadget(true), gen_wasserstein_gadget(), gen_circle()] {
        let ds = shift_from_diagonal(&sets).unwrap();
        for i in 0..sets.len() {
            for j in 0..sets.len() {
                let direct = pdcenter::matching::bottleneck_perfect_matching(sets[i].len(), sets[j].len(), |a, b| {
                    dist_point(sets[i][a], sets[j][b], Metric::LInf)
                })
                .unwrap()
                .bottleneck_cost
                .unwrap();
                assert!((bottleneck_distance(&ds[i], &ds[j]).unwrap() - direct).abs() < TOL);
            }
        }
        let raw = approx_center(&sets, SelectionMode::Continuous, Metric::LInf, Objective::Bottleneck).unwrap();
        let dg = center_diagrams(&ds, SelectionMode::Continuous, Objective::Bottleneck, Algorithm::Approx).unwrap();
        assert!((raw.objective_value - dg.objective_value).abs() < TOL);
    }
}

#[test]
fn random_and_fixture_generation_is_deterministic() {
    let spec = GenSpec {
        kind: GenKind::Random,
        n: 5,
        m: 3,
        seed: 42,
        ..GenSpec::default()
    };
    assert_eq!(generate(&spec).unwrap(), generate(&spec).unwrap());
    let other = GenSpec { seed: 43, ..spec.clone() };
    assert_ne!(generate(&spec).unwrap(), generate(&other).unwrap());
    for kind in GenKind::ALL {
        let s = GenSpec { kind, ..spec.clone() };
        let ds = generate(&s).unwrap();
        assert!(ds.len() >= 2);
        assert!(ds.iter().all(|d| d.points.iter().all(|p| p.y >= p.x)));
        assert_eq!(point_sets(&s).unwrap().len(), ds.len());
    }
}

#[test]
fn diagram_wasserstein_on_shifted_pair() {
    let ds: Vec<Diagram> = shift_from_diagonal(&[vec![Point::new(0., 0.)], vec![Point::new(1., 0.)]]).unwrap();
    assert_eq!(wasserstein_distance(&ds[0], &ds[1], 2.0).unwrap(), 1.0);
}
