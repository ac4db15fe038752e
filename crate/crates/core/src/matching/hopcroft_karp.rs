use std::collections::VecDeque;

use super::{BipartiteGraph, Matching};

/// Maximum-cardinality matching. Left vertices and their adjacency lists are
/// scanned in index order, which fixes the result for a given graph.
pub fn max_cardinality_matching(g: &BipartiteGraph) -> Matching {
    let (pairs, _) = run(g.adjacency(), g.right_size());
    Matching {
        pairs,
        bottleneck_cost: None,
        total_cost: None,
    }
}

const UNREACHED: usize = usize::MAX;

pub(crate) fn run(adj: &[Vec<usize>], right: usize) -> (Vec<Option<usize>>, usize) {
    let left = adj.len();
    let mut match_left: Vec<Option<usize>> = vec![None; left];
    let mut match_right: Vec<Option<usize>> = vec![None; right];
    let mut dist = vec![UNREACHED; left];
    let mut size = 0;

    // greedy warm start
    for u in 0..left {
        if let Some(&v) = adj[u].iter().find(|&&v| match_right[v].is_none()) {
            match_left[u] = Some(v);
            match_right[v] = Some(u);
            size += 1;
        }
    }

    let mut queue = VecDeque::with_capacity(left);
    let mut next_edge = vec![0usize; left];
    loop {
        queue.clear();
        for u in 0..left {
            if match_left[u].is_none() {
                dist[u] = 0;
                queue.push_back(u);
            } else {
                dist[u] = UNREACHED;
            }
        }
        let mut found = false;
        while let Some(u) = queue.pop_front() {
            for &v in &adj[u] {
                match match_right[v] {
                    None => found = true,
                    Some(w) if dist[w] == UNREACHED => {
                        dist[w] = dist[u] + 1;
                        queue.push_back(w);
                    }
                    _ => {}
                }
            }
        }
        if !found {
            break;
        }
        next_edge.iter_mut().for_each(|e| *e = 0);
        for u in 0..left {
            if match_left[u].is_none()
                && augment(u, adj, &mut match_left, &mut match_right, &mut dist, &mut next_edge)
            {
                size += 1;
            }
        }
    }
    (match_left, size)
}

fn augment(
    u: usize,
    adj: &[Vec<usize>],
    match_left: &mut [Option<usize>],
    match_right: &mut [Option<usize>],
    dist: &mut [usize],
    next_edge: &mut [usize],
) -> bool {
    while next_edge[u] < adj[u].len() {
        let v = adj[u][next_edge[u]];
        next_edge[u] += 1;
        let ok = match match_right[v] {
            None => true,
            Some(w) => {
                dist[w] == dist[u] + 1
                    && augment(w, adj, match_left, match_right, dist, next_edge)
            }
        };
        if ok {
            match_left[u] = Some(v);
            match_right[v] = Some(u);
            return true;
        }
    }
    dist[u] = UNREACHED;
    false
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn complete_three_by_three() {
        let g = BipartiteGraph::new(3, vec![vec![0, 1, 2]; 3]).unwrap();
        let m = max_cardinality_matching(&g);
        assert_eq!(m.cardinality(), 3);
        assert!(m.is_injective());
    }

    #[test]
    fn shared_right_vertex() {
        let g = BipartiteGraph::new(2, vec![vec![0], vec![0]]).unwrap();
        let m = max_cardinality_matching(&g);
        assert_eq!(m.cardinality(), 1);
        assert_eq!(m.pairs, vec![Some(0), None]);
    }

    #[test]
    fn empty_adjacency() {
        let g = BipartiteGraph::new(3, vec![vec![]; 3]).unwrap();
        assert_eq!(max_cardinality_matching(&g).cardinality(), 0);
    }

    #[test]
    fn needs_augmenting_path() {
        // greedy picks 0-0, then 1 must reroute 0 to 1
        let g = BipartiteGraph::new(2, vec![vec![0, 1], vec![0]]).unwrap();
        let m = max_cardinality_matching(&g);
        assert_eq!(m.pairs, vec![Some(1), Some(0)]);
    }

    #[test]
    fn rectangular_sides() {
        let g = BipartiteGraph::new(4, vec![vec![3], vec![3], vec![0, 3]]).unwrap();
        let m = max_cardinality_matching(&g);
        assert_eq!(m.cardinality(), 2);
        assert!(m.is_injective());
    }
}
