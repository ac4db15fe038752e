use std::collections::VecDeque;

use crate::error::{Error, Result};

/// Directed network in which every arc has capacity one.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FlowNetwork {
    pub node_count: usize,
    pub arcs: Vec<(usize, usize)>,
    pub source: usize,
    pub sink: usize,
}

impl FlowNetwork {
    pub fn new(node_count: usize, source: usize, sink: usize) -> Self {
        Self {
            node_count,
            arcs: Vec::new(),
            source,
            sink,
        }
    }

    pub fn add_arc(&mut self, from: usize, to: usize) -> usize {
        self.arcs.push((from, to));
        self.arcs.len() - 1
    }

    fn check(&self) -> Result<()> {
        let n = self.node_count;
        if self.source >= n || self.sink >= n {
            return Err(Error::MalformedNetwork(format!(
                "source {} / sink {} outside {} nodes",
                self.source, self.sink, n
            )));
        }
        if self.source == self.sink {
            return Err(Error::MalformedNetwork("source equals sink".into()));
        }
        if let Some((i, &(a, b))) = self
            .arcs
            .iter()
            .enumerate()
            .find(|(_, &(a, b))| a >= n || b >= n)
        {
            return Err(Error::MalformedNetwork(format!(
                "arc {i} ({a} -> {b}) references a node outside 0..{n}"
            )));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FlowResult {
    pub value: usize,
    /// Indices into `FlowNetwork::arcs` of the arcs carrying one unit.
    pub used_arcs: Vec<usize>,
}

struct Edge {
    to: usize,
    rev: usize,
    cap: u32,
}

/// Maximum s-t flow under unit capacities (Dinic).
pub fn max_flow_unit(net: &FlowNetwork) -> Result<FlowResult> {
    net.check()?;
    let n = net.node_count;
    let mut graph: Vec<Vec<Edge>> = (0..n).map(|_| Vec::new()).collect();
    let mut handles = Vec::with_capacity(net.arcs.len());
    for &(a, b) in &net.arcs {
        let ia = graph[a].len();
        let ib = graph[b].len() + usize::from(a == b);
        graph[a].push(Edge { to: b, rev: ib, cap: 1 });
        graph[b].push(Edge { to: a, rev: ia, cap: 0 });
        handles.push((a, ia));
    }

    let (s, t) = (net.source, net.sink);
    let mut level = vec![u32::MAX; n];
    let mut next = vec![0usize; n];
    let mut queue = VecDeque::new();
    let mut value = 0;
    loop {
        level.iter_mut().for_each(|l| *l = u32::MAX);
        level[s] = 0;
        queue.clear();
        queue.push_back(s);
        while let Some(u) = queue.pop_front() {
            for e in &graph[u] {
                if e.cap > 0 && level[e.to] == u32::MAX {
                    level[e.to] = level[u] + 1;
                    queue.push_back(e.to);
                }
            }
        }
        if level[t] == u32::MAX {
            break;
        }
        next.iter_mut().for_each(|i| *i = 0);
        while push(s, t, &mut graph, &level, &mut next) {
            value += 1;
        }
    }

    let used_arcs = handles
        .iter()
        .enumerate()
        .filter(|(_, &(a, ia))| graph[a][ia].cap == 0)
        .map(|(i, _)| i)
        .collect();
    Ok(FlowResult { value, used_arcs })
}

fn push(u: usize, t: usize, graph: &mut [Vec<Edge>], level: &[u32], next: &mut [usize]) -> bool {
    if u == t {
        return true;
    }
    while next[u] < graph[u].len() {
        let i = next[u];
        let (to, cap) = (graph[u][i].to, graph[u][i].cap);
        if cap > 0 && level[to] == level[u] + 1 && push(to, t, graph, level, next) {
            let rev = graph[u][i].rev;
            graph[u][i].cap -= 1;
            graph[to][rev].cap += 1;
            return true;
        }
        next[u] += 1;
    }
    false
}
