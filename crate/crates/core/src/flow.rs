//! Static directed graphs and minimum vertex cuts via max flow.

use std::collections::{BTreeSet, VecDeque};

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StaticDigraph {
    node_count: usize,
    source: usize,
    sink: usize,
    arcs: Vec<(usize, usize)>,
    origin: Vec<Option<(usize, u32)>>,
    out: Vec<Vec<usize>>,
}

impl StaticDigraph {
    /// Builds a digraph without origin information. Self-arcs are rejected and
    /// duplicate arcs collapse.
    pub fn new(
        node_count: usize,
        source: usize,
        sink: usize,
        arcs: impl IntoIterator<Item = (usize, usize)>,
    ) -> Result<Self> {
        Self::with_origin(node_count, source, sink, arcs, vec![None; node_count])
    }

    pub(crate) fn with_origin(
        node_count: usize,
        source: usize,
        sink: usize,
        arcs: impl IntoIterator<Item = (usize, usize)>,
        origin: Vec<Option<(usize, u32)>>,
    ) -> Result<Self> {
        for x in [source, sink] {
            if x >= node_count {
                return Err(Error::VertexOutOfRange {
                    vertex: x,
                    n: node_count,
                });
            }
        }
        if source == sink {
            return Err(Error::SameTerminals(source));
        }
        let mut list: Vec<(usize, usize)> = Vec::new();
        for (a, b) in arcs {
            for x in [a, b] {
                if x >= node_count {
                    return Err(Error::VertexOutOfRange {
                        vertex: x,
                        n: node_count,
                    });
                }
            }
            if a == b {
                return Err(Error::PreconditionViolated(format!("self-arc on node {a}")));
            }
            list.push((a, b));
        }
        list.sort_unstable();
        list.dedup();
        let mut out = vec![Vec::new(); node_count];
        for &(a, b) in &list {
            out[a].push(b);
        }
        Ok(StaticDigraph {
            node_count,
            source,
            sink,
            arcs: list,
            origin,
            out,
        })
    }

    pub fn node_count(&self) -> usize {
        self.node_count
    }

    pub fn source(&self) -> usize {
        self.source
    }

    pub fn sink(&self) -> usize {
        self.sink
    }

    pub fn arcs(&self) -> &[(usize, usize)] {
        &self.arcs
    }

    pub fn successors(&self, x: usize) -> &[usize] {
        &self.out[x]
    }

    pub fn has_arc(&self, a: usize, b: usize) -> bool {
        self.arcs.binary_search(&(a, b)).is_ok()
    }

    /// The `(vertex, time)` copy a node stands for; `None` for terminals.
    pub fn origin(&self, x: usize) -> Option<(usize, u32)> {
        self.origin.get(x).copied().flatten()
    }

    /// Breadth-first source-to-sink path avoiding `removed`, smallest ids first.
    pub fn find_path(&self, removed: &BTreeSet<usize>) -> Option<Vec<usize>> {
        let mut prev = vec![usize::MAX; self.node_count];
        let mut queue = VecDeque::from([self.source]);
        prev[self.source] = self.source;
        while let Some(x) = queue.pop_front() {
            if x == self.sink {
                let mut path = vec![x];
                let mut cur = x;
                while cur != self.source {
                    cur = prev[cur];
                    path.push(cur);
                }
                path.reverse();
                return Some(path);
            }
            for &y in &self.out[x] {
                if prev[y] == usize::MAX && !removed.contains(&y) {
                    prev[y] = x;
                    queue.push_back(y);
                }
            }
        }
        None
    }

    pub fn is_static_separator(&self, set: &BTreeSet<usize>) -> bool {
        !set.contains(&self.source) && !set.contains(&self.sink) && self.find_path(set).is_none()
    }
}

struct FlowNet {
    head: Vec<usize>,
    cap: Vec<usize>,
    adj: Vec<Vec<usize>>,
}

impl FlowNet {
    fn new(nodes: usize) -> Self {
        FlowNet {
            head: Vec::new(),
            cap: Vec::new(),
            adj: vec![Vec::new(); nodes],
        }
    }

    fn add(&mut self, a: usize, b: usize, c: usize) {
        self.adj[a].push(self.head.len());
        self.head.push(b);
        self.cap.push(c);
        self.adj[b].push(self.head.len());
        self.head.push(a);
        self.cap.push(0);
    }

    fn sort_adjacency(&mut self) {
        let head = &self.head;
        for list in &mut self.adj {
            list.sort_by_key(|&e| (head[e], e));
        }
    }

    /// Residual BFS from `from`; returns predecessor arcs.
    fn bfs(&self, from: usize) -> Vec<Option<usize>> {
        let mut pred = vec![None; self.adj.len()];
        let mut seen = vec![false; self.adj.len()];
        seen[from] = true;
        let mut queue = VecDeque::from([from]);
        while let Some(x) = queue.pop_front() {
            for &e in &self.adj[x] {
                let y = self.head[e];
                if self.cap[e] > 0 && !seen[y] {
                    seen[y] = true;
                    pred[y] = Some(e);
                    queue.push_back(y);
                }
            }
        }
        pred
    }

    /// Edmonds-Karp; returns the flow value.
    fn max_flow(&mut self, s: usize, t: usize) -> usize {
        let mut total = 0;
        loop {
            let pred = self.bfs(s);
            if pred[t].is_none() {
                return total;
            }
            let mut push = usize::MAX;
            let mut x = t;
            while x != s {
                let e = pred[x].expect("on the augmenting path");
                push = push.min(self.cap[e]);
                x = self.head[e ^ 1];
            }
            let mut x = t;
            while x != s {
                let e = pred[x].expect("on the augmenting path");
                self.cap[e] -= push;
                self.cap[e ^ 1] += push;
                x = self.head[e ^ 1];
            }
            total += push;
        }
    }

    fn reachable(&self, s: usize) -> Vec<bool> {
        let pred = self.bfs(s);
        (0..self.adj.len()).map(|x| x == s || pred[x].is_some()).collect()
    }
}

/// Minimum set of non-terminal nodes whose removal disconnects source from sink.
pub fn min_static_vertex_separator(d: &StaticDigraph) -> Result<BTreeSet<usize>> {
    if d.has_arc(d.source, d.sink) {
        return Err(Error::DirectArc);
    }
    let n = d.node_count;
    let inf = n + 1;
    let (in_half, out_half) = (|x: usize| 2 * x, |x: usize| 2 * x + 1);
    let mut net = FlowNet::new(2 * n);
    for x in 0..n {
        let c = if x == d.source || x == d.sink { inf } else { 1 };
        net.add(in_half(x), out_half(x), c);
    }
    for &(a, b) in &d.arcs {
        net.add(out_half(a), in_half(b), inf);
    }
    net.sort_adjacency();
    net.max_flow(out_half(d.source), in_half(d.sink));
    let seen = net.reachable(out_half(d.source));
    Ok((0..n)
        .filter(|&x| x != d.source && x != d.sink && seen[in_half(x)] && !seen[out_half(x)])
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(xs: &[usize]) -> BTreeSet<usize> {
        xs.iter().copied().collect()
    }

    #[test]
    fn diamond_needs_both_middles() {
        // s=0, a=1, b=2, z=3
        let d = StaticDigraph::new(4, 0, 3, [(0, 1), (1, 3), (0, 2), (2, 3)]).unwrap();
        assert_eq!(min_static_vertex_separator(&d).unwrap(), set(&[1, 2]));
    }

    #[test]
    fn chain_and_direct_arc() {
        let chain = StaticDigraph::new(3, 0, 2, [(0, 1), (1, 2)]).unwrap();
        assert_eq!(min_static_vertex_separator(&chain).unwrap(), set(&[1]));
        let direct = StaticDigraph::new(3, 0, 2, [(0, 2), (0, 1)]).unwrap();
        assert_eq!(min_static_vertex_separator(&direct), Err(Error::DirectArc));
    }

    #[test]
    fn bottleneck_beats_wide_layers() {
        // s -> {1,2,3} -> 4 -> {5,6} -> z
        let arcs = [(0, 1), (0, 2), (0, 3), (1, 4), (2, 4), (3, 4), (4, 5), (4, 6), (5, 7), (6, 7)];
        let d = StaticDigraph::new(8, 0, 7, arcs).unwrap();
        let cut = min_static_vertex_separator(&d).unwrap();
        assert_eq!(cut, set(&[4]));
        assert!(d.is_static_separator(&cut));
    }

    #[test]
    fn direction_matters() {
        // only arc into 1 goes the wrong way
        let d = StaticDigraph::new(3, 0, 2, [(1, 0), (1, 2)]).unwrap();
        assert!(min_static_vertex_separator(&d).unwrap().is_empty());
        assert_eq!(d.find_path(&BTreeSet::new()), None);
    }

    #[test]
    fn rejects_self_arcs() {
        assert!(StaticDigraph::new(2, 0, 1, [(1, 1)]).is_err());
    }
}
