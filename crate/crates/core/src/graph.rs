//! Temporal graphs, their static footprints, and the text format.
//!
//! A [`TemporalGraph`] is immutable once built. Every operator returns a new
//! graph, so a graph can be shared freely between threads.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

pub type VertexSet = BTreeSet<usize>;

/// An undirected edge `{u, v}` active at time `t`, stored with `u < v`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TemporalEdge {
    pub u: usize,
    pub v: usize,
    pub t: u32,
}

impl TemporalEdge {
    /// Canonical edge; endpoints are reordered so that `u < v`.
    /// Self-loops are not rejected here, see [`TemporalGraph::build`].
    pub fn new(a: usize, b: usize, t: u32) -> Self {
        TemporalEdge {
            u: a.min(b),
            v: a.max(b),
            t,
        }
    }

    pub fn touches(&self, x: usize) -> bool {
        self.u == x || self.v == x
    }

    /// The endpoint opposite to `x`. `x` must be an endpoint.
    pub fn other(&self, x: usize) -> usize {
        debug_assert!(self.touches(x));
        if self.u == x {
            self.v
        } else {
            self.u
        }
    }

    pub fn pair(&self) -> (usize, usize) {
        (self.u, self.v)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TemporalGraph {
    n: usize,
    tau: u32,
    /// Sorted by `(u, v, t)`.
    edges: Vec<TemporalEdge>,
    /// `by_time[t]` holds indices into `edges`; slot 0 is unused.
    by_time: Vec<Vec<usize>>,
    /// Incident edge indices per vertex, sorted by `(t, other endpoint)`.
    by_vertex: Vec<Vec<usize>>,
    removed: Vec<bool>,
}

impl TemporalGraph {
    /// Validates raw `(u, v, t)` triples and builds the indices.
    /// Duplicate triples (in either orientation) are merged.
    pub fn build<I>(n: usize, tau: u32, raw_edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize, u32)>,
    {
        let mut edges = Vec::new();
        for (u, v, t) in raw_edges {
            check_edge(n, tau, u, v, t)?;
            edges.push(TemporalEdge::new(u, v, t));
        }
        edges.sort_unstable();
        edges.dedup();
        Ok(Self::from_sorted(n, tau, edges, vec![false; n]))
    }

    fn from_sorted(n: usize, tau: u32, edges: Vec<TemporalEdge>, removed: Vec<bool>) -> Self {
        let mut by_time = vec![Vec::new(); tau as usize + 1];
        let mut by_vertex = vec![Vec::new(); n];
        for (i, e) in edges.iter().enumerate() {
            by_time[e.t as usize].push(i);
            by_vertex[e.u].push(i);
            by_vertex[e.v].push(i);
        }
        for (x, list) in by_vertex.iter_mut().enumerate() {
            list.sort_by_key(|&i| (edges[i].t, edges[i].other(x)));
        }
        TemporalGraph {
            n,
            tau,
            edges,
            by_time,
            by_vertex,
            removed,
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn tau(&self) -> u32 {
        self.tau
    }

    pub fn edges(&self) -> &[TemporalEdge] {
        &self.edges
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn max_label(&self) -> Option<u32> {
        self.edges.iter().map(|e| e.t).max()
    }

    /// Edges of the layer at time `t` (empty outside `[1, tau]`).
    pub fn edges_at(&self, t: u32) -> impl Iterator<Item = &TemporalEdge> + '_ {
        self.by_time
            .get(t as usize)
            .into_iter()
            .flatten()
            .map(move |&i| &self.edges[i])
    }

    /// Incident edges of `x`, ordered by time label then by the other endpoint.
    pub fn incident(&self, x: usize) -> impl Iterator<Item = &TemporalEdge> + '_ {
        self.by_vertex[x].iter().map(move |&i| &self.edges[i])
    }

    /// Incident edges of `x` with label exactly `t`.
    pub fn incident_at(&self, x: usize, t: u32) -> impl Iterator<Item = &TemporalEdge> + '_ {
        let list = &self.by_vertex[x];
        let lo = list.partition_point(|&i| self.edges[i].t < t);
        let hi = list.partition_point(|&i| self.edges[i].t <= t);
        list[lo..hi].iter().map(move |&i| &self.edges[i])
    }

    pub fn degree(&self, x: usize) -> usize {
        self.by_vertex[x].len()
    }

    pub fn contains_edge(&self, a: usize, b: usize, t: u32) -> bool {
        self.edges.binary_search(&TemporalEdge::new(a, b, t)).is_ok()
    }

    /// Labels of all edges joining `a` and `b`, ascending.
    pub fn labels_between(&self, a: usize, b: usize) -> Vec<u32> {
        let (u, v) = (a.min(b), a.max(b));
        let lo = self.edges.partition_point(|e| (e.u, e.v) < (u, v));
        self.edges[lo..]
            .iter()
            .take_while(|e| (e.u, e.v) == (u, v))
            .map(|e| e.t)
            .collect()
    }

    pub fn is_removed(&self, x: usize) -> bool {
        self.removed[x]
    }

    pub fn removed_vertices(&self) -> VertexSet {
        (0..self.n).filter(|&x| self.removed[x]).collect()
    }

    pub(crate) fn removed_mask(&self) -> &[bool] {
        &self.removed
    }

    /// The underlying static graph: one edge per pair that is ever active.
    pub fn footprint(&self) -> StaticGraph {
        let mut pairs: Vec<(usize, usize)> = self.edges.iter().map(|e| e.pair()).collect();
        pairs.dedup();
        StaticGraph {
            n: self.n,
            edges: pairs,
        }
    }

    /// The static layer `G_t`.
    pub fn layer(&self, t: u32) -> StaticGraph {
        let mut pairs: Vec<(usize, usize)> = self.edges_at(t).map(|e| e.pair()).collect();
        pairs.sort_unstable();
        StaticGraph {
            n: self.n,
            edges: pairs,
        }
    }

    /// `G[t1:t2]`: the edges with labels in `[t1, t2]`, with lifetime `t2`.
    pub fn restrict(&self, t1: u32, t2: u32) -> Result<Self> {
        if t1 > t2 {
            return Err(Error::EmptyInterval { from: t1, to: t2 });
        }
        for t in [t1, t2] {
            if t < 1 || t > self.tau {
                return Err(Error::TimeOutOfRange { time: t, tau: self.tau });
            }
        }
        let edges = self
            .edges
            .iter()
            .copied()
            .filter(|e| e.t >= t1 && e.t <= t2)
            .collect();
        Ok(Self::from_sorted(self.n, t2, edges, self.removed.clone()))
    }

    /// Deletes every edge incident to `set` and marks those vertices as removed.
    pub fn remove_vertices(&self, set: &VertexSet) -> Result<Self> {
        let mut removed = self.removed.clone();
        for &x in set {
            if x >= self.n {
                return Err(Error::VertexOutOfRange { vertex: x, n: self.n });
            }
            removed[x] = true;
        }
        let edges = self
            .edges
            .iter()
            .copied()
            .filter(|e| !removed[e.u] && !removed[e.v])
            .collect();
        Ok(Self::from_sorted(self.n, self.tau, edges, removed))
    }

    /// Keeps only the edges accepted by `keep`. Removal marks are preserved.
    pub fn filter_edges(&self, mut keep: impl FnMut(&TemporalEdge) -> bool) -> Self {
        let edges = self.edges.iter().copied().filter(|e| keep(e)).collect();
        Self::from_sorted(self.n, self.tau, edges, self.removed.clone())
    }

    pub(crate) fn check_vertex(&self, x: usize) -> Result<()> {
        if x >= self.n {
            Err(Error::VertexOutOfRange { vertex: x, n: self.n })
        } else {
            Ok(())
        }
    }
}

fn check_edge(n: usize, tau: u32, u: usize, v: usize, t: u32) -> Result<()> {
    for x in [u, v] {
        if x >= n {
            return Err(Error::VertexOutOfRange { vertex: x, n });
        }
    }
    if u == v {
        return Err(Error::SelfLoop { vertex: u, time: t });
    }
    if t < 1 || t > tau {
        return Err(Error::TimeOutOfRange { time: t, tau });
    }
    Ok(())
}

/// Canonical text form: a `tg <n> <tau>` header, then one `u v t` line per edge.
impl fmt::Display for TemporalGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "tg {} {}", self.n, self.tau)?;
        for e in &self.edges {
            writeln!(f, "{} {} {}", e.u, e.v, e.t)?;
        }
        Ok(())
    }
}

impl FromStr for TemporalGraph {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        let mut lines = content_lines(text);
        let (line_no, header) = lines
            .next()
            .ok_or_else(|| Error::parse(1, "missing `tg <n> <tau>` header"))?;
        let fields: Vec<&str> = header.split_whitespace().collect();
        if fields.len() != 3 || fields[0] != "tg" {
            return Err(Error::parse(line_no, "expected `tg <n> <tau>`"));
        }
        let n: usize = parse_field(line_no, fields[1], "vertex count")?;
        let tau: u32 = parse_field(line_no, fields[2], "lifetime")?;
        if tau == 0 {
            return Err(Error::parse(line_no, "lifetime must be positive"));
        }
        let mut seen = BTreeSet::new();
        let mut raw = Vec::new();
        for (line_no, line) in lines {
            let fields: Vec<&str> = line.split_whitespace().collect();
            if fields.len() != 3 {
                return Err(Error::parse(line_no, "expected `<u> <v> <t>`"));
            }
            let u: usize = parse_field(line_no, fields[0], "vertex")?;
            let v: usize = parse_field(line_no, fields[1], "vertex")?;
            let t: u32 = parse_field(line_no, fields[2], "time label")?;
            check_edge(n, tau, u, v, t)?;
            if !seen.insert(TemporalEdge::new(u, v, t)) {
                return Err(Error::DuplicateEdge { u, v, time: t });
            }
            raw.push((u, v, t));
        }
        TemporalGraph::build(n, tau, raw)
    }
}

/// Non-empty lines with `#` comments stripped, paired with 1-based line numbers.
pub(crate) fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().filter_map(|(i, line)| {
        let line = line.split('#').next().unwrap_or("").trim();
        (!line.is_empty()).then_some((i + 1, line))
    })
}

pub(crate) fn parse_field<T: FromStr>(line: usize, field: &str, what: &str) -> Result<T> {
    field
        .parse()
        .map_err(|_| Error::parse(line, format!("invalid {what} `{field}`")))
}

/// Simple undirected graph: footprints, layers and reduction sources.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StaticGraph {
    n: usize,
    /// Canonical `(min, max)` pairs, sorted and duplicate-free.
    edges: Vec<(usize, usize)>,
}

impl StaticGraph {
    pub fn new<I>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut pairs = Vec::new();
        for (a, b) in edges {
            for x in [a, b] {
                if x >= n {
                    return Err(Error::VertexOutOfRange { vertex: x, n });
                }
            }
            if a == b {
                return Err(Error::SelfLoop { vertex: a, time: 0 });
            }
            pairs.push((a.min(b), a.max(b)));
        }
        pairs.sort_unstable();
        pairs.dedup();
        Ok(StaticGraph { n, edges: pairs })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn contains_edge(&self, a: usize, b: usize) -> bool {
        self.edges.binary_search(&(a.min(b), a.max(b))).is_ok()
    }

    pub fn edge_index(&self, a: usize, b: usize) -> Option<usize> {
        self.edges.binary_search(&(a.min(b), a.max(b))).ok()
    }

    /// Sorted neighbour lists.
    pub fn adjacency(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.n];
        for &(a, b) in &self.edges {
            adj[a].push(b);
            adj[b].push(a);
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        adj
    }

    pub fn degree(&self, x: usize) -> usize {
        self.edges.iter().filter(|&&(a, b)| a == x || b == x).count()
    }

    /// Static vertex deletion: drops every edge touching `set`.
    pub fn remove_vertices(&self, set: &VertexSet) -> StaticGraph {
        StaticGraph {
            n: self.n,
            edges: self
                .edges
                .iter()
                .copied()
                .filter(|(a, b)| !set.contains(a) && !set.contains(b))
                .collect(),
        }
    }

    /// Vertices reachable from `start` (including `start`).
    pub fn component_of(&self, start: usize) -> VertexSet {
        let adj = self.adjacency();
        let mut seen = VertexSet::new();
        let mut stack = vec![start];
        seen.insert(start);
        while let Some(x) = stack.pop() {
            for &y in &adj[x] {
                if seen.insert(y) {
                    stack.push(y);
                }
            }
        }
        seen
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn graph(n: usize, tau: u32, edges: &[(usize, usize, u32)]) -> TemporalGraph {
        TemporalGraph::build(n, tau, edges.iter().copied()).unwrap()
    }

    #[test]
    fn build_single_edge() {
        let g = graph(3, 2, &[(0, 1, 1)]);
        assert_eq!(g.edge_count(), 1);
        let layer: Vec<_> = g.edges_at(1).copied().collect();
        assert_eq!(layer, vec![TemporalEdge::new(0, 1, 1)]);
        assert_eq!(g.edges_at(2).count(), 0);
    }

    #[test]
    fn build_rejects_self_loop_and_bad_labels() {
        assert!(matches!(
            TemporalGraph::build(2, 1, [(0, 0, 1)]),
            Err(Error::SelfLoop { vertex: 0, .. })
        ));
        assert!(matches!(
            TemporalGraph::build(2, 2, [(0, 1, 3)]),
            Err(Error::TimeOutOfRange { time: 3, .. })
        ));
        assert!(matches!(
            TemporalGraph::build(2, 2, [(0, 1, 0)]),
            Err(Error::TimeOutOfRange { time: 0, .. })
        ));
        assert!(matches!(
            TemporalGraph::build(2, 2, [(0, 5, 1)]),
            Err(Error::VertexOutOfRange { vertex: 5, .. })
        ));
    }

    #[test]
    fn build_canonicalizes_and_dedups() {
        let g = graph(3, 2, &[(1, 0, 1), (0, 1, 1), (2, 1, 2)]);
        assert_eq!(
            g.edges(),
            &[TemporalEdge::new(0, 1, 1), TemporalEdge::new(1, 2, 2)]
        );
        assert_eq!(g.incident(1).count(), 2);
    }

    #[test]
    fn footprint_collapses_labels() {
        let g = graph(3, 2, &[(0, 1, 1), (0, 1, 2)]);
        assert_eq!(g.footprint().edges(), &[(0, 1)]);
        assert!(graph(3, 2, &[]).footprint().edges().is_empty());
        let p = graph(3, 2, &[(0, 1, 1), (1, 2, 2)]);
        assert_eq!(p.footprint().edges(), &[(0, 1), (1, 2)]);
        assert_eq!(p.layer(2).edges(), &[(1, 2)]);
    }

    #[test]
    fn restrict_filters_labels() {
        let g = graph(2, 5, &[(0, 1, 1), (0, 1, 2), (0, 1, 3), (0, 1, 4), (0, 1, 5)]);
        let r = g.restrict(2, 4).unwrap();
        let labels: Vec<u32> = r.edges().iter().map(|e| e.t).collect();
        assert_eq!(labels, vec![2, 3, 4]);
        assert_eq!(r.tau(), 4);
        assert_eq!(g.restrict(1, 5).unwrap().edges(), g.edges());
        assert!(matches!(g.restrict(4, 2), Err(Error::EmptyInterval { .. })));
        assert!(matches!(g.restrict(1, 6), Err(Error::TimeOutOfRange { .. })));
    }

    #[test]
    fn remove_vertices_cases() {
        let g = graph(3, 1, &[(0, 1, 1), (1, 2, 1)]);
        let cut = g.remove_vertices(&[1].into()).unwrap();
        assert_eq!(cut.edge_count(), 0);
        assert!(cut.is_removed(1));
        assert_eq!(g.remove_vertices(&VertexSet::new()).unwrap(), g);
        assert_eq!(g.remove_vertices(&[0, 1, 2].into()).unwrap().edge_count(), 0);
        assert!(matches!(
            g.remove_vertices(&[7].into()),
            Err(Error::VertexOutOfRange { vertex: 7, .. })
        ));
    }

    #[test]
    fn text_format_round_trip_and_errors() {
        let text = "# demo\ntg 3 4\n0 1 1  # first\n\n2 1 3\n";
        let g: TemporalGraph = text.parse().unwrap();
        assert_eq!(g.to_string(), "tg 3 4\n0 1 1\n1 2 3\n");
        assert_eq!(g.to_string().parse::<TemporalGraph>().unwrap(), g);

        assert!(matches!(
            "tg 3 4\n0 1 1\n1 0 1\n".parse::<TemporalGraph>(),
            Err(Error::DuplicateEdge { .. })
        ));
        assert!(matches!(
            "graph 3 4\n".parse::<TemporalGraph>(),
            Err(Error::Parse { line: 1, .. })
        ));
        assert!(matches!(
            "tg 3 4\n0 1\n".parse::<TemporalGraph>(),
            Err(Error::Parse { line: 2, .. })
        ));
        assert!(matches!(
            "tg 3 4\n0 1 9\n".parse::<TemporalGraph>(),
            Err(Error::TimeOutOfRange { .. })
        ));
    }

    #[test]
    fn incident_at_and_labels_between() {
        let g = graph(4, 3, &[(0, 1, 2), (0, 2, 1), (0, 3, 2), (0, 1, 3)]);
        let at2: Vec<usize> = g.incident_at(0, 2).map(|e| e.other(0)).collect();
        assert_eq!(at2, vec![1, 3]);
        assert_eq!(g.labels_between(1, 0), vec![2, 3]);
        assert!(g.labels_between(2, 3).is_empty());
    }
}
