//! Temporal paths, fastest-path computation and the deadline-path predicate.
//!
//! Everything here is built on a label-ordered sweep: starting from a vertex
//! with a first usable label, layers are processed in increasing time order and
//! a vertex becomes usable once it is reached. Trying every departure label of
//! the source turns the sweep into a fastest-path computation.

use std::collections::VecDeque;
use std::fmt;

use crate::error::{Error, Result};
use crate::graph::{TemporalEdge, TemporalGraph};

/// One traversal of an edge, oriented along the direction of travel.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Hop {
    pub from: usize,
    pub to: usize,
    pub t: u32,
}

impl Hop {
    pub fn new(from: usize, to: usize, t: u32) -> Self {
        Hop { from, to, t }
    }

    pub fn edge(&self) -> TemporalEdge {
        TemporalEdge::new(self.from, self.to, self.t)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TemporalPath {
    hops: Vec<Hop>,
    strict: bool,
}

impl TemporalPath {
    /// Checks continuity, label monotonicity and vertex-simplicity.
    /// An empty hop list is accepted and yields the empty path.
    pub fn new(hops: Vec<Hop>, strict: bool) -> Result<Self> {
        for pair in hops.windows(2) {
            let (a, b) = (pair[0], pair[1]);
            if a.to != b.from {
                return Err(Error::MalformedPath(format!(
                    "hop {:?} does not continue from {:?}",
                    b, a
                )));
            }
            if b.t < a.t || (strict && b.t == a.t) {
                return Err(Error::MalformedPath(format!(
                    "labels {} then {} violate {} order",
                    a.t,
                    b.t,
                    if strict { "strict" } else { "non-decreasing" }
                )));
            }
        }
        let path = TemporalPath { hops, strict };
        let mut seen = std::collections::BTreeSet::new();
        for x in path.vertices() {
            if !seen.insert(x) {
                return Err(Error::MalformedPath(format!("vertex {x} repeats")));
            }
        }
        Ok(path)
    }

    pub fn hops(&self) -> &[Hop] {
        &self.hops
    }

    pub fn is_strict(&self) -> bool {
        self.strict
    }

    pub fn is_empty(&self) -> bool {
        self.hops.is_empty()
    }

    pub fn len(&self) -> usize {
        self.hops.len()
    }

    pub fn source(&self) -> Option<usize> {
        self.hops.first().map(|h| h.from)
    }

    pub fn target(&self) -> Option<usize> {
        self.hops.last().map(|h| h.to)
    }

    /// Visited vertices in travel order.
    pub fn vertices(&self) -> Vec<usize> {
        let mut out: Vec<usize> = self.hops.iter().map(|h| h.from).collect();
        if let Some(last) = self.hops.last() {
            out.push(last.to);
        }
        out
    }

    /// Vertices strictly between the endpoints.
    pub fn interior(&self) -> Vec<usize> {
        self.hops.iter().skip(1).map(|h| h.from).collect()
    }

    pub fn travel_time(&self) -> Result<u32> {
        travel_time(self)
    }

    /// True when every hop is an edge of `g` and no visited vertex is removed.
    pub fn is_in(&self, g: &TemporalGraph) -> bool {
        self.hops.iter().all(|h| g.contains_edge(h.from, h.to, h.t))
            && self
                .vertices()
                .iter()
                .all(|&x| x < g.n() && !g.is_removed(x))
    }
}

impl fmt::Display for TemporalPath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .hops
            .iter()
            .map(|h| format!("({},{},{})", h.from, h.to, h.t))
            .collect();
        write!(f, "[{}]", parts.join(", "))
    }
}

/// `last label - first label + 1`.
pub fn travel_time(path: &TemporalPath) -> Result<u32> {
    match (path.hops.first(), path.hops.last()) {
        (Some(first), Some(last)) => Ok(last.t - first.t + 1),
        _ => Err(Error::EmptyPath),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Deadline {
    Finite(u32),
    Unbounded,
}

impl Deadline {
    pub fn admits(&self, travel_time: u32) -> bool {
        match *self {
            Deadline::Finite(t) => travel_time <= t,
            Deadline::Unbounded => true,
        }
    }

    /// The finite value, with `Unbounded` mapped to `tau`.
    pub fn resolve(&self, tau: u32) -> u32 {
        match *self {
            Deadline::Finite(t) => t,
            Deadline::Unbounded => tau,
        }
    }
}

impl fmt::Display for Deadline {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Deadline::Finite(t) => write!(f, "{t}"),
            Deadline::Unbounded => f.write_str("inf"),
        }
    }
}

impl std::str::FromStr for Deadline {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        if s == "inf" {
            return Ok(Deadline::Unbounded);
        }
        s.parse()
            .map(Deadline::Finite)
            .map_err(|_| Error::parse(0, format!("invalid deadline `{s}`")))
    }
}

/// An `(s, z, t)` question: which paths from `source` to `sink` count.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PathQuery {
    pub source: usize,
    pub sink: usize,
    pub deadline: Deadline,
    pub strict: bool,
}

impl PathQuery {
    pub fn new(source: usize, sink: usize, deadline: Deadline, strict: bool) -> Result<Self> {
        if source == sink {
            return Err(Error::SameTerminals(source));
        }
        Ok(PathQuery {
            source,
            sink,
            deadline,
            strict,
        })
    }

    pub fn unbounded(source: usize, sink: usize, strict: bool) -> Result<Self> {
        Self::new(source, sink, Deadline::Unbounded, strict)
    }

    pub(crate) fn check(&self, g: &TemporalGraph) -> Result<()> {
        g.check_vertex(self.source)?;
        g.check_vertex(self.sink)?;
        if self.source == self.sink {
            return Err(Error::SameTerminals(self.source));
        }
        Ok(())
    }

    /// Largest usable final label for a path whose first label is `t0`.
    fn last_label(&self, t0: u32, tau: u32) -> Option<u32> {
        match self.deadline {
            Deadline::Finite(0) => None,
            Deadline::Finite(t) => Some((t0 + t - 1).min(tau)),
            Deadline::Unbounded => Some(tau),
        }
    }

    /// The first direct `(source, sink, t)` edge that already qualifies.
    pub fn direct_edge(&self, g: &TemporalGraph) -> Option<u32> {
        if matches!(self.deadline, Deadline::Finite(0)) {
            return None;
        }
        g.labels_between(self.source, self.sink).first().copied()
    }
}

impl fmt::Display for PathQuery {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "query {} {} {} {}",
            self.source,
            self.sink,
            self.deadline,
            if self.strict { "strict" } else { "nonstrict" }
        )
    }
}

impl std::str::FromStr for PathQuery {
    type Err = Error;

    /// Parses the sidecar form `query <s> <z> <t|inf> <strict|nonstrict>`.
    fn from_str(text: &str) -> Result<Self> {
        let mut lines = crate::graph::content_lines(text);
        let (line_no, line) = lines
            .next()
            .ok_or_else(|| Error::parse(1, "missing query line"))?;
        let fields: Vec<&str> = line.split_whitespace().collect();
        if fields.len() != 5 || fields[0] != "query" {
            return Err(Error::parse(
                line_no,
                "expected `query <s> <z> <t|inf> <strict|nonstrict>`",
            ));
        }
        let source = crate::graph::parse_field(line_no, fields[1], "source")?;
        let sink = crate::graph::parse_field(line_no, fields[2], "sink")?;
        let deadline: Deadline = fields[3]
            .parse()
            .map_err(|_| Error::parse(line_no, format!("invalid deadline `{}`", fields[3])))?;
        let strict = match fields[4] {
            "strict" => true,
            "nonstrict" => false,
            other => return Err(Error::parse(line_no, format!("invalid strictness `{other}`"))),
        };
        if let Some((extra, _)) = lines.next() {
            return Err(Error::parse(extra, "unexpected content after query line"));
        }
        PathQuery::new(source, sink, deadline, strict)
    }
}

const UNREACHED: u32 = u32::MAX;

/// Label sweep over `g` with an explicit set of blocked vertices.
pub(crate) struct Sweep<'a> {
    g: &'a TemporalGraph,
    blocked: &'a [bool],
    strict: bool,
}

impl<'a> Sweep<'a> {
    pub(crate) fn new(g: &'a TemporalGraph, blocked: &'a [bool], strict: bool) -> Self {
        Sweep { g, blocked, strict }
    }

    fn delta(&self) -> u32 {
        u32::from(self.strict)
    }

    /// Distinct labels of usable edges leaving `s`, ascending.
    pub(crate) fn departures(&self, s: usize) -> Vec<u32> {
        let mut labels: Vec<u32> = self
            .g
            .incident(s)
            .filter(|e| !self.blocked[e.other(s)])
            .map(|e| e.t)
            .collect();
        labels.dedup();
        labels
    }

    /// Earliest label at which `z` is reached from `start`, using only edges
    /// with labels in `[first, last]`. With `want_path`, also returns the
    /// predecessor chain, which is always a simple path.
    pub(crate) fn earliest_arrival(
        &self,
        start: usize,
        z: usize,
        first: u32,
        last: u32,
        want_path: bool,
    ) -> Option<(u32, Vec<Hop>)> {
        let n = self.g.n();
        let mut ready = vec![UNREACHED; n];
        let mut pred: Vec<Option<(usize, u32)>> = if want_path { vec![None; n] } else { Vec::new() };
        ready[start] = first;
        let mut reached = vec![start];
        let mut stack = Vec::new();
        for label in first..=last {
            stack.extend(reached.iter().copied().filter(|&x| ready[x] <= label));
            while let Some(x) = stack.pop() {
                if x == z {
                    continue;
                }
                for e in self.g.incident_at(x, label) {
                    let y = e.other(x);
                    if self.blocked[y] || ready[y] != UNREACHED {
                        continue;
                    }
                    ready[y] = label + self.delta();
                    if want_path {
                        pred[y] = Some((x, label));
                    }
                    if y == z {
                        let hops = if want_path {
                            unwind(&pred, start, z)
                        } else {
                            Vec::new()
                        };
                        return Some((label, hops));
                    }
                    reached.push(y);
                    if !self.strict {
                        stack.push(y);
                    }
                }
            }
        }
        None
    }

    /// Minimum travel time over all paths matching `q`, ignoring the deadline
    /// for the search bound except as an upper limit.
    pub(crate) fn fastest(&self, q: &PathQuery) -> Option<u32> {
        let tau = self.g.tau();
        let mut best: Option<u32> = None;
        for t0 in self.departures(q.source) {
            let mut last = q.last_label(t0, tau)?;
            if let Some(b) = best {
                // only strictly faster paths matter
                if b == 1 {
                    break;
                }
                last = last.min(t0 + b - 2);
            }
            if last < t0 {
                continue;
            }
            if let Some((arrival, _)) = self.earliest_arrival(q.source, q.sink, t0, last, false) {
                let tt = arrival - t0 + 1;
                best = Some(best.map_or(tt, |b| b.min(tt)));
            }
        }
        best
    }

    pub(crate) fn exists(&self, q: &PathQuery) -> bool {
        let tau = self.g.tau();
        if q.deadline == Deadline::Unbounded {
            return self
                .departures(q.source)
                .first()
                .is_some_and(|&t0| self.earliest_arrival(q.source, q.sink, t0, tau, false).is_some());
        }
        self.departures(q.source).into_iter().any(|t0| {
            q.last_label(t0, tau)
                .is_some_and(|last| self.earliest_arrival(q.source, q.sink, t0, last, false).is_some())
        })
    }

    /// A qualifying path with as few hops as possible, found by breadth-first
    /// search over `(vertex, first usable label)` states.
    pub(crate) fn fewest_hops(&self, q: &PathQuery) -> Option<Vec<Hop>> {
        let tau = self.g.tau();
        let n = self.g.n();
        let mut best: Option<Vec<Hop>> = None;
        for t0 in self.departures(q.source) {
            let last = q.last_label(t0, tau)?;
            let width = (last + 2) as usize;
            let idx = |x: usize, r: u32| x * width + r as usize;
            let mut prev: Vec<Option<(usize, u32, u32)>> = vec![None; n * width];
            let mut seen = vec![false; n * width];
            let mut queue = VecDeque::new();
            seen[idx(q.source, t0)] = true;
            queue.push_back((q.source, t0));
            let mut found = None;
            'bfs: while let Some((x, r)) = queue.pop_front() {
                for e in self.g.incident(x) {
                    if e.t < r || e.t > last {
                        continue;
                    }
                    let y = e.other(x);
                    if self.blocked[y] || y == q.source {
                        continue;
                    }
                    let ry = e.t + self.delta();
                    if y == q.sink {
                        found = Some((x, r, e.t));
                        break 'bfs;
                    }
                    if !seen[idx(y, ry)] {
                        seen[idx(y, ry)] = true;
                        prev[idx(y, ry)] = Some((x, r, e.t));
                        queue.push_back((y, ry));
                    }
                }
            }
            let Some((mut x, mut r, t_last)) = found else {
                continue;
            };
            let mut walk = vec![Hop::new(x, q.sink, t_last)];
            while let Some((px, pr, t)) = prev[idx(x, r)] {
                walk.push(Hop::new(px, x, t));
                x = px;
                r = pr;
            }
            walk.reverse();
            let walk = shortcut(walk);
            if best.as_ref().is_none_or(|b| walk.len() < b.len()) {
                best = Some(walk);
            }
        }
        best
    }
}

fn unwind(pred: &[Option<(usize, u32)>], start: usize, z: usize) -> Vec<Hop> {
    let mut hops = Vec::new();
    let mut cur = z;
    while cur != start {
        let (p, t) = pred[cur].expect("predecessor chain reaches the start");
        hops.push(Hop::new(p, cur, t));
        cur = p;
    }
    hops.reverse();
    hops
}

/// Cuts loops out of a temporal walk. Labels stay monotone and the travel time
/// never grows.
pub(crate) fn shortcut(walk: Vec<Hop>) -> Vec<Hop> {
    let mut out: Vec<Hop> = Vec::with_capacity(walk.len());
    for hop in walk {
        if let Some(pos) = out.iter().position(|h| h.from == hop.to) {
            out.truncate(pos);
            continue;
        }
        if let Some(pos) = out.iter().position(|h| h.from == hop.from) {
            out.truncate(pos);
        }
        out.push(hop);
    }
    out
}

/// Result of [`fastest_travel_time`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Fastest {
    pub travel_time: u32,
    /// Lexicographically least path among those achieving `travel_time`.
    pub path: TemporalPath,
}

/// Minimum travel time over all (strict) temporal `(s, z)`-paths, with witness.
pub fn fastest_travel_time(
    g: &TemporalGraph,
    s: usize,
    z: usize,
    strict: bool,
) -> Result<Option<Fastest>> {
    let q = PathQuery::unbounded(s, z, strict)?;
    q.check(g)?;
    let sweep = Sweep::new(g, g.removed_mask(), strict);
    let Some(best) = sweep.fastest(&q) else {
        return Ok(None);
    };
    let hops = lex_least_path(g, &q, best).expect("a fastest path exists");
    Ok(Some(Fastest {
        travel_time: best,
        path: TemporalPath::new(hops, strict)?,
    }))
}

/// Builds the lexicographically least path with travel time at most `limit`
/// hop by hop, keeping a hop only if the sweep can still finish in time
/// without revisiting a vertex.
fn lex_least_path(g: &TemporalGraph, q: &PathQuery, limit: u32) -> Option<Vec<Hop>> {
    let mut visited = g.removed_mask().to_vec();
    visited[q.source] = true;
    let delta = u32::from(q.strict);
    let mut hops: Vec<Hop> = Vec::new();
    let mut cur = q.source;
    let mut ready = 1;
    let mut last_label = g.tau();
    loop {
        let mut options: Vec<(usize, u32)> = g
            .incident(cur)
            .map(|e| (e.other(cur), e.t))
            .filter(|&(y, t)| !visited[y] && t >= ready && t <= last_label)
            .collect();
        options.sort_unstable();
        let mut advanced = false;
        for (y, t) in options {
            let end = if hops.is_empty() {
                (t + limit - 1).min(g.tau())
            } else {
                last_label
            };
            if y == q.sink {
                hops.push(Hop::new(cur, y, t));
                return Some(hops);
            }
            visited[y] = true;
            let sweep = Sweep::new(g, &visited, q.strict);
            // `y` is blocked for everyone else but is the sweep's start
            if sweep.earliest_arrival(y, q.sink, t + delta, end, false).is_some() {
                hops.push(Hop::new(cur, y, t));
                cur = y;
                ready = t + delta;
                last_label = end;
                advanced = true;
                break;
            }
            visited[y] = false;
        }
        if !advanced {
            return None;
        }
    }
}

/// Whether some (strict) path matching `q` survives in `g`.
pub fn exists_deadline_path(g: &TemporalGraph, q: &PathQuery) -> Result<bool> {
    q.check(g)?;
    Ok(Sweep::new(g, g.removed_mask(), q.strict).exists(q))
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Enumeration {
    pub paths: Vec<TemporalPath>,
    /// Set when more than `cap` paths exist.
    pub truncated: bool,
}

/// All vertex-simple paths matching `q`, in lexicographic hop order, at most `cap`.
pub fn enumerate_deadline_paths(g: &TemporalGraph, q: &PathQuery, cap: usize) -> Result<Enumeration> {
    q.check(g)?;
    let mut state = EnumState {
        g,
        q,
        cap,
        visited: g.removed_mask().to_vec(),
        stack: Vec::new(),
        out: Enumeration::default(),
    };
    if !g.is_removed(q.source) {
        state.visited[q.source] = true;
        state.dfs(q.source, 1, None);
    }
    Ok(state.out)
}

struct EnumState<'a> {
    g: &'a TemporalGraph,
    q: &'a PathQuery,
    cap: usize,
    visited: Vec<bool>,
    stack: Vec<Hop>,
    out: Enumeration,
}

impl EnumState<'_> {
    /// Returns false once the cap is exceeded.
    fn dfs(&mut self, cur: usize, ready: u32, first: Option<u32>) -> bool {
        let mut options: Vec<(usize, u32)> = self
            .g
            .incident(cur)
            .map(|e| (e.other(cur), e.t))
            .filter(|&(y, t)| !self.visited[y] && t >= ready)
            .collect();
        options.sort_unstable();
        for (y, t) in options {
            let t0 = first.unwrap_or(t);
            if !self.q.deadline.admits(t - t0 + 1) {
                continue;
            }
            self.stack.push(Hop::new(cur, y, t));
            if y == self.q.sink {
                if self.out.paths.len() == self.cap {
                    self.out.truncated = true;
                    return false;
                }
                let path = TemporalPath::new(self.stack.clone(), self.q.strict)
                    .expect("enumerated hops form a path");
                self.out.paths.push(path);
            } else {
                self.visited[y] = true;
                let next = t + u32::from(self.q.strict);
                let keep_going = self.dfs(y, next, Some(t0));
                self.visited[y] = false;
                if !keep_going {
                    return false;
                }
            }
            self.stack.pop();
        }
        true
    }
}
