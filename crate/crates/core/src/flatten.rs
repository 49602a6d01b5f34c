//! The static flattening of a temporal graph and the approximations built on it.
//!
//! Every non-terminal vertex `v` gets one copy `v_t` per time step. Node ids:
//! `s = 0`, `z = 1`, and `v_t = 2 + idx(v) * tau + (t - 1)` where `idx` ranks
//! the non-terminal vertices by id.
//!
//! In the strict variant `v_t` means "at `v`, able to use labels `>= t`", so a
//! layer edge `(u, v, l)` becomes `u_l -> v_{l+1}` and source arcs land one
//! step later.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::exact::{ensure_feasible, Mode, SeparatorResult};
use crate::flow::{min_static_vertex_separator, StaticDigraph};
use crate::graph::{TemporalGraph, VertexSet};
use crate::paths::{shortcut, Deadline, Hop, PathQuery, TemporalPath};

const SOURCE: usize = 0;
const SINK: usize = 1;

/// A flattened graph together with the data needed to map paths back.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Flattening {
    pub digraph: StaticDigraph,
    pub source: usize,
    pub sink: usize,
    pub tau: u32,
    pub strict: bool,
    rank: Vec<Option<usize>>,
}

impl Flattening {
    /// Node id of the copy of non-terminal `v` at time `t`.
    pub fn copy(&self, v: usize, t: u32) -> Option<usize> {
        let idx = self.rank.get(v).copied().flatten()?;
        (1..=self.tau)
            .contains(&t)
            .then(|| 2 + idx * self.tau as usize + (t as usize - 1))
    }

    /// Maps a static node set to the temporal vertices it copies.
    pub fn project(&self, nodes: &BTreeSet<usize>) -> VertexSet {
        nodes
            .iter()
            .filter_map(|&x| self.digraph.origin(x))
            .map(|(v, _)| v)
            .collect()
    }

    /// All copies of the given temporal vertices.
    pub fn lift(&self, set: &VertexSet) -> BTreeSet<usize> {
        set.iter()
            .flat_map(|&v| (1..=self.tau).filter_map(move |t| self.copy(v, t)))
            .collect()
    }

    fn node_vertex(&self, x: usize) -> usize {
        match x {
            SOURCE => self.source,
            SINK => self.sink,
            _ => self.digraph.origin(x).expect("non-terminal node").0,
        }
    }
}

/// Non-strict flattening.
pub fn flatten(g: &TemporalGraph, s: usize, z: usize) -> Result<Flattening> {
    flatten_with(g, s, z, false)
}

pub fn flatten_with(g: &TemporalGraph, s: usize, z: usize, strict: bool) -> Result<Flattening> {
    g.check_vertex(s)?;
    g.check_vertex(z)?;
    if s == z {
        return Err(Error::SameTerminals(s));
    }
    let tau = g.tau();
    let inner: Vec<usize> = (0..g.n()).filter(|&v| v != s && v != z).collect();
    let mut rank = vec![None; g.n()];
    for (i, &v) in inner.iter().enumerate() {
        rank[v] = Some(i);
    }
    let node_count = inner.len() * tau as usize + 2;
    let mut origin = vec![None; node_count];
    for (i, &v) in inner.iter().enumerate() {
        for t in 1..=tau {
            origin[2 + i * tau as usize + (t as usize - 1)] = Some((v, t));
        }
    }
    let copy = |v: usize, t: u32| -> Option<usize> {
        let i = rank[v]?;
        (1..=tau)
            .contains(&t)
            .then(|| 2 + i * tau as usize + (t as usize - 1))
    };
    let shift = u32::from(strict);
    let mut arcs = Vec::new();
    for &v in &inner {
        for t in 1..tau {
            arcs.push((copy(v, t).unwrap(), copy(v, t + 1).unwrap()));
        }
    }
    for e in g.edges() {
        let (a, b) = (e.u, e.v);
        let a_terminal = a == s || a == z;
        let b_terminal = b == s || b == z;
        match (a_terminal, b_terminal) {
            (false, false) => {
                for (x, y) in [(a, b), (b, a)] {
                    if let (Some(from), Some(to)) = (copy(x, e.t), copy(y, e.t + shift)) {
                        arcs.push((from, to));
                    }
                }
            }
            (true, true) => {}
            _ => {
                let (term, v) = if a_terminal { (a, b) } else { (b, a) };
                if term == s {
                    if let Some(to) = copy(v, e.t + shift) {
                        arcs.push((SOURCE, to));
                    }
                } else {
                    arcs.push((copy(v, e.t).unwrap(), SINK));
                }
            }
        }
    }
    let digraph = StaticDigraph::with_origin(node_count, SOURCE, SINK, arcs, origin)?;
    Ok(Flattening {
        digraph,
        source: s,
        sink: z,
        tau,
        strict,
        rank,
    })
}

/// Maps a static source-to-sink node path back to a temporal path. Waiting
/// arcs are dropped and any repeated vertex is cut out.
pub fn static_to_temporal_path(f: &Flattening, nodes: &[usize]) -> Result<TemporalPath> {
    if nodes.first() != Some(&SOURCE) || nodes.last() != Some(&SINK) {
        return Err(Error::MalformedPath("static path must run from s to z".into()));
    }
    let shift = u32::from(f.strict);
    let mut hops = Vec::new();
    for w in nodes.windows(2) {
        let (a, b) = (w[0], w[1]);
        if !f.digraph.has_arc(a, b) {
            return Err(Error::MalformedPath(format!("no arc {a} -> {b}")));
        }
        let (va, vb) = (f.node_vertex(a), f.node_vertex(b));
        if va == vb {
            continue;
        }
        let label = match f.digraph.origin(b) {
            Some((_, t)) => t - shift,
            None => f.digraph.origin(a).expect("sink arcs leave a copy").1,
        };
        hops.push(Hop::new(va, vb, label));
    }
    TemporalPath::new(shortcut(hops), f.strict)
}

/// Maps a temporal `(s, z)`-path into the flattening, inserting waiting arcs.
pub fn temporal_to_static_path(f: &Flattening, path: &TemporalPath) -> Result<Vec<usize>> {
    if path.source() != Some(f.source) || path.target() != Some(f.sink) {
        return Err(Error::MalformedPath("temporal path must run from s to z".into()));
    }
    let bad = || Error::MalformedPath("path leaves the flattening".into());
    let shift = u32::from(f.strict);
    let mut nodes = vec![SOURCE];
    let mut here: Option<(usize, u32)> = None;
    for hop in path.hops() {
        if let Some((v, ready)) = here {
            for t in ready..hop.t {
                nodes.push(f.copy(v, t + 1).ok_or_else(bad)?);
            }
        }
        if hop.to == f.sink {
            nodes.push(SINK);
            break;
        }
        let arrive = hop.t + shift;
        nodes.push(f.copy(hop.to, arrive).ok_or_else(bad)?);
        here = Some((hop.to, arrive));
    }
    for w in nodes.windows(2) {
        if !f.digraph.has_arc(w[0], w[1]) {
            return Err(bad());
        }
    }
    Ok(nodes)
}

fn projected_cut(g: &TemporalGraph, s: usize, z: usize, strict: bool) -> Result<VertexSet> {
    let f = flatten_with(g, s, z, strict)?;
    let cut = min_static_vertex_separator(&f.digraph)?;
    Ok(f.project(&cut))
}

/// Separator for unbounded deadline of size at most `tau` times the optimum.
pub fn approx_separator_tau(
    g: &TemporalGraph,
    s: usize,
    z: usize,
    strict: bool,
) -> Result<SeparatorResult> {
    let q = PathQuery::unbounded(s, z, strict)?;
    q.check(g)?;
    ensure_feasible(g, &q)?;
    Ok(SeparatorResult {
        separator: projected_cut(g, s, z, strict)?,
        mode: Mode::ApproxTau,
        guarantee: Some(u64::from(g.tau())),
    })
}

/// Time windows of length `t` that together contain every path with
/// travel time at most `t`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WindowPlan {
    pub windows: Vec<(u32, u32)>,
}

impl WindowPlan {
    pub fn new(tau: u32, t: u32) -> Self {
        let windows = if t == 0 {
            Vec::new()
        } else if tau <= t {
            vec![(1, tau)]
        } else {
            (1..=tau - t + 1).map(|i| (i, i + t - 1)).collect()
        };
        WindowPlan { windows }
    }

    /// A window containing every label of a path that starts at `first`
    /// and ends by `first + t - 1`.
    pub fn window_for(&self, first: u32) -> Option<(u32, u32)> {
        self.windows
            .iter()
            .rev()
            .find(|&&(a, _)| a <= first)
            .copied()
    }
}

/// Separator for deadline `t` of size at most `tau^2` times the optimum.
pub fn approx_separator_deadline(
    g: &TemporalGraph,
    s: usize,
    z: usize,
    t: u32,
    strict: bool,
) -> Result<SeparatorResult> {
    approx_separator_deadline_threads(g, s, z, t, strict, 1)
}

/// As [`approx_separator_deadline`], solving up to `threads` windows at once.
pub fn approx_separator_deadline_threads(
    g: &TemporalGraph,
    s: usize,
    z: usize,
    t: u32,
    strict: bool,
    threads: usize,
) -> Result<SeparatorResult> {
    let q = PathQuery::new(s, z, Deadline::Finite(t), strict)?;
    q.check(g)?;
    ensure_feasible(g, &q)?;
    let plan = WindowPlan::new(g.tau(), t);
    let solve = |&(a, b): &(u32, u32)| -> Result<VertexSet> {
        projected_cut(&g.restrict(a, b)?, s, z, strict)
    };
    let threads = threads.max(1);
    let mut separator = VertexSet::new();
    if threads == 1 {
        for w in &plan.windows {
            separator.extend(solve(w)?);
        }
    } else {
        let chunk = plan.windows.len().div_ceil(threads).max(1);
        let parts: Vec<Result<VertexSet>> = std::thread::scope(|scope| {
            let handles: Vec<_> = plan
                .windows
                .chunks(chunk)
                .map(|ws| {
                    scope.spawn(move || {
                        let mut acc = VertexSet::new();
                        for w in ws {
                            acc.extend(solve(w)?);
                        }
                        Ok(acc)
                    })
                })
                .collect();
            handles
                .into_iter()
                .map(|h| h.join().expect("window worker panicked"))
                .collect()
        });
        for part in parts {
            separator.extend(part?);
        }
    }
    Ok(SeparatorResult {
        separator,
        mode: Mode::ApproxTau2,
        guarantee: Some(u64::from(g.tau()) * u64::from(g.tau())),
    })
}
