//! Exact separators: a branch-and-bound solver for any instance and the
//! polynomial algorithms for strict queries with small deadlines.

use std::fmt;

use crate::error::{Error, Result};
use crate::graph::{TemporalGraph, VertexSet};
use crate::paths::{Deadline, PathQuery, Sweep};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Mode {
    Exact,
    ApproxTau,
    ApproxTau2,
    Rts,
    GreedyTree,
    StrictSpecial,
}

impl Mode {
    pub fn as_str(&self) -> &'static str {
        match self {
            Mode::Exact => "exact",
            Mode::ApproxTau => "approx-tau",
            Mode::ApproxTau2 => "approx-tau2",
            Mode::Rts => "rts",
            Mode::GreedyTree => "greedy-tree",
            Mode::StrictSpecial => "strict-special",
        }
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SeparatorResult {
    pub separator: VertexSet,
    pub mode: Mode,
    /// Multiplicative approximation factor, absent for exact answers.
    pub guarantee: Option<u64>,
}

impl SeparatorResult {
    pub fn exact(separator: VertexSet, mode: Mode) -> Self {
        SeparatorResult {
            separator,
            mode,
            guarantee: None,
        }
    }

    pub fn size(&self) -> usize {
        self.separator.len()
    }
}

/// Removed vertices of `g` together with `set`, as a mask.
pub(crate) fn blocked_with(g: &TemporalGraph, set: &VertexSet) -> Vec<bool> {
    let mut mask = g.removed_mask().to_vec();
    for &x in set {
        mask[x] = true;
    }
    mask
}

/// Fails when an `(s, z)` edge is itself a qualifying path.
pub(crate) fn ensure_feasible(g: &TemporalGraph, q: &PathQuery) -> Result<()> {
    match q.direct_edge(g) {
        Some(time) => Err(Error::Infeasible {
            s: q.source,
            z: q.sink,
            time,
        }),
        None => Ok(()),
    }
}

pub fn is_separator(g: &TemporalGraph, q: &PathQuery, set: &VertexSet) -> Result<bool> {
    q.check(g)?;
    for &x in set {
        g.check_vertex(x)?;
        if x == q.source || x == q.sink {
            return Err(Error::TerminalInSeparator(x));
        }
    }
    let mask = blocked_with(g, set);
    Ok(!Sweep::new(g, &mask, q.strict).exists(q))
}

/// Vertices `x` on a qualifying path `s - x - z`; every separator contains them.
pub(crate) fn forced_middles(g: &TemporalGraph, q: &PathQuery, blocked: &[bool]) -> Vec<usize> {
    let delta = u32::from(q.strict);
    let mut out = Vec::new();
    for (x, &gone) in blocked.iter().enumerate().take(g.n()) {
        if x == q.source || x == q.sink || gone {
            continue;
        }
        let into = g.labels_between(q.source, x);
        let out_of = g.labels_between(x, q.sink);
        let hit = into.iter().any(|&a| {
            out_of
                .iter()
                .any(|&b| b >= a + delta && q.deadline.admits(b - a + 1))
        });
        if hit {
            out.push(x);
        }
    }
    out
}

/// Minimum separator; ties go to the lexicographically least sorted id list.
pub fn min_separator_exact(g: &TemporalGraph, q: &PathQuery) -> Result<SeparatorResult> {
    q.check(g)?;
    ensure_feasible(g, q)?;
    let search = Search { g, q };
    let mut blocked = g.removed_mask().to_vec();
    let mut eligible: Vec<bool> = (0..g.n())
        .map(|x| x != q.source && x != q.sink && !blocked[x])
        .collect();
    let limit = eligible.iter().filter(|&&e| e).count();
    let size = (0..=limit)
        .find(|&k| search.feasible(&mut blocked, &mut eligible.clone(), k))
        .expect("removing every non-terminal vertex separates");
    // fix positions one at a time, smallest id first
    let mut chosen = VertexSet::new();
    for pos in 0..size {
        let start = chosen.last().map_or(0, |&v| v + 1);
        let pick = (start..g.n())
            .filter(|&v| eligible[v])
            .find(|&v| {
                blocked[v] = true;
                let mut rest: Vec<bool> = eligible.clone();
                for (u, e) in rest.iter_mut().enumerate() {
                    if u <= v {
                        *e = false;
                    }
                }
                let ok = search.feasible(&mut blocked, &mut rest, size - pos - 1);
                if !ok {
                    blocked[v] = false;
                }
                ok
            })
            .expect("a minimum separator extends the chosen prefix");
        chosen.insert(pick);
        for (u, e) in eligible.iter_mut().enumerate() {
            if u <= pick {
                *e = false;
            }
        }
    }
    Ok(SeparatorResult::exact(chosen, Mode::Exact))
}

struct Search<'a> {
    g: &'a TemporalGraph,
    q: &'a PathQuery,
}

impl Search<'_> {
    /// Whether at most `budget` further eligible vertices separate.
    /// `blocked` and `eligible` are restored before returning.
    fn feasible(&self, blocked: &mut [bool], eligible: &mut [bool], budget: usize) -> bool {
        let forced = forced_middles(self.g, self.q, blocked);
        if forced.len() > budget || forced.iter().any(|&x| !eligible[x]) {
            return false;
        }
        for &x in &forced {
            blocked[x] = true;
        }
        let ok = self.branch(blocked, eligible, budget - forced.len());
        for &x in &forced {
            blocked[x] = false;
        }
        ok
    }

    fn branch(&self, blocked: &mut [bool], eligible: &mut [bool], budget: usize) -> bool {
        let sweep = Sweep::new(self.g, blocked, self.q.strict);
        let Some(path) = sweep.fewest_hops(self.q) else {
            return true;
        };
        if budget == 0 || self.disjoint_lower_bound(blocked, budget + 1) > budget {
            return false;
        }
        let options: Vec<usize> = path
            .iter()
            .skip(1)
            .map(|h| h.from)
            .filter(|&x| eligible[x])
            .collect();
        let mut excluded = Vec::new();
        let mut found = false;
        for x in options {
            blocked[x] = true;
            eligible[x] = false;
            found = self.feasible(blocked, eligible, budget - 1);
            blocked[x] = false;
            if found {
                eligible[x] = true;
                break;
            }
            // later branches may assume x stays in the graph
            excluded.push(x);
        }
        for x in excluded {
            eligible[x] = true;
        }
        found
    }

    /// Number of interior-disjoint violating paths found greedily, stopping at `cap`.
    fn disjoint_lower_bound(&self, blocked: &[bool], cap: usize) -> usize {
        let mut mask = blocked.to_vec();
        let mut count = 0;
        while count < cap {
            let sweep = Sweep::new(self.g, &mask, self.q.strict);
            let Some(path) = sweep.fewest_hops(self.q) else {
                break;
            };
            count += 1;
            for hop in path.iter().skip(1) {
                mask[hop.from] = true;
            }
        }
        count
    }
}

/// Polynomial algorithms for strict queries with `t = 1`, `t = 2`, or `t = tau = 3`.
pub fn strict_special(g: &TemporalGraph, s: usize, z: usize, t: u32) -> Result<SeparatorResult> {
    if !(t == 1 || t == 2 || (t == 3 && g.tau() == 3)) {
        return Err(Error::UnsupportedCase(format!(
            "strict deadline {t} with lifetime {}",
            g.tau()
        )));
    }
    let q = PathQuery::new(s, z, Deadline::Finite(t), true)?;
    q.check(g)?;
    ensure_feasible(g, &q)?;
    let blocked = g.removed_mask().to_vec();
    let mut separator: VertexSet = forced_middles(g, &q, &blocked).into_iter().collect();
    if t == 3 {
        separator.extend(three_layer_cover(g, s, z, &blocked_with(g, &separator)));
    }
    Ok(SeparatorResult::exact(separator, Mode::StrictSpecial))
}

/// Remaining paths look like `(s,x,1),(x,y,2),(y,z,3)`; a minimum vertex cover
/// of the label-2 edges between such `x` and `y` destroys all of them.
fn three_layer_cover(g: &TemporalGraph, s: usize, z: usize, blocked: &[bool]) -> VertexSet {
    let usable = |x: usize| x != s && x != z && !blocked[x];
    let left: Vec<usize> = g
        .incident_at(s, 1)
        .map(|e| e.other(s))
        .filter(|&x| usable(x))
        .collect();
    let right: Vec<usize> = g
        .incident_at(z, 3)
        .map(|e| e.other(z))
        .filter(|&y| usable(y))
        .collect();
    let right_pos = |y: usize| right.iter().position(|&r| r == y);
    let adj: Vec<Vec<usize>> = left
        .iter()
        .map(|&x| {
            g.incident_at(x, 2)
                .filter_map(|e| right_pos(e.other(x)))
                .collect()
        })
        .collect();
    let matching = Matching::maximum(&adj, right.len());
    matching
        .konig_cover(&adj)
        .into_iter()
        .map(|side| match side {
            Side::Left(i) => left[i],
            Side::Right(j) => right[j],
        })
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum Side {
    Left(usize),
    Right(usize),
}

/// Kuhn's augmenting-path matching on a bipartite graph given as left adjacency.
pub(crate) struct Matching {
    pub(crate) left_match: Vec<Option<usize>>,
    pub(crate) right_match: Vec<Option<usize>>,
}

impl Matching {
    pub(crate) fn maximum(adj: &[Vec<usize>], right_len: usize) -> Self {
        let mut m = Matching {
            left_match: vec![None; adj.len()],
            right_match: vec![None; right_len],
        };
        for u in 0..adj.len() {
            let mut seen = vec![false; right_len];
            m.augment(adj, u, &mut seen);
        }
        m
    }

    fn augment(&mut self, adj: &[Vec<usize>], u: usize, seen: &mut [bool]) -> bool {
        for &v in &adj[u] {
            if seen[v] {
                continue;
            }
            seen[v] = true;
            let free = match self.right_match[v] {
                None => true,
                Some(w) => self.augment(adj, w, seen),
            };
            if free {
                self.left_match[u] = Some(v);
                self.right_match[v] = Some(u);
                return true;
            }
        }
        false
    }

    pub(crate) fn size(&self) -> usize {
        self.left_match.iter().flatten().count()
    }

    /// Left vertices not reached by alternating paths from free left vertices,
    /// plus right vertices that are reached.
    pub(crate) fn konig_cover(&self, adj: &[Vec<usize>]) -> Vec<Side> {
        let mut left_seen = vec![false; adj.len()];
        let mut right_seen = vec![false; self.right_match.len()];
        let mut stack: Vec<usize> = (0..adj.len())
            .filter(|&u| self.left_match[u].is_none())
            .collect();
        for &u in &stack {
            left_seen[u] = true;
        }
        while let Some(u) = stack.pop() {
            for &v in &adj[u] {
                if right_seen[v] || self.left_match[u] == Some(v) {
                    continue;
                }
                right_seen[v] = true;
                if let Some(w) = self.right_match[v] {
                    if !left_seen[w] {
                        left_seen[w] = true;
                        stack.push(w);
                    }
                }
            }
        }
        let mut cover: Vec<Side> = (0..adj.len())
            .filter(|&u| !left_seen[u])
            .map(Side::Left)
            .collect();
        cover.extend((0..right_seen.len()).filter(|&v| right_seen[v]).map(Side::Right));
        debug_assert_eq!(cover.len(), self.size());
        cover
    }
}
