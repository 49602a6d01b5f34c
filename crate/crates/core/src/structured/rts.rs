//! Minimum restricted-path separators on footprints of branchwidth at most 2.

use std::collections::BTreeSet;

use super::branch::{branch_decomposition_w2, top_node, BranchDecomposition};
use crate::error::{Error, Result};
use crate::exact::{blocked_with, ensure_feasible, Mode, SeparatorResult};
use crate::graph::{TemporalGraph, VertexSet};
use crate::paths::{PathQuery, Sweep};

fn survives(g: &TemporalGraph, q: &PathQuery, set: &VertexSet) -> bool {
    let mask = blocked_with(g, set);
    Sweep::new(g, &mask, q.strict).exists(q)
}

/// Keeps the temporal edges whose vertex pair lies in `beta(x)`.
fn inner_graph(g: &TemporalGraph, bd: &BranchDecomposition, x: usize) -> TemporalGraph {
    let pairs: BTreeSet<(usize, usize)> = bd.edge_set(x).into_iter().collect();
    g.filter_edges(|e| pairs.contains(&e.pair()))
}

pub fn rts(g: &TemporalGraph, q: &PathQuery) -> Result<SeparatorResult> {
    rts_with(g, q, None)
}

/// As [`rts`], starting from a caller-supplied decomposition of the footprint.
/// The decomposition must cover a connected footprint and have width at most 2.
pub fn rts_with(
    g: &TemporalGraph,
    q: &PathQuery,
    bd: Option<&BranchDecomposition>,
) -> Result<SeparatorResult> {
    q.check(g)?;
    ensure_feasible(g, q)?;
    if let Some(bd) = bd {
        if bd.graph() != &g.footprint() {
            return Err(Error::InvalidDecomposition(
                "decomposition does not match the footprint".into(),
            ));
        }
        if bd.width() > 2 {
            return Err(Error::WidthExceeded);
        }
    }
    let separator = solve(g, q, bd)?;
    Ok(SeparatorResult::exact(separator, Mode::Rts))
}

fn solve(g: &TemporalGraph, q: &PathQuery, given: Option<&BranchDecomposition>) -> Result<VertexSet> {
    let empty = VertexSet::new();
    if !survives(g, q, &empty) {
        return Ok(empty);
    }
    for v in 0..g.n() {
        if v != q.source && v != q.sink && g.degree(v) > 0 && !survives(g, q, &[v].into()) {
            return Ok([v].into());
        }
    }
    let footprint = g.footprint();
    let comp = footprint.component_of(q.source);
    let g = if footprint.edges().iter().all(|(a, _)| comp.contains(a)) {
        g.clone()
    } else if given.is_some() {
        return Err(Error::PreconditionViolated("footprint is not connected".into()));
    } else {
        g.filter_edges(|e| comp.contains(&e.u))
    };
    let owned;
    let bd = match given {
        Some(bd) => bd,
        None => {
            owned = branch_decomposition_w2(&g.footprint())?;
            &owned
        }
    };
    let (s, z) = (q.source, q.sink);
    let (ts, tz) = (top_node(bd, s)?, top_node(bd, z)?);
    if ts == tz {
        let Some((l, r)) = bd.children(ts) else {
            return Err(Error::InvalidDecomposition("shared top is a leaf".into()));
        };
        let mut out = solve(&inner_graph(&g, bd, l), q, None)?;
        out.extend(solve(&inner_graph(&g, bd, r), q, None)?);
        return Ok(out);
    }
    if !bd.is_ancestor(ts, tz) && !bd.is_ancestor(tz, ts) {
        return Ok(bd.boundary_of(tz));
    }
    // `a` has the deeper top, `b` the other terminal
    let (a, b, x) = if bd.is_ancestor(tz, ts) { (s, z, ts) } else { (z, s, tz) };
    let bx = bd.boundary_of(x);
    if !bx.contains(&b) {
        return Ok(bx);
    }
    if bx.len() == 1 {
        return solve(&inner_graph(&g, bd, x), q, None);
    }
    let other = *bx.iter().find(|&&v| v != b).expect("boundary has two vertices");
    let Some((l, r)) = bd.children(x) else {
        return Err(Error::InvalidDecomposition("top with two boundary vertices is a leaf".into()));
    };
    let want: VertexSet = [a, b].into();
    let child = if bd.boundary_of(l) == want {
        l
    } else if bd.boundary_of(r) == want {
        r
    } else {
        return Err(Error::InvalidDecomposition(
            "no child separates the two terminals".into(),
        ));
    };
    let mut out = solve(&inner_graph(&g, bd, child), q, None)?;
    if survives(&g, q, &out) {
        out.insert(other);
    }
    Ok(out)
}
