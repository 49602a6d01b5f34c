//! Brute-force references that share no code with the library solvers:
//! plain DFS over simple temporal paths and subset enumeration.

#![allow(dead_code)]

use std::collections::BTreeSet;

use tempsep::{TemporalGraph, VertexSet};

/// Interior vertex sets (as bitmasks) of every simple `s`-`z` path whose
/// travel time is at most `t`, minimal sets only.
pub fn path_interiors(g: &TemporalGraph, s: usize, z: usize, t: u32, strict: bool) -> Vec<u64> {
    let mut adj = vec![Vec::new(); g.n()];
    for e in g.edges() {
        adj[e.u].push((e.v, e.t));
        adj[e.v].push((e.u, e.t));
    }
    let mut found = BTreeSet::new();
    let mut visited = vec![false; g.n()];
    visited[s] = true;
    dfs(&adj, z, t, strict, s, None, None, 0, &mut visited, &mut found);
    let all: Vec<u64> = found.into_iter().collect();
    all.iter()
        .copied()
        .filter(|&m| !all.iter().any(|&o| o != m && o & m == o))
        .collect()
}

#[allow(clippy::too_many_arguments)]
fn dfs(
    adj: &[Vec<(usize, u32)>],
    z: usize,
    t: u32,
    strict: bool,
    at: usize,
    first: Option<u32>,
    last: Option<u32>,
    mask: u64,
    visited: &mut [bool],
    found: &mut BTreeSet<u64>,
) {
    for &(next, label) in &adj[at] {
        if visited[next] {
            continue;
        }
        if let Some(l) = last {
            if label < l || (strict && label == l) {
                continue;
            }
        }
        let f = first.unwrap_or(label);
        if label - f + 1 > t {
            continue;
        }
        if next == z {
            found.insert(mask);
            continue;
        }
        visited[next] = true;
        dfs(adj, z, t, strict, next, Some(f), Some(label), mask | 1 << next, visited, found);
        visited[next] = false;
    }
}

pub fn has_path(g: &TemporalGraph, s: usize, z: usize, t: u32, strict: bool, removed: &VertexSet) -> bool {
    let blocked = removed.iter().fold(0u64, |m, &v| m | 1 << v);
    path_interiors(g, s, z, t, strict)
        .iter()
        .any(|&m| m & blocked == 0)
}

pub fn mask_to_set(mask: u64) -> VertexSet {
    (0..64).filter(|&v| mask >> v & 1 == 1).collect()
}

/// Minimum hitting set of the path interiors, `None` if some interior is empty.
pub fn min_separator_size(g: &TemporalGraph, s: usize, z: usize, t: u32, strict: bool) -> Option<usize> {
    let interiors = path_interiors(g, s, z, t, strict);
    if interiors.contains(&0) {
        return None;
    }
    let universe = interiors.iter().fold(0u64, |a, &m| a | m);
    let cand: Vec<usize> = (0..64).filter(|&v| universe >> v & 1 == 1).collect();
    (0..=cand.len()).find(|&k| {
        combinations(cand.len(), k).any(|idx| {
            let set = idx.iter().fold(0u64, |m, &i| m | 1 << cand[i]);
            interiors.iter().all(|&p| p & set != 0)
        })
    })
}

pub fn combinations(n: usize, k: usize) -> impl Iterator<Item = Vec<usize>> {
    let mut idx: Option<Vec<usize>> = if k <= n { Some((0..k).collect()) } else { None };
    std::iter::from_fn(move || {
        let cur = idx.clone()?;
        idx = (0..k).rev().find(|&p| cur[p] < n - k + p).map(|p| {
            let mut next = cur.clone();
            next[p] += 1;
            for q in p + 1..k {
                next[q] = next[q - 1] + 1;
            }
            next
        });
        Some(cur)
    })
}
