//! Minimum separators when the footprint minus the terminals is a forest.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::exact::{ensure_feasible, Mode, SeparatorResult};
use crate::graph::{TemporalGraph, VertexSet};
use crate::paths::{PathQuery, Sweep};

/// Whether the footprint minus `{s, z}` has no cycle.
pub fn is_treelike(g: &TemporalGraph, s: usize, z: usize) -> bool {
    let mut parent: Vec<usize> = (0..g.n()).collect();
    fn find(parent: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while parent[r] != r {
            r = parent[r];
        }
        let mut cur = x;
        while parent[cur] != r {
            let next = parent[cur];
            parent[cur] = r;
            cur = next;
        }
        r
    }
    for &(a, b) in g.footprint().edges() {
        if a == s || a == z || b == s || b == z {
            continue;
        }
        let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
        if ra == rb {
            return false;
        }
        parent[ra] = rb;
    }
    true
}

pub type Pair = (usize, usize);

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RemovalLists {
    /// `lists[v]`: pairs `(u, w)`, `u <= w`, whose tree path runs through `v`
    /// and carries a qualifying path.
    pub lists: Vec<BTreeSet<Pair>>,
    pub universe: BTreeSet<Pair>,
    /// Parent in the rooted interior forest; roots and terminals have none.
    pub parent: Vec<Option<usize>>,
    pub depth: Vec<usize>,
}

impl RemovalLists {
    /// Whether the lists of `set` together cover the universe.
    pub fn covers(&self, set: &VertexSet) -> bool {
        let mut hit: BTreeSet<Pair> = BTreeSet::new();
        for &v in set {
            if let Some(list) = self.lists.get(v) {
                hit.extend(list);
            }
        }
        hit == self.universe
    }
}

struct Forest {
    parent: Vec<Option<usize>>,
    depth: Vec<usize>,
    component: Vec<Option<usize>>,
}

impl Forest {
    /// Roots every component of the interior at its smallest vertex.
    fn build(g: &TemporalGraph, s: usize, z: usize) -> Self {
        let n = g.n();
        let adj = g.footprint().adjacency();
        let inner = |v: usize| v != s && v != z && !g.is_removed(v);
        let mut parent = vec![None; n];
        let mut depth = vec![0; n];
        let mut component = vec![None; n];
        for root in 0..n {
            if !inner(root) || component[root].is_some() {
                continue;
            }
            component[root] = Some(root);
            let mut stack = vec![root];
            while let Some(x) = stack.pop() {
                for &y in &adj[x] {
                    if inner(y) && component[y].is_none() {
                        component[y] = Some(root);
                        parent[y] = Some(x);
                        depth[y] = depth[x] + 1;
                        stack.push(y);
                    }
                }
            }
        }
        Forest {
            parent,
            depth,
            component,
        }
    }

    fn path(&self, u: usize, w: usize) -> Vec<usize> {
        let (mut a, mut b) = (u, w);
        let (mut left, mut right) = (Vec::new(), Vec::new());
        while self.depth[a] > self.depth[b] {
            left.push(a);
            a = self.parent[a].expect("deeper vertex has a parent");
        }
        while self.depth[b] > self.depth[a] {
            right.push(b);
            b = self.parent[b].expect("deeper vertex has a parent");
        }
        while a != b {
            left.push(a);
            right.push(b);
            a = self.parent[a].expect("same component");
            b = self.parent[b].expect("same component");
        }
        left.push(a);
        left.extend(right.into_iter().rev());
        left
    }
}

/// For every interior pair `u <= w` in one component, test whether a
/// qualifying path runs `s - u ... w - z` or `s - w ... u - z` along the tree
/// path between them.
pub fn compute_removal_lists(g: &TemporalGraph, q: &PathQuery) -> Result<RemovalLists> {
    q.check(g)?;
    let (s, z) = (q.source, q.sink);
    if !is_treelike(g, s, z) {
        return Err(Error::PreconditionViolated(
            "footprint minus the terminals has a cycle".into(),
        ));
    }
    ensure_feasible(g, q)?;
    let n = g.n();
    let forest = Forest::build(g, s, z);
    let mut lists = vec![BTreeSet::new(); n];
    let mut universe = BTreeSet::new();
    let blocked = g.removed_mask().to_vec();
    for u in 0..n {
        let Some(cu) = forest.component[u] else {
            continue;
        };
        for w in u..n {
            if forest.component[w] != Some(cu) {
                continue;
            }
            let path = forest.path(u, w);
            let pairs: BTreeSet<Pair> = path
                .windows(2)
                .map(|p| (p[0].min(p[1]), p[0].max(p[1])))
                .collect();
            let attach = |a: usize, b: usize| {
                g.filter_edges(|e| {
                    pairs.contains(&e.pair())
                        || e.pair() == (s.min(a), s.max(a))
                        || e.pair() == (z.min(b), z.max(b))
                })
            };
            let found = [attach(u, w), attach(w, u)]
                .iter()
                .any(|h| Sweep::new(h, &blocked, q.strict).exists(q));
            if found {
                universe.insert((u, w));
                for &v in &path {
                    lists[v].insert((u, w));
                }
            }
        }
    }
    Ok(RemovalLists {
        lists,
        universe,
        parent: forest.parent,
        depth: forest.depth,
    })
}

/// Repeatedly takes the deepest vertex that is topmost for some uncovered
/// pair (smaller id on ties) and discards every pair through it.
pub fn greedy_rts(rl: &RemovalLists) -> SeparatorResult {
    let mut lists = rl.lists.clone();
    let mut universe = rl.universe.clone();
    let mut chosen = VertexSet::new();
    while !universe.is_empty() {
        let topmost = |v: usize| {
            let above = rl.parent[v].map(|p| &lists[p]);
            lists[v]
                .iter()
                .any(|pair| above.is_none_or(|l| !l.contains(pair)))
        };
        let pick = (0..lists.len())
            .filter(|&v| topmost(v))
            .max_by_key(|&v| (rl.depth[v], std::cmp::Reverse(v)))
            .expect("an uncovered pair has a topmost vertex");
        let removed = std::mem::take(&mut lists[pick]);
        for list in &mut lists {
            list.retain(|p| !removed.contains(p));
        }
        universe.retain(|p| !removed.contains(p));
        chosen.insert(pick);
    }
    SeparatorResult::exact(chosen, Mode::GreedyTree)
}

/// Removal lists followed by the greedy selection.
pub fn tree_separator(g: &TemporalGraph, q: &PathQuery) -> Result<SeparatorResult> {
    Ok(greedy_rts(&compute_removal_lists(g, q)?))
}
