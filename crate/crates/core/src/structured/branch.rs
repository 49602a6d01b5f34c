//! Branch decompositions of footprints, width-2 construction, and `top`.

use std::collections::BTreeSet;
use std::fmt;

use crate::error::{Error, Result};
use crate::graph::{content_lines, parse_field, StaticGraph, VertexSet};

/// Vertices incident to edges both inside and outside `f`.
pub fn boundary(f: &[(usize, usize)], g: &StaticGraph) -> VertexSet {
    let inside: BTreeSet<(usize, usize)> = f.iter().map(|&(a, b)| (a.min(b), a.max(b))).collect();
    let mut touched_in = VertexSet::new();
    let mut touched_out = VertexSet::new();
    for &(a, b) in g.edges() {
        let side = if inside.contains(&(a, b)) {
            &mut touched_in
        } else {
            &mut touched_out
        };
        side.insert(a);
        side.insert(b);
    }
    touched_in.intersection(&touched_out).copied().collect()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BdNode {
    pub parent: Option<usize>,
    pub children: Option<(usize, usize)>,
    /// Indices into the graph's edge list, ascending.
    pub edges: Vec<usize>,
}

/// A rooted binary tree whose leaves are the edges of `graph`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BranchDecomposition {
    graph: StaticGraph,
    nodes: Vec<BdNode>,
    root: usize,
    depth: Vec<usize>,
}

impl BranchDecomposition {
    /// Validates the tree against `graph`: a single root, zero or two children
    /// per node, leaves in bijection with edges, inner sets equal to the union
    /// of their children.
    pub fn new(graph: StaticGraph, nodes: Vec<BdNode>) -> Result<Self> {
        let bad = |msg: String| Error::InvalidDecomposition(msg);
        let m = graph.edges().len();
        if nodes.is_empty() {
            return Err(bad("no nodes".into()));
        }
        let roots: Vec<usize> = (0..nodes.len()).filter(|&i| nodes[i].parent.is_none()).collect();
        let [root] = roots[..] else {
            return Err(bad(format!("expected one root, found {}", roots.len())));
        };
        let mut leaf_edges = Vec::new();
        for (i, node) in nodes.iter().enumerate() {
            if node.edges.iter().any(|&e| e >= m) || node.edges.windows(2).any(|w| w[0] >= w[1]) {
                return Err(bad(format!("node {i} has an invalid edge list")));
            }
            match node.children {
                None => {
                    if node.edges.len() != 1 {
                        return Err(bad(format!("leaf {i} must hold exactly one edge")));
                    }
                    leaf_edges.push(node.edges[0]);
                }
                Some((l, r)) => {
                    for c in [l, r] {
                        if c >= nodes.len() || nodes[c].parent != Some(i) {
                            return Err(bad(format!("child {c} of node {i} does not point back")));
                        }
                    }
                    if l == r {
                        return Err(bad(format!("node {i} repeats a child")));
                    }
                    let mut union = nodes[l].edges.clone();
                    union.extend(&nodes[r].edges);
                    union.sort_unstable();
                    union.dedup();
                    if union != node.edges {
                        return Err(bad(format!("node {i} is not the union of its children")));
                    }
                }
            }
        }
        for (i, node) in nodes.iter().enumerate() {
            if let Some(p) = node.parent {
                let ok = p < nodes.len()
                    && nodes[p].children.is_some_and(|(l, r)| l == i || r == i);
                if !ok {
                    return Err(bad(format!("parent of node {i} does not list it")));
                }
            }
        }
        leaf_edges.sort_unstable();
        if leaf_edges != (0..m).collect::<Vec<_>>() {
            return Err(bad("leaves do not match the edges one to one".into()));
        }
        // depth, and a reachability check that rules out cycles
        let mut depth = vec![usize::MAX; nodes.len()];
        let mut stack = vec![root];
        depth[root] = 0;
        while let Some(x) = stack.pop() {
            if let Some((l, r)) = nodes[x].children {
                for c in [l, r] {
                    if depth[c] != usize::MAX {
                        return Err(bad("tree contains a cycle".into()));
                    }
                    depth[c] = depth[x] + 1;
                    stack.push(c);
                }
            }
        }
        if depth.contains(&usize::MAX) {
            return Err(bad("some nodes are unreachable from the root".into()));
        }
        Ok(BranchDecomposition {
            graph,
            nodes,
            root,
            depth,
        })
    }

    pub fn graph(&self) -> &StaticGraph {
        &self.graph
    }

    pub fn nodes(&self) -> &[BdNode] {
        &self.nodes
    }

    pub fn node(&self, x: usize) -> &BdNode {
        &self.nodes[x]
    }

    pub fn root(&self) -> usize {
        self.root
    }

    pub fn depth(&self, x: usize) -> usize {
        self.depth[x]
    }

    pub fn children(&self, x: usize) -> Option<(usize, usize)> {
        self.nodes[x].children
    }

    /// The edge pairs in `beta(x)`.
    pub fn edge_set(&self, x: usize) -> Vec<(usize, usize)> {
        self.nodes[x]
            .edges
            .iter()
            .map(|&e| self.graph.edges()[e])
            .collect()
    }

    pub fn boundary_of(&self, x: usize) -> VertexSet {
        boundary(&self.edge_set(x), &self.graph)
    }

    pub fn width(&self) -> usize {
        (0..self.nodes.len())
            .map(|x| self.boundary_of(x).len())
            .max()
            .unwrap_or(0)
    }

    /// True when `a` lies on the path from the root to `b` (or equals it).
    pub fn is_ancestor(&self, a: usize, b: usize) -> bool {
        let mut cur = b;
        loop {
            if cur == a {
                return true;
            }
            match self.nodes[cur].parent {
                Some(p) => cur = p,
                None => return false,
            }
        }
    }

    /// Vertices touched by `beta(x)`.
    pub fn vertices_of(&self, x: usize) -> VertexSet {
        self.edge_set(x).into_iter().flat_map(|(a, b)| [a, b]).collect()
    }
}

/// Deepest node whose edge set contains every edge at `v`.
pub fn top_node(bd: &BranchDecomposition, v: usize) -> Result<usize> {
    let incident: Vec<usize> = bd
        .graph
        .edges()
        .iter()
        .enumerate()
        .filter(|(_, &(a, b))| a == v || b == v)
        .map(|(i, _)| i)
        .collect();
    if incident.is_empty() {
        return Err(Error::IsolatedVertex(v));
    }
    let holds = |x: usize| {
        incident
            .iter()
            .all(|e| bd.nodes[x].edges.binary_search(e).is_ok())
    };
    let mut cur = bd.root;
    while let Some((l, r)) = bd.nodes[cur].children {
        if holds(l) {
            cur = l;
        } else if holds(r) {
            cur = r;
        } else {
            break;
        }
    }
    Ok(cur)
}

/// Builds a decomposition of width at most 2 by series, parallel and pendant
/// reductions on a multigraph of "virtual edges", each standing for a subtree.
/// A virtual edge `(a, b)` only ever has `a` and `b` in its boundary.
pub fn branch_decomposition_w2(g: &StaticGraph) -> Result<BranchDecomposition> {
    let m = g.edges().len();
    if m == 0 {
        return Err(Error::PreconditionViolated("graph has no edges".into()));
    }
    let (first, _) = g.edges()[0];
    let comp = g.component_of(first);
    if g.edges().iter().any(|(a, _)| !comp.contains(a)) {
        return Err(Error::PreconditionViolated("graph is not connected".into()));
    }
    let mut nodes: Vec<BdNode> = (0..m)
        .map(|e| BdNode {
            parent: None,
            children: None,
            edges: vec![e],
        })
        .collect();
    // live virtual edges: (a, b, node) with a < b
    let mut live: Vec<(usize, usize, usize)> = g
        .edges()
        .iter()
        .enumerate()
        .map(|(i, &(a, b))| (a, b, i))
        .collect();
    let join = |nodes: &mut Vec<BdNode>, x: usize, y: usize| -> usize {
        let mut edges = nodes[x].edges.clone();
        edges.extend(&nodes[y].edges);
        edges.sort_unstable();
        let id = nodes.len();
        nodes[x].parent = Some(id);
        nodes[y].parent = Some(id);
        nodes.push(BdNode {
            parent: None,
            children: Some((x.min(y), x.max(y))),
            edges,
        });
        id
    };
    while live.len() > 1 {
        live.sort_unstable();
        if let Some(i) = (0..live.len() - 1).find(|&i| live[i].0 == live[i + 1].0 && live[i].1 == live[i + 1].1) {
            let (a, b, x) = live[i];
            let (_, _, y) = live.remove(i + 1);
            live[i] = (a, b, join(&mut nodes, x, y));
            continue;
        }
        let mut incident: std::collections::BTreeMap<usize, Vec<usize>> = Default::default();
        for (i, &(a, b, _)) in live.iter().enumerate() {
            incident.entry(a).or_default().push(i);
            incident.entry(b).or_default().push(i);
        }
        if let Some((&v, list)) = incident.iter().find(|(_, l)| l.len() == 1) {
            let i = list[0];
            let (a, b, x) = live[i];
            let other = if a == v { b } else { a };
            let j = *incident[&other]
                .iter()
                .find(|&&j| j != i)
                .expect("a connected multigraph with two edges has no isolated edge");
            let (c, d, y) = live[j];
            live[j] = (c, d, join(&mut nodes, y, x));
            live.remove(i);
            continue;
        }
        if let Some((&v, list)) = incident.iter().find(|(_, l)| l.len() == 2) {
            let (i, j) = (list[0], list[1]);
            let end = |k: usize| {
                let (a, b, _) = live[k];
                if a == v {
                    b
                } else {
                    a
                }
            };
            let (p, q) = (end(i), end(j));
            let id = join(&mut nodes, live[i].2, live[j].2);
            live[i] = (p.min(q), p.max(q), id);
            live.remove(j);
            continue;
        }
        return Err(Error::WidthExceeded);
    }
    BranchDecomposition::new(g.clone(), nodes)
}

/// Violations of the three structural facts used by the width-2 algorithm,
/// one message per failing node. Empty when everything holds.
pub fn structure_violations(bd: &BranchDecomposition) -> Vec<String> {
    let mut out = Vec::new();
    let n = bd.graph.n();
    let adj = bd.graph.adjacency();
    let tops: Vec<Option<usize>> = (0..n).map(|v| top_node(bd, v).ok()).collect();
    for x in 0..bd.nodes.len() {
        let bx = bd.boundary_of(x);
        if let Some((l, r)) = bd.children(x) {
            let (bl, br) = (bd.boundary_of(l), bd.boundary_of(r));
            for &v in &bx {
                if !bl.contains(&v) && !br.contains(&v) {
                    out.push(format!("node {x}: boundary vertex {v} missing from both children"));
                }
            }
            for (v, &top) in tops.iter().enumerate() {
                if top == Some(x) && !(bl.contains(&v) && br.contains(&v)) {
                    out.push(format!("node {x}: top vertex {v} not in both child boundaries"));
                }
            }
        }
        let edges: BTreeSet<(usize, usize)> = bd.edge_set(x).into_iter().collect();
        for v in bd.vertices_of(x) {
            if bx.contains(&v) {
                continue;
            }
            if adj[v].iter().any(|&w| !edges.contains(&(v.min(w), v.max(w)))) {
                out.push(format!("node {x}: inner vertex {v} loses an edge"));
            }
        }
    }
    out
}

impl fmt::Display for BranchDecomposition {
    /// `bd <count>` then `<id> <parent|-> u-v,u-v,...` per node.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "bd {}", self.nodes.len())?;
        for (i, node) in self.nodes.iter().enumerate() {
            let parent = node.parent.map_or("-".to_string(), |p| p.to_string());
            let edges: Vec<String> = self
                .edge_set(i)
                .iter()
                .map(|(a, b)| format!("{a}-{b}"))
                .collect();
            writeln!(f, "{i} {parent} {}", edges.join(","))?;
        }
        Ok(())
    }
}

/// Parses the `bd` format against `graph`; children are recovered from the
/// parent column in ascending id order.
pub fn parse_branch_decomposition(text: &str, graph: &StaticGraph) -> Result<BranchDecomposition> {
    let mut lines = content_lines(text);
    let (line_no, header) = lines
        .next()
        .ok_or_else(|| Error::parse(1, "missing `bd` header"))?;
    let fields: Vec<&str> = header.split_whitespace().collect();
    if fields.len() != 2 || fields[0] != "bd" {
        return Err(Error::parse(line_no, "expected `bd <count>`"));
    }
    let count: usize = parse_field(line_no, fields[1], "node count")?;
    let mut parents = vec![None; count];
    let mut edge_lists = vec![Vec::new(); count];
    let mut seen = vec![false; count];
    for (line_no, line) in lines {
        let fields: Vec<&str> = line.split_whitespace().collect();
        if fields.len() != 3 {
            return Err(Error::parse(line_no, "expected `<id> <parent|-> <edges>`"));
        }
        let id: usize = parse_field(line_no, fields[0], "node id")?;
        if id >= count || seen[id] {
            return Err(Error::parse(line_no, format!("bad or repeated node id {id}")));
        }
        seen[id] = true;
        if fields[1] != "-" {
            let p: usize = parse_field(line_no, fields[1], "parent id")?;
            if p >= count {
                return Err(Error::parse(line_no, format!("parent {p} out of range")));
            }
            parents[id] = Some(p);
        }
        let mut edges = Vec::new();
        for pair in fields[2].split(',') {
            let (a, b) = pair
                .split_once('-')
                .ok_or_else(|| Error::parse(line_no, format!("bad edge `{pair}`")))?;
            let a: usize = parse_field(line_no, a, "vertex")?;
            let b: usize = parse_field(line_no, b, "vertex")?;
            let e = graph.edge_index(a, b).ok_or_else(|| {
                Error::InvalidDecomposition(format!("edge {a}-{b} is not in the graph"))
            })?;
            edges.push(e);
        }
        edges.sort_unstable();
        edges.dedup();
        edge_lists[id] = edges;
    }
    if let Some(missing) = seen.iter().position(|&s| !s) {
        return Err(Error::parse(0, format!("node {missing} is not described")));
    }
    let mut kids: Vec<Vec<usize>> = vec![Vec::new(); count];
    for (i, p) in parents.iter().enumerate() {
        if let Some(p) = *p {
            kids[p].push(i);
        }
    }
    let mut nodes = Vec::with_capacity(count);
    for i in 0..count {
        let children = match kids[i][..] {
            [] => None,
            [l, r] => Some((l, r)),
            _ => {
                return Err(Error::InvalidDecomposition(format!(
                    "node {i} has {} children",
                    kids[i].len()
                )))
            }
        };
        nodes.push(BdNode {
            parent: parents[i],
            children,
            edges: std::mem::take(&mut edge_lists[i]),
        });
    }
    BranchDecomposition::new(graph.clone(), nodes)
}
