use std::fmt;

use super::{header, ReducedInstance};
use crate::error::{Error, Result};
use crate::graph::{content_lines, parse_field, StaticGraph, TemporalGraph};
use crate::paths::{Deadline, PathQuery};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VertexCoverInstance {
    pub graph: StaticGraph,
}

pub(crate) fn write_edges(f: &mut fmt::Formatter<'_>, g: &StaticGraph) -> fmt::Result {
    for (a, b) in g.edges() {
        writeln!(f, "{a} {b}")?;
    }
    Ok(())
}

/// Edges read so far and the numbered lines that follow them.
pub(crate) type EdgesAndRest = (Vec<(usize, usize)>, Vec<(usize, String)>);

/// Reads `m` edge lines after the header, stopping at the first line that
/// does not look like an edge. Returns the edges and the remaining lines.
pub(crate) fn read_edges(text: &str, m: usize) -> Result<EdgesAndRest> {
    let mut edges = Vec::with_capacity(m);
    let mut rest = Vec::new();
    for (line, body) in content_lines(text).skip(1) {
        if edges.len() < m {
            let f: Vec<&str> = body.split_whitespace().collect();
            if f.len() != 2 {
                return Err(Error::parse(line, "expected `<u> <v>`"));
            }
            edges.push((parse_field(line, f[0], "vertex")?, parse_field(line, f[1], "vertex")?));
        } else {
            rest.push((line, body.to_string()));
        }
    }
    if edges.len() != m {
        return Err(Error::parse(0, format!("expected {m} edges, found {}", edges.len())));
    }
    Ok((edges, rest))
}

impl fmt::Display for VertexCoverInstance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "vc {} {}", self.graph.n(), self.graph.edges().len())?;
        write_edges(f, &self.graph)
    }
}

impl std::str::FromStr for VertexCoverInstance {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        let (_, n, m) = header(text, "vc")?;
        let (edges, rest) = read_edges(text, m)?;
        if let Some((line, _)) = rest.first() {
            return Err(Error::parse(*line, "unexpected content after edges"));
        }
        Ok(VertexCoverInstance {
            graph: StaticGraph::new(n, edges)?,
        })
    }
}

/// Gadget vertices `s_v = 3v`, `v = 3v + 1`, `z_v = 3v + 2`, then `s = 3n`
/// and `z = 3n + 1`. Strict query with deadline 3 on lifetime 4; the optimum
/// equals `n` plus the minimum vertex cover size.
pub fn reduce_vertex_cover(inst: &VertexCoverInstance) -> Result<ReducedInstance> {
    let n = inst.graph.n();
    let (s, z) = (3 * n, 3 * n + 1);
    let sv = |v: usize| 3 * v;
    let mid = |v: usize| 3 * v + 1;
    let zv = |v: usize| 3 * v + 2;
    let mut edges = Vec::new();
    for v in 0..n {
        edges.extend([
            (s, sv(v), 2),
            (sv(v), mid(v), 3),
            (mid(v), z, 4),
            (s, mid(v), 1),
            (mid(v), zv(v), 2),
            (zv(v), z, 3),
            (zv(v), z, 4),
        ]);
    }
    for &(u, v) in inst.graph.edges() {
        edges.push((sv(u), zv(v), 3));
        edges.push((sv(v), zv(u), 3));
    }
    Ok(ReducedInstance {
        graph: TemporalGraph::build(3 * n + 2, 4, edges)?,
        query: PathQuery::new(s, z, Deadline::Finite(3), true)?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::min_separator_exact;

    #[test]
    fn single_edge_gives_three() {
        let inst = VertexCoverInstance {
            graph: StaticGraph::new(2, [(0, 1)]).unwrap(),
        };
        let r = reduce_vertex_cover(&inst).unwrap();
        assert_eq!(r.graph.n(), 8);
        assert!(r.graph.contains_edge(0, 5, 3) && r.graph.contains_edge(3, 2, 3));
        assert_eq!(min_separator_exact(&r.graph, &r.query).unwrap().size(), 3);
    }

    #[test]
    fn text_round_trip() {
        let inst: VertexCoverInstance = "vc 3 2\n0 1\n1 2\n".parse().unwrap();
        assert_eq!(inst.to_string().parse::<VertexCoverInstance>().unwrap(), inst);
        assert!("vc 3 2\n0 1\n".parse::<VertexCoverInstance>().is_err());
    }
}
