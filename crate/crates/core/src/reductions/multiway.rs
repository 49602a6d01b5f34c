use std::fmt;

use super::vertex_cover::{read_edges, write_edges};
use super::{header, ReducedInstance};
use crate::error::{Error, Result};
use crate::graph::{parse_field, StaticGraph, TemporalGraph};
use crate::paths::{Deadline, PathQuery};

/// A graph with three terminals to be pairwise separated.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MultiwayCutInstance {
    pub graph: StaticGraph,
    pub terminals: [usize; 3],
}

impl MultiwayCutInstance {
    pub fn new(graph: StaticGraph, terminals: [usize; 3]) -> Result<Self> {
        for &t in &terminals {
            if t >= graph.n() {
                return Err(Error::VertexOutOfRange {
                    vertex: t,
                    n: graph.n(),
                });
            }
        }
        let [a, b, c] = terminals;
        if a == b || a == c || b == c {
            return Err(Error::PreconditionViolated("terminals must be distinct".into()));
        }
        Ok(MultiwayCutInstance { graph, terminals })
    }
}

impl fmt::Display for MultiwayCutInstance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "mwc {} {}", self.graph.n(), self.graph.edges().len())?;
        write_edges(f, &self.graph)?;
        let [a, b, c] = self.terminals;
        writeln!(f, "terminals {a} {b} {c}")
    }
}

impl std::str::FromStr for MultiwayCutInstance {
    type Err = Error;

    /// `mwc <n> <m>`, `m` edge lines, then `terminals <a> <b> <c>`.
    fn from_str(text: &str) -> Result<Self> {
        let (_, n, m) = header(text, "mwc")?;
        let (edges, rest) = read_edges(text, m)?;
        let [(line, body)] = &rest[..] else {
            return Err(Error::parse(0, "expected one `terminals` line after the edges"));
        };
        let f: Vec<&str> = body.split_whitespace().collect();
        if f.len() != 4 || f[0] != "terminals" {
            return Err(Error::parse(*line, "expected `terminals <a> <b> <c>`"));
        }
        let mut terminals = [0; 3];
        for (slot, field) in terminals.iter_mut().zip(&f[1..]) {
            *slot = parse_field(*line, field, "terminal")?;
        }
        MultiwayCutInstance::new(StaticGraph::new(n, edges)?, terminals)
    }
}

/// Non-terminals keep their relative order, then `s` and `z` follow. Lifetime
/// 2, deadline 1, non-strict.
pub fn reduce_multiway_cut(inst: &MultiwayCutInstance) -> Result<ReducedInstance> {
    let [z1, z2, z3] = inst.terminals;
    for (a, b) in [(z1, z2), (z1, z3), (z2, z3)] {
        if inst.graph.contains_edge(a, b) {
            return Err(Error::TerminalAdjacent(a, b));
        }
    }
    let n = inst.graph.n();
    let mut id = vec![usize::MAX; n];
    let mut next = 0;
    for (v, slot) in id.iter_mut().enumerate() {
        if !inst.terminals.contains(&v) {
            *slot = next;
            next += 1;
        }
    }
    let (s, z) = (next, next + 1);
    let mut edges = Vec::new();
    for &(a, b) in inst.graph.edges() {
        let at = inst.terminals.iter().position(|&t| t == a);
        let bt = inst.terminals.iter().position(|&t| t == b);
        match (at, bt) {
            (None, None) => {
                edges.push((id[a], id[b], 1));
                edges.push((id[a], id[b], 2));
            }
            (Some(k), None) | (None, Some(k)) => {
                let v = if at.is_some() { id[b] } else { id[a] };
                match k {
                    0 => edges.push((s, v, 1)),
                    1 => {
                        edges.push((v, z, 1));
                        edges.push((s, v, 2));
                    }
                    _ => {
                        edges.push((v, z, 1));
                        edges.push((v, z, 2));
                    }
                }
            }
            (Some(_), Some(_)) => unreachable!("terminal adjacency rejected above"),
        }
    }
    Ok(ReducedInstance {
        graph: TemporalGraph::build(n - 1, 2, edges)?,
        query: PathQuery::new(s, z, Deadline::Finite(1), false)?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::min_separator_exact;

    // z1=0, a=1, z2=2, b=3, z3=4
    fn two_paths() -> MultiwayCutInstance {
        let g = StaticGraph::new(5, [(0, 1), (1, 2), (2, 3), (3, 4)]).unwrap();
        MultiwayCutInstance::new(g, [0, 2, 4]).unwrap()
    }

    #[test]
    fn counts_and_layers() {
        let r = reduce_multiway_cut(&two_paths()).unwrap();
        assert_eq!(r.graph.n(), 4);
        let g = StaticGraph::new(5, [(0, 1), (1, 3), (3, 4)]).unwrap();
        let inst = MultiwayCutInstance::new(g, [0, 2, 4]).unwrap();
        let r = reduce_multiway_cut(&inst).unwrap();
        // non-terminals 1, 3 become 0, 1
        assert!(r.graph.contains_edge(0, 1, 1) && r.graph.contains_edge(0, 1, 2));
    }

    #[test]
    fn optimum_is_two() {
        let r = reduce_multiway_cut(&two_paths()).unwrap();
        assert_eq!(min_separator_exact(&r.graph, &r.query).unwrap().size(), 2);
    }

    #[test]
    fn adjacent_terminals_are_reported() {
        let g = StaticGraph::new(4, [(0, 1), (1, 3)]).unwrap();
        let inst = MultiwayCutInstance::new(g, [0, 1, 2]).unwrap();
        assert_eq!(reduce_multiway_cut(&inst), Err(Error::TerminalAdjacent(0, 1)));
    }

    #[test]
    fn text_round_trip() {
        let inst = two_paths();
        assert_eq!(inst.to_string().parse::<MultiwayCutInstance>().unwrap(), inst);
        assert!("mwc 3 0\nterminals 0 1 1\n".parse::<MultiwayCutInstance>().is_err());
    }
}
