use std::collections::BTreeSet;
use std::fmt;

use super::{header, ReducedInstance};
use crate::error::{Error, Result};
use crate::graph::{content_lines, parse_field, TemporalGraph};
use crate::paths::{Deadline, PathQuery};

/// Universe `1..=universe` and a family of subsets.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SetCoverInstance {
    pub universe: usize,
    pub sets: Vec<BTreeSet<usize>>,
}

impl SetCoverInstance {
    pub fn new(universe: usize, sets: Vec<BTreeSet<usize>>) -> Result<Self> {
        for set in &sets {
            if let Some(&bad) = set.iter().find(|&&e| e == 0 || e > universe) {
                return Err(Error::VertexOutOfRange {
                    vertex: bad,
                    n: universe + 1,
                });
            }
        }
        Ok(SetCoverInstance { universe, sets })
    }

    /// Indices of the sets containing `element`, ascending.
    pub fn family_of(&self, element: usize) -> Vec<usize> {
        (0..self.sets.len())
            .filter(|&j| self.sets[j].contains(&element))
            .collect()
    }
}

impl fmt::Display for SetCoverInstance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "sc {} {}", self.universe, self.sets.len())?;
        for set in &self.sets {
            let items: Vec<String> = set.iter().map(|e| e.to_string()).collect();
            writeln!(f, "{}", items.join(" "))?;
        }
        Ok(())
    }
}

impl std::str::FromStr for SetCoverInstance {
    type Err = Error;

    /// `sc <n> <m>` followed by `m` lines of element ids.
    fn from_str(text: &str) -> Result<Self> {
        let (_, n, m) = header(text, "sc")?;
        let mut sets = Vec::with_capacity(m);
        for (line, body) in content_lines(text).skip(1) {
            let set: BTreeSet<usize> = body
                .split_whitespace()
                .map(|f| parse_field(line, f, "element"))
                .collect::<Result<_>>()?;
            sets.push(set);
        }
        if sets.len() != m {
            return Err(Error::parse(0, format!("expected {m} sets, found {}", sets.len())));
        }
        SetCoverInstance::new(n, sets)
    }
}

/// Set `j` becomes vertex `j`, then `s = m`, `z = m + 1`. Element `i` gets a
/// chain at label `i * t` through its sets in increasing index order.
pub fn reduce_set_cover(inst: &SetCoverInstance, t: u32) -> Result<ReducedInstance> {
    if t == 0 {
        return Err(Error::PreconditionViolated("deadline must be positive".into()));
    }
    let m = inst.sets.len();
    let (s, z) = (m, m + 1);
    let mut edges = Vec::new();
    for i in 1..=inst.universe {
        let family = inst.family_of(i);
        if family.is_empty() {
            return Err(Error::UncoveredElement(i));
        }
        let label = i as u32 * t;
        let mut chain = vec![s];
        chain.extend(&family);
        chain.push(z);
        edges.extend(chain.windows(2).map(|w| (w[0], w[1], label)));
    }
    let tau = (inst.universe as u32 * t).max(1);
    Ok(ReducedInstance {
        graph: TemporalGraph::build(m + 2, tau, edges)?,
        query: PathQuery::new(s, z, Deadline::Finite(t), false)?,
    })
}
