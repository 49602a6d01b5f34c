use std::fmt;

use crate::error::{Error, Result};
use crate::graph::{content_lines, parse_field, StaticGraph, VertexSet};

/// Bags along a path, in order.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct PathDecomposition {
    pub bags: Vec<VertexSet>,
}

impl PathDecomposition {
    pub fn width(&self) -> usize {
        self.bags.iter().map(|b| b.len()).max().unwrap_or(1).saturating_sub(1)
    }
}

/// Checks edge coverage and contiguity; returns the width.
pub fn verify_path_decomposition(g: &StaticGraph, pd: &PathDecomposition) -> Result<usize> {
    for &(a, b) in g.edges() {
        if !pd.bags.iter().any(|bag| bag.contains(&a) && bag.contains(&b)) {
            return Err(Error::EdgeUncovered(a, b));
        }
    }
    let mut vertices = VertexSet::new();
    for bag in &pd.bags {
        vertices.extend(bag);
    }
    for v in vertices {
        let hits: Vec<usize> = (0..pd.bags.len()).filter(|&i| pd.bags[i].contains(&v)).collect();
        if hits.last().unwrap() - hits[0] + 1 != hits.len() {
            return Err(Error::VertexBagsDisconnected(v));
        }
    }
    Ok(pd.width())
}

impl fmt::Display for PathDecomposition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "pd {}", self.bags.len())?;
        for bag in &self.bags {
            let items: Vec<String> = bag.iter().map(|v| v.to_string()).collect();
            if items.is_empty() {
                writeln!(f, "bag")?;
            } else {
                writeln!(f, "bag {}", items.join(" "))?;
            }
        }
        Ok(())
    }
}

impl std::str::FromStr for PathDecomposition {
    type Err = Error;

    /// `pd <count>` then `bag v1 v2 ...` per bag.
    fn from_str(text: &str) -> Result<Self> {
        let mut lines = content_lines(text);
        let (line, head) = lines.next().ok_or_else(|| Error::parse(1, "missing `pd` header"))?;
        let f: Vec<&str> = head.split_whitespace().collect();
        if f.len() != 2 || f[0] != "pd" {
            return Err(Error::parse(line, "expected `pd <count>`"));
        }
        let count: usize = parse_field(line, f[1], "bag count")?;
        let mut bags = Vec::with_capacity(count);
        for (line, body) in lines {
            let mut fields = body.split_whitespace();
            if fields.next() != Some("bag") {
                return Err(Error::parse(line, "expected `bag ...`"));
            }
            bags.push(fields.map(|v| parse_field(line, v, "vertex")).collect::<Result<_>>()?);
        }
        if bags.len() != count {
            return Err(Error::parse(0, format!("expected {count} bags, found {}", bags.len())));
        }
        Ok(PathDecomposition { bags })
    }
}
