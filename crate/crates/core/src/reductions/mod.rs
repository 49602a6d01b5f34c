//! Compilers from classical covering problems into separator instances, and
//! brute-force solvers for the source problems.

pub mod brute;
pub mod disc;
pub mod multiway;
pub mod pathdec;
pub mod rational;
pub mod set_cover;
pub mod vertex_cover;

use crate::graph::TemporalGraph;
use crate::paths::PathQuery;

pub use brute::{SourceProblem, SourceSolution};
pub use disc::{compute_sp, reduce_disc_sc, reduce_disc_sc_k, DiscScInstance, DiscScKReduction};
pub use multiway::{reduce_multiway_cut, MultiwayCutInstance};
pub use pathdec::{verify_path_decomposition, PathDecomposition};
pub use rational::{format_rational, parse_rational, Rational};
pub use set_cover::{reduce_set_cover, SetCoverInstance};
pub use vertex_cover::{reduce_vertex_cover, VertexCoverInstance};

/// A compiled instance: the graph and the query it must be solved for.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReducedInstance {
    pub graph: TemporalGraph,
    pub query: PathQuery,
}

/// Splits `<keyword> <a> <b>` headers shared by the source formats.
pub(crate) fn header(text: &str, keyword: &str) -> crate::Result<(usize, usize, usize)> {
    use crate::error::Error;
    use crate::graph::{content_lines, parse_field};
    let (line, head) = content_lines(text)
        .next()
        .ok_or_else(|| Error::parse(1, format!("missing `{keyword}` header")))?;
    let fields: Vec<&str> = head.split_whitespace().collect();
    if fields.len() != 3 || fields[0] != keyword {
        return Err(Error::parse(line, format!("expected `{keyword} <a> <b>`")));
    }
    Ok((
        line,
        parse_field(line, fields[1], "count")?,
        parse_field(line, fields[2], "count")?,
    ))
}
