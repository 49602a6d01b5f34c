//! Discrete segment covering: segments on the line must each have an endpoint
//! inside a chosen unit interval.

use std::fmt;

use super::pathdec::{verify_path_decomposition, PathDecomposition};
use super::rational::{format_rational, parse_rational, Rational};
use super::{header, ReducedInstance};
use crate::error::{Error, Result};
use crate::graph::{content_lines, TemporalGraph, VertexSet};
use crate::paths::{Deadline, PathQuery};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DiscScInstance {
    /// Closed segments `(start, end)`.
    pub segments: Vec<(Rational, Rational)>,
    /// Starts of the closed unit intervals, ascending.
    pub intervals: Vec<Rational>,
}

impl DiscScInstance {
    /// Sorts the intervals by start; equal starts keep their input order.
    pub fn new(segments: Vec<(Rational, Rational)>, mut intervals: Vec<Rational>) -> Result<Self> {
        if let Some(j) = segments.iter().position(|(a, b)| a > b) {
            return Err(Error::PreconditionViolated(format!(
                "segment {j} starts after it ends"
            )));
        }
        intervals.sort();
        Ok(DiscScInstance {
            segments,
            intervals,
        })
    }

    pub fn covers(&self, i: usize, p: Rational) -> bool {
        let a = self.intervals[i];
        a <= p && p <= a + 1
    }

    /// First and last interval containing `p`; the intervals in between all
    /// contain it too.
    pub fn cover_range(&self, p: Rational) -> Option<(usize, usize)> {
        let first = (0..self.intervals.len()).find(|&i| self.covers(i, p))?;
        let last = (0..self.intervals.len()).rev().find(|&i| self.covers(i, p))?;
        Some((first, last))
    }

    pub fn covers_segment(&self, i: usize, j: usize) -> bool {
        let (a, b) = self.segments[j];
        self.covers(i, a) || self.covers(i, b)
    }

    pub fn max_length(&self) -> Rational {
        self.segments
            .iter()
            .map(|(a, b)| b - a)
            .max()
            .unwrap_or_default()
    }

    /// Endpoints after collapsing a segment onto its only covered endpoint.
    fn effective(&self, j: usize) -> Result<(Rational, Rational)> {
        let (a, b) = self.segments[j];
        match (self.cover_range(a).is_some(), self.cover_range(b).is_some()) {
            (true, true) => Ok((a, b)),
            (true, false) => Ok((a, a)),
            (false, true) => Ok((b, b)),
            (false, false) => Err(Error::UncoveredSegment(j)),
        }
    }
}

impl fmt::Display for DiscScInstance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "disc {} {}", self.segments.len(), self.intervals.len())?;
        for (a, b) in &self.segments {
            writeln!(f, "seg {} {}", format_rational(a), format_rational(b))?;
        }
        for a in &self.intervals {
            writeln!(f, "int {}", format_rational(a))?;
        }
        Ok(())
    }
}

impl std::str::FromStr for DiscScInstance {
    type Err = Error;

    /// `disc <nsegs> <nints>`, then `seg <p/q> <p/q>` and `int <p/q>` lines.
    fn from_str(text: &str) -> Result<Self> {
        let (_, nsegs, nints) = header(text, "disc")?;
        let mut segments = Vec::new();
        let mut intervals = Vec::new();
        for (line, body) in content_lines(text).skip(1) {
            let f: Vec<&str> = body.split_whitespace().collect();
            match f[..] {
                ["seg", a, b] => segments.push((parse_rational(line, a)?, parse_rational(line, b)?)),
                ["int", a] => intervals.push(parse_rational(line, a)?),
                _ => return Err(Error::parse(line, "expected `seg <a> <b>` or `int <a>`")),
            }
        }
        if segments.len() != nsegs || intervals.len() != nints {
            return Err(Error::parse(
                0,
                format!(
                    "expected {nsegs} segments and {nints} intervals, found {} and {}",
                    segments.len(),
                    intervals.len()
                ),
            ));
        }
        DiscScInstance::new(segments, intervals)
    }
}

/// Sparse subsequence of unit intervals (given by sorted starts) that covers
/// every point the full family covers. Returns 0-based indices.
pub fn compute_sp(starts: &[Rational]) -> Result<Vec<usize>> {
    if starts.is_empty() {
        return Err(Error::EmptyFamily);
    }
    if starts.windows(2).any(|w| w[0] > w[1]) {
        return Err(Error::PreconditionViolated("interval starts are not sorted".into()));
    }
    let n = starts.len();
    let mut sp = vec![0];
    let mut index = 0;
    loop {
        let end = starts[index] + 1;
        let j = (index + 1..n)
            .rev()
            .find(|&j| starts[j] < end)
            .unwrap_or(index + 1);
        if j >= n {
            return Ok(sp);
        }
        sp.push(j);
        index = j;
    }
}

fn chain(
    from: usize,
    to: usize,
    vertex: impl Fn(usize) -> usize,
) -> impl DoubleEndedIterator<Item = usize> {
    (from..=to).map(vertex)
}

/// Interval `i` becomes vertex `i`, then `s = m`, `z = m + 1`. Segment `j`
/// (1-based) gets a path at label `j * t` through the intervals covering
/// its endpoints.
pub fn reduce_disc_sc(inst: &DiscScInstance, t: u32) -> Result<ReducedInstance> {
    if t == 0 {
        return Err(Error::PreconditionViolated("deadline must be positive".into()));
    }
    let m = inst.intervals.len();
    let (s, z) = (m, m + 1);
    let mut edges = Vec::new();
    for j in 0..inst.segments.len() {
        let (a, b) = inst.effective(j)?;
        let (ls, rs) = inst.cover_range(a).expect("covered");
        let (le, re) = inst.cover_range(b).expect("covered");
        let mut walk = vec![s];
        if le <= rs {
            walk.extend(chain(ls, re, |i| i));
        } else {
            walk.extend(chain(ls, rs, |i| i));
            walk.extend(chain(le, re, |i| i));
        }
        walk.push(z);
        let label = (j as u32 + 1) * t;
        edges.extend(walk.windows(2).map(|w| (w[0], w[1], label)));
    }
    let tau = (inst.segments.len() as u32 * t).max(1);
    Ok(ReducedInstance {
        graph: TemporalGraph::build(m + 2, tau, edges)?,
        query: PathQuery::new(s, z, Deadline::Finite(t), false)?,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DiscScKReduction {
    pub reduced: ReducedInstance,
    pub decomposition: PathDecomposition,
    /// Verified width of `decomposition`.
    pub width: usize,
    /// Positions in the SP list of the two ends of every crossing edge.
    pub crossings: Vec<(usize, usize)>,
}

/// Two vertices per interval, `u_i = 2i` and `v_i = 2i + 1`, then
/// `s = 2m`, `z = 2m + 1`. Segments whose endpoint cover ranges are disjoint
/// route through the `u` chain and one crossing edge between SP intervals,
/// which keeps the footprint's pathwidth at most `2k + 6`.
pub fn reduce_disc_sc_k(inst: &DiscScInstance, t: u32, k: u32) -> Result<DiscScKReduction> {
    if t == 0 || k == 0 {
        return Err(Error::PreconditionViolated("deadline and k must be positive".into()));
    }
    if inst.max_length() > Rational::from_integer(i64::from(k)) {
        return Err(Error::PreconditionViolated(format!(
            "a segment is longer than {k}"
        )));
    }
    let m = inst.intervals.len();
    let sp = compute_sp(&inst.intervals)?;
    let (u, v) = (|i: usize| 2 * i, |i: usize| 2 * i + 1);
    let (s, z) = (2 * m, 2 * m + 1);
    let first_sp = |p: Rational| sp.iter().position(|&i| inst.covers(i, p));
    let mut edges = Vec::new();
    let mut crossings = Vec::new();
    for j in 0..inst.segments.len() {
        let (a, b) = inst.effective(j)?;
        let (ls, rs) = inst.cover_range(a).expect("covered");
        let (le, re) = inst.cover_range(b).expect("covered");
        let mut walk = vec![s];
        if le <= rs {
            walk.extend(chain(ls, re, v));
        } else {
            let pa = first_sp(a).expect("SP covers every covered point");
            let pb = first_sp(b).expect("SP covers every covered point");
            let (ma, mb) = (sp[pa], sp[pb]);
            crossings.push((pa, pb));
            walk.extend(chain(ls, rs, v));
            walk.extend(chain(ma, rs, u).rev());
            walk.extend(chain(le, mb, u).rev());
            walk.extend(chain(le, re, v));
        }
        walk.push(z);
        let label = (j as u32 + 1) * t;
        edges.extend(walk.windows(2).map(|w| (w[0], w[1], label)));
    }
    let tau = (inst.segments.len() as u32 * t).max(1);
    let graph = TemporalGraph::build(2 * m + 2, tau, edges)?;
    let decomposition = sp_bags(m, &sp, k as usize, s, z);
    let width = verify_path_decomposition(&graph.footprint(), &decomposition)?;
    Ok(DiscScKReduction {
        reduced: ReducedInstance {
            graph,
            query: PathQuery::new(s, z, Deadline::Finite(t), false)?,
        },
        decomposition,
        width,
        crossings,
    })
}

/// Bag `i` holds `u_i, v_i, u_{i+1}, v_{i+1}, s, z` and the `u` vertices of
/// the `2k + 1` SP intervals starting at the last SP interval at or before `i`.
fn sp_bags(m: usize, sp: &[usize], k: usize, s: usize, z: usize) -> PathDecomposition {
    let (u, v) = (|i: usize| 2 * i, |i: usize| 2 * i + 1);
    let bags = (0..m)
        .map(|i| {
            let mut bag: VertexSet = [u(i), v(i), s, z].into();
            if i + 1 < m {
                bag.extend([u(i + 1), v(i + 1)]);
            }
            let li = sp.iter().rposition(|&x| x <= i).expect("sp starts at 0");
            bag.extend(sp[li..sp.len().min(li + 2 * k + 1)].iter().map(|&x| u(x)));
            bag
        })
        .collect();
    PathDecomposition { bags }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::min_separator_exact;
    use crate::reductions::brute::SourceProblem;

    fn q(p: i64, d: i64) -> Rational {
        Rational::new(p, d)
    }

    fn int(p: i64) -> Rational {
        Rational::from_integer(p)
    }

    #[test]
    fn sp_examples() {
        assert_eq!(compute_sp(&[int(0)]).unwrap(), vec![0]);
        assert_eq!(compute_sp(&[int(0), q(1, 2), int(2)]).unwrap(), vec![0, 1, 2]);
        // the middle interval is skipped: the third starts before the first ends
        assert_eq!(
            compute_sp(&[int(0), q(1, 4), q(1, 2), int(3)]).unwrap(),
            vec![0, 2, 3]
        );
        assert_eq!(compute_sp(&[]), Err(Error::EmptyFamily));
    }

    #[test]
    fn overlapping_cover_ranges_give_one_chain() {
        let inst = DiscScInstance::new(vec![(q(1, 2), q(6, 5))], vec![int(0), int(1)]).unwrap();
        assert_eq!(inst.cover_range(q(1, 2)), Some((0, 0)));
        assert_eq!(inst.cover_range(q(6, 5)), Some((1, 1)));
        let r = reduce_disc_sc(&inst, 1).unwrap();
        let pairs: Vec<_> = r.graph.edges().iter().map(|e| (e.u, e.v)).collect();
        // s = 2, z = 3: s - v0 - v1 - z
        assert_eq!(pairs, vec![(0, 1), (0, 2), (1, 3)]);
    }

    #[test]
    fn disjoint_ranges_bridge_the_gap() {
        // start covered by 0, 1; end covered by 3 only
        let inst = DiscScInstance::new(
            vec![(q(3, 4), int(4))],
            vec![int(0), q(1, 2), int(2), q(7, 2)],
        )
        .unwrap();
        let r = reduce_disc_sc(&inst, 2).unwrap();
        assert!(r.graph.contains_edge(1, 3, 2));
        assert_eq!(r.graph.edge_count(), 4);
        assert_eq!(min_separator_exact(&r.graph, &r.query).unwrap().size(), 1);
    }

    #[test]
    fn one_sided_cover_collapses_and_none_fails() {
        let inst = DiscScInstance::new(vec![(q(1, 2), int(10))], vec![int(0)]).unwrap();
        let r = reduce_disc_sc(&inst, 1).unwrap();
        assert_eq!(r.graph.edge_count(), 2);
        let bad = DiscScInstance::new(vec![(int(5), int(6))], vec![int(0)]).unwrap();
        assert_eq!(reduce_disc_sc(&bad, 1), Err(Error::UncoveredSegment(0)));
    }

    #[test]
    fn crossing_path_has_no_bypass() {
        // start covered by 0, 1 (first SP interval 0); end covered by 2 and 3
        let inst = DiscScInstance::new(
            vec![(q(7, 10), q(7, 2)), (q(6, 5), q(11, 2))],
            vec![int(0), q(1, 2), int(3), int(5)],
        )
        .unwrap();
        let red = reduce_disc_sc_k(&inst, 1, 5).unwrap();
        assert!(red.width <= 2 * 5 + 6);
        let sep = min_separator_exact(&red.reduced.graph, &red.reduced.query).unwrap();
        assert_eq!(sep.size(), inst.solve_brute().unwrap().size);
    }

    #[test]
    fn disc_sc_k_bags_verify() {
        let inst = DiscScInstance::new(
            vec![(int(0), q(1, 2)), (q(1, 3), q(4, 3)), (q(3, 2), q(5, 2))],
            vec![int(0), q(1, 3), q(2, 3), int(1), q(3, 2), int(2)],
        )
        .unwrap();
        let red = reduce_disc_sc_k(&inst, 1, 1).unwrap();
        assert!(red.width <= 8);
        for &(a, b) in &red.crossings {
            assert!(b <= a + 2);
        }
        let sep = min_separator_exact(&red.reduced.graph, &red.reduced.query).unwrap();
        assert_eq!(sep.size(), inst.solve_brute().unwrap().size);
    }

    #[test]
    fn long_segments_are_rejected() {
        let inst = DiscScInstance::new(vec![(int(0), int(3))], vec![int(0)]).unwrap();
        assert!(matches!(
            reduce_disc_sc_k(&inst, 1, 2),
            Err(Error::PreconditionViolated(_))
        ));
    }

    #[test]
    fn text_round_trip_and_bad_rationals() {
        let inst = DiscScInstance::new(vec![(q(1, 2), q(3, 2))], vec![int(1), int(0)]).unwrap();
        let text = inst.to_string();
        assert_eq!(text, "disc 1 2\nseg 1/2 3/2\nint 0\nint 1\n");
        assert_eq!(text.parse::<DiscScInstance>().unwrap(), inst);
        assert!("disc 1 0\nseg 1/0 1\n".parse::<DiscScInstance>().is_err());
    }
}
