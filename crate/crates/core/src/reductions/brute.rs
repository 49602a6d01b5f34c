//! Exhaustive solvers for the source problems, used to check reductions.

use std::collections::BTreeSet;

use super::disc::DiscScInstance;
use super::multiway::MultiwayCutInstance;
use super::set_cover::SetCoverInstance;
use super::vertex_cover::VertexCoverInstance;
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SourceSolution {
    pub size: usize,
    pub witness: Vec<usize>,
}

pub trait SourceProblem {
    /// Elements that may be chosen.
    fn candidates(&self) -> Vec<usize>;

    fn is_solution(&self, chosen: &BTreeSet<usize>) -> bool;

    /// Tries subsets by increasing size, lexicographically within a size.
    fn solve_brute(&self) -> Result<SourceSolution> {
        let cand = self.candidates();
        for size in 0..=cand.len() {
            let mut idx: Vec<usize> = (0..size).collect();
            loop {
                let chosen: BTreeSet<usize> = idx.iter().map(|&i| cand[i]).collect();
                if self.is_solution(&chosen) {
                    return Ok(SourceSolution {
                        size,
                        witness: chosen.into_iter().collect(),
                    });
                }
                // next combination
                let Some(pos) = (0..size).rev().find(|&p| idx[p] < cand.len() - size + p) else {
                    break;
                };
                idx[pos] += 1;
                for p in pos + 1..size {
                    idx[p] = idx[p - 1] + 1;
                }
            }
        }
        Err(Error::SourceInfeasible("no subset of candidates is a solution".into()))
    }
}

impl SourceProblem for SetCoverInstance {
    fn candidates(&self) -> Vec<usize> {
        (0..self.sets.len()).collect()
    }

    fn is_solution(&self, chosen: &BTreeSet<usize>) -> bool {
        (1..=self.universe).all(|x| chosen.iter().any(|&j| self.sets[j].contains(&x)))
    }
}

impl SourceProblem for VertexCoverInstance {
    fn candidates(&self) -> Vec<usize> {
        (0..self.graph.n()).collect()
    }

    fn is_solution(&self, chosen: &BTreeSet<usize>) -> bool {
        self.graph
            .edges()
            .iter()
            .all(|(a, b)| chosen.contains(a) || chosen.contains(b))
    }
}

impl SourceProblem for MultiwayCutInstance {
    fn candidates(&self) -> Vec<usize> {
        (0..self.graph.n())
            .filter(|v| !self.terminals.contains(v))
            .collect()
    }

    /// No two terminals stay connected once `chosen` is deleted.
    fn is_solution(&self, chosen: &BTreeSet<usize>) -> bool {
        let rest = self.graph.remove_vertices(chosen);
        self.terminals.iter().all(|&t| {
            let comp = rest.component_of(t);
            self.terminals.iter().filter(|x| comp.contains(x)).count() == 1
        })
    }
}

impl SourceProblem for DiscScInstance {
    fn candidates(&self) -> Vec<usize> {
        (0..self.intervals.len()).collect()
    }

    fn is_solution(&self, chosen: &BTreeSet<usize>) -> bool {
        (0..self.segments.len()).all(|j| chosen.iter().any(|&i| self.covers_segment(i, j)))
    }
}
