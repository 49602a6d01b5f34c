//! Seeded instance generators. Source is vertex 0 and sink is vertex `n - 1`;
//! no generator emits an edge between them.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::graph::TemporalGraph;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum GraphClass {
    Random,
    TreeLike,
    SeriesParallel,
}

impl GraphClass {
    pub fn as_str(self) -> &'static str {
        match self {
            GraphClass::Random => "random",
            GraphClass::TreeLike => "tree-like",
            GraphClass::SeriesParallel => "sp",
        }
    }
}

impl std::str::FromStr for GraphClass {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "random" => Ok(GraphClass::Random),
            "tree-like" => Ok(GraphClass::TreeLike),
            "sp" => Ok(GraphClass::SeriesParallel),
            other => Err(Error::PreconditionViolated(format!("unknown generator class `{other}`"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GenParams {
    pub n: usize,
    pub tau: u32,
    /// Edge probability for `random`, terminal attachment probability for
    /// `tree-like`, chance of a parallel branch over a subdivision for `sp`.
    pub p: f64,
    pub seed: u64,
}

pub fn generate(class: GraphClass, params: GenParams) -> Result<TemporalGraph> {
    match class {
        GraphClass::Random => random_instance(params),
        GraphClass::TreeLike => tree_like_instance(params),
        GraphClass::SeriesParallel => sp_instance(params),
    }
}

fn check(params: &GenParams, min_n: usize) -> Result<()> {
    if params.n < min_n {
        return Err(Error::PreconditionViolated(format!("need at least {min_n} vertices")));
    }
    if params.tau == 0 {
        return Err(Error::PreconditionViolated("lifetime must be positive".into()));
    }
    if !(0.0..=1.0).contains(&params.p) {
        return Err(Error::PreconditionViolated("probability must lie in [0, 1]".into()));
    }
    Ok(())
}

/// Each label is kept with probability 1/2; one is forced if none is kept.
fn label_pairs(
    rng: &mut ChaCha8Rng,
    tau: u32,
    pairs: &[(usize, usize)],
) -> Vec<(usize, usize, u32)> {
    let mut edges = Vec::new();
    for &(u, v) in pairs {
        let before = edges.len();
        for t in 1..=tau {
            if rng.random_bool(0.5) {
                edges.push((u, v, t));
            }
        }
        if edges.len() == before {
            edges.push((u, v, rng.random_range(1..=tau)));
        }
    }
    edges
}

/// Every pair except `{0, n - 1}` is present with probability `p`.
pub fn random_instance(params: GenParams) -> Result<TemporalGraph> {
    check(&params, 2)?;
    let n = params.n;
    let mut rng = ChaCha8Rng::seed_from_u64(params.seed);
    let mut pairs = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if (u, v) != (0, n - 1) && rng.random_bool(params.p) {
                pairs.push((u, v));
            }
        }
    }
    let edges = label_pairs(&mut rng, params.tau, &pairs);
    TemporalGraph::build(n, params.tau, edges)
}

/// Interior vertices form a random forest; each is joined to the source and
/// to the sink with probability `p`. At least one vertex touches each terminal.
pub fn tree_like_instance(params: GenParams) -> Result<TemporalGraph> {
    check(&params, 3)?;
    let n = params.n;
    let (s, z) = (0, n - 1);
    let mut rng = ChaCha8Rng::seed_from_u64(params.seed);
    let mut pairs = Vec::new();
    for v in 2..z {
        if !rng.random_bool(0.15) {
            pairs.push((rng.random_range(1..v), v));
        }
    }
    let mut to_s: Vec<usize> = (1..z).filter(|_| rng.random_bool(params.p)).collect();
    let mut to_z: Vec<usize> = (1..z).filter(|_| rng.random_bool(params.p)).collect();
    if to_s.is_empty() {
        to_s.push(rng.random_range(1..z));
    }
    if to_z.is_empty() {
        to_z.push(rng.random_range(1..z));
    }
    pairs.extend(to_s.into_iter().map(|v| (s, v)));
    pairs.extend(to_z.into_iter().map(|v| (v, z)));
    let edges = label_pairs(&mut rng, params.tau, &pairs);
    TemporalGraph::build(n, params.tau, edges)
}

/// Grows the path `s - a - z` by subdividing edges, adding parallel two-edge
/// branches and hanging pendant vertices, so every block stays series-parallel.
pub fn sp_instance(params: GenParams) -> Result<TemporalGraph> {
    check(&params, 3)?;
    let n = params.n;
    let mut rng = ChaCha8Rng::seed_from_u64(params.seed);
    // the sink is created second and renumbered at the end
    let (s, z) = (0, 1);
    let mut pairs = vec![(s, 2), (2, z)];
    for w in 3..n {
        let i = rng.random_range(0..pairs.len());
        let (u, v) = pairs[i];
        if rng.random_bool(0.15) {
            let anchor = if rng.random_bool(0.5) { u } else { v };
            pairs.push((anchor, w));
        } else if rng.random_bool(params.p) {
            pairs.extend([(u, w), (w, v)]);
        } else {
            pairs[i] = (u, w);
            pairs.push((w, v));
        }
    }
    let rename = |x: usize| match x {
        1 => n - 1,
        x if x > 1 => x - 1,
        x => x,
    };
    let pairs: Vec<(usize, usize)> = pairs.into_iter().map(|(u, v)| (rename(u), rename(v))).collect();
    let edges = label_pairs(&mut rng, params.tau, &pairs);
    TemporalGraph::build(n, params.tau, edges)
}
