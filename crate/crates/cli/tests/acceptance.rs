//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! non-zero if any criterion fails.

#[path = "../../core/tests/common/oracle.rs"]
mod oracle;

use std::collections::{BTreeSet, VecDeque};
use std::process::{Command, ExitCode};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use tempsep::generate::{random_instance, sp_instance, tree_like_instance, GenParams};
use tempsep::reductions::{
    reduce_disc_sc, reduce_disc_sc_k, reduce_multiway_cut, reduce_set_cover, reduce_vertex_cover,
    verify_path_decomposition, DiscScInstance, MultiwayCutInstance, PathDecomposition, Rational,
    ReducedInstance, SetCoverInstance, SourceProblem, VertexCoverInstance,
};
use tempsep::structured::{
    branch_decomposition_w2, compute_removal_lists, greedy_rts, structure_violations, rts,
};
use tempsep::{
    approx_separator_deadline, approx_separator_tau, enumerate_deadline_paths,
    exists_deadline_path, flatten_with, is_separator, min_separator_exact, strict_special,
    Deadline, PathQuery, StaticDigraph, StaticGraph, TemporalGraph, VertexSet,
};

type Outcome = Result<String, String>;

fn query(g: &TemporalGraph, t: u32, strict: bool) -> PathQuery {
    PathQuery::new(0, g.n() - 1, Deadline::Finite(t), strict).unwrap()
}

fn suite_one() -> Vec<TemporalGraph> {
    (0..500u64)
        .map(|i| {
            let params = GenParams {
                n: 4 + (i % 7) as usize,
                tau: 1 + ((i / 7) % 5) as u32,
                p: [0.25, 0.35, 0.45][(i % 3) as usize],
                seed: i,
            };
            random_instance(params).unwrap()
        })
        .collect()
}

/// Every (instance, deadline, strictness) of suite 1.
fn queries(graphs: &[TemporalGraph]) -> impl Iterator<Item = (usize, &TemporalGraph, PathQuery)> {
    graphs.iter().enumerate().flat_map(|(i, g)| {
        (1..=g.tau()).flat_map(move |t| [false, true].map(move |strict| (i, g, query(g, t, strict))))
    })
}

fn oracle_valid(g: &TemporalGraph, q: &PathQuery, set: &VertexSet) -> bool {
    let t = q.deadline.resolve(g.tau());
    !oracle::has_path(g, q.source, q.sink, t, q.strict, set)
}

fn oracle_min(g: &TemporalGraph, q: &PathQuery) -> usize {
    let t = q.deadline.resolve(g.tau());
    oracle::min_separator_size(g, q.source, q.sink, t, q.strict).expect("generated instances are feasible")
}

fn c1_exact_oracle(graphs: &[TemporalGraph]) -> Outcome {
    let (mut count, mut nonzero, mut largest) = (0, 0, 0);
    for (i, g, q) in queries(graphs) {
        let r = min_separator_exact(g, &q).map_err(|e| format!("instance {i} {q}: {e}"))?;
        if !is_separator(g, &q, &r.separator).unwrap() || !oracle_valid(g, &q, &r.separator) {
            return Err(format!("instance {i} {q}: {:?} is not a separator", r.separator));
        }
        let best = oracle_min(g, &q);
        if r.size() != best {
            return Err(format!("instance {i} {q}: exact {} but enumeration finds {best}", r.size()));
        }
        count += 1;
        nonzero += usize::from(best > 0);
        largest = largest.max(best);
    }
    Ok(format!("{count} queries, all minimum ({nonzero} non-empty, largest {largest})"))
}

fn c2_predicate(graphs: &[TemporalGraph]) -> Outcome {
    let mut count = 0;
    for (i, g, q) in queries(graphs) {
        let exists = exists_deadline_path(g, &q).unwrap();
        let listed = !enumerate_deadline_paths(g, &q, 1).unwrap().paths.is_empty();
        let t = q.deadline.resolve(g.tau());
        let brute = !oracle::path_interiors(g, 0, g.n() - 1, t, q.strict).is_empty();
        if exists != listed || exists != brute {
            return Err(format!(
                "instance {i} {q}: exists={exists} enumerate={listed} dfs={brute}"
            ));
        }
        count += 1;
    }
    Ok(format!("{count} queries agree"))
}

/// Breadth-first reachability in a flattening avoiding `removed` nodes.
fn static_reach(d: &StaticDigraph, removed: &BTreeSet<usize>) -> bool {
    let mut adj = vec![Vec::new(); d.node_count()];
    for &(a, b) in d.arcs() {
        adj[a].push(b);
    }
    let mut seen = vec![false; d.node_count()];
    let mut queue = VecDeque::from([d.source()]);
    seen[d.source()] = true;
    while let Some(x) = queue.pop_front() {
        if x == d.sink() {
            return true;
        }
        for &y in &adj[x] {
            if !seen[y] && !removed.contains(&y) {
                seen[y] = true;
                queue.push_back(y);
            }
        }
    }
    false
}

fn c3_approx_tau(graphs: &[TemporalGraph]) -> Outcome {
    let mut count = 0;
    for (i, g) in graphs.iter().enumerate() {
        let tau = g.tau() as usize;
        for strict in [false, true] {
            let q = PathQuery::unbounded(0, g.n() - 1, strict).unwrap();
            let approx = approx_separator_tau(g, 0, g.n() - 1, strict).unwrap();
            let exact = min_separator_exact(g, &q).unwrap();
            if !oracle_valid(g, &q, &approx.separator) {
                return Err(format!("instance {i} strict={strict}: approximation is not a separator"));
            }
            if approx.size() > tau * exact.size() {
                return Err(format!(
                    "instance {i} strict={strict}: {} > {tau} * {}",
                    approx.size(),
                    exact.size()
                ));
            }
            let f = flatten_with(g, 0, g.n() - 1, strict).unwrap();
            let lifted = f.lift(&exact.separator);
            if static_reach(&f.digraph, &lifted) || lifted.len() > tau * exact.size() {
                return Err(format!("instance {i} strict={strict}: lifted separator fails"));
            }
            count += 1;
        }
    }
    Ok(format!("{count} instance/strictness pairs, zero violations"))
}

fn c4_approx_deadline(graphs: &[TemporalGraph]) -> Outcome {
    let mut count = 0;
    for (i, g, q) in queries(graphs) {
        let t = q.deadline.resolve(g.tau());
        let approx = approx_separator_deadline(g, 0, g.n() - 1, t, q.strict).unwrap();
        let exact = min_separator_exact(g, &q).unwrap();
        let bound = (g.tau() as usize).pow(2) * exact.size();
        if !oracle_valid(g, &q, &approx.separator) || approx.size() > bound {
            return Err(format!("instance {i} {q}: {:?} (bound {bound})", approx.separator));
        }
        count += 1;
    }
    Ok(format!("{count} queries, zero violations"))
}

fn c5_flattening() -> Outcome {
    let mut with_path = 0;
    for i in 0..200u64 {
        let params = GenParams {
            n: 3 + (i % 6) as usize,
            tau: 1 + (i % 4) as u32,
            p: 0.55,
            seed: 10_000 + i,
        };
        let g = random_instance(params).unwrap();
        for strict in [false, true] {
            let temporal = !oracle::path_interiors(&g, 0, g.n() - 1, g.tau(), strict).is_empty();
            let f = flatten_with(&g, 0, g.n() - 1, strict).unwrap();
            if temporal != static_reach(&f.digraph, &BTreeSet::new()) {
                return Err(format!("instance {i} strict={strict}: temporal={temporal}"));
            }
            with_path += usize::from(temporal);
        }
    }
    Ok(format!("400 checks exact match ({with_path} with a path)"))
}

fn c6_tree(rng: &mut ChaCha8Rng) -> Outcome {
    let mut count = 0;
    for i in 0..200u64 {
        let params = GenParams {
            n: 3 + (i % 10) as usize,
            tau: 1 + (i % 4) as u32,
            p: 0.4,
            seed: 20_000 + i,
        };
        let g = tree_like_instance(params).unwrap();
        for t in 1..=g.tau() {
            for strict in [false, true] {
                let q = query(&g, t, strict);
                let rl = compute_removal_lists(&g, &q).unwrap();
                let r = greedy_rts(&rl);
                if !oracle_valid(&g, &q, &r.separator) || r.size() != oracle_min(&g, &q) {
                    return Err(format!("instance {i} {q}: greedy gives {:?}", r.separator));
                }
                for _ in 0..50 {
                    let set: VertexSet = (1..g.n() - 1).filter(|_| rng.random_bool(0.3)).collect();
                    if rl.covers(&set) != oracle_valid(&g, &q, &set) {
                        return Err(format!("instance {i} {q}: cover equivalence fails for {set:?}"));
                    }
                }
                count += 1;
            }
        }
    }
    Ok(format!("{count} queries, zero violations"))
}

fn c7_rts() -> Outcome {
    let mut count = 0;
    let mut nodes = 0;
    for i in 0..200u64 {
        let params = GenParams {
            n: 4 + (i % 9) as usize,
            tau: 1 + (i % 4) as u32,
            p: 0.5,
            seed: 30_000 + i,
        };
        let g = sp_instance(params).unwrap();
        let footprint = g.footprint();
        let bd = branch_decomposition_w2(&footprint).map_err(|e| format!("instance {i}: {e}"))?;
        let mut decompositions = vec![bd.clone()];
        for x in 0..bd.nodes().len() {
            let sub = StaticGraph::new(g.n(), bd.edge_set(x)).unwrap();
            if let Ok(d) = branch_decomposition_w2(&sub) {
                decompositions.push(d);
            }
        }
        for d in &decompositions {
            if let Some(v) = structure_violations(d).first() {
                return Err(format!("instance {i}: {v}"));
            }
            nodes += d.nodes().len();
        }
        for t in 1..=g.tau() {
            for strict in [false, true] {
                let q = query(&g, t, strict);
                let r = rts(&g, &q).map_err(|e| format!("instance {i} {q}: {e}"))?;
                if !oracle_valid(&g, &q, &r.separator) || r.size() != oracle_min(&g, &q) {
                    return Err(format!("instance {i} {q}: rts gives {:?}", r.separator));
                }
                count += 1;
            }
        }
    }
    Ok(format!("{count} queries and {nodes} decomposition nodes, zero violations"))
}

fn c8_strict_special() -> Outcome {
    type Lifetime = fn(u64) -> u32;
    let cases: [(u32, Lifetime); 3] = [
        (1, |i| 1 + (i % 5) as u32),
        (2, |i| 2 + (i % 4) as u32),
        (3, |_| 3),
    ];
    for (t, tau_of) in cases {
        for i in 0..100u64 {
            let params = GenParams {
                n: 4 + (i % 7) as usize,
                tau: tau_of(i),
                p: 0.4,
                seed: 40_000 + 1000 * u64::from(t) + i,
            };
            let g = random_instance(params).unwrap();
            let q = query(&g, t, true);
            let r = strict_special(&g, 0, g.n() - 1, t).unwrap();
            if !oracle_valid(&g, &q, &r.separator) || r.size() != oracle_min(&g, &q) {
                return Err(format!("t={t} instance {i}: got {:?}", r.separator));
            }
        }
    }
    Ok("300 instances, zero violations".into())
}

fn reduced_optimum(r: &ReducedInstance) -> Result<usize, String> {
    let exact = min_separator_exact(&r.graph, &r.query).map_err(|e| e.to_string())?;
    let brute = oracle_min(&r.graph, &r.query);
    if exact.size() != brute {
        return Err(format!("exact {} disagrees with enumeration {brute}", exact.size()));
    }
    Ok(brute)
}

fn random_graph(rng: &mut ChaCha8Rng, n: usize, p: f64) -> StaticGraph {
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.random_bool(p) {
                edges.push((u, v));
            }
        }
    }
    StaticGraph::new(n, edges).unwrap()
}

fn quarter(rng: &mut ChaCha8Rng, max: i64) -> Rational {
    Rational::new(rng.random_range(0..=4 * max), 4)
}

/// Segments get at least one covered endpoint and length at most `max_len`.
fn random_disc(rng: &mut ChaCha8Rng, max_len: i64) -> DiscScInstance {
    let m = rng.random_range(1..=8);
    let intervals: Vec<Rational> = (0..m).map(|_| quarter(rng, 6)).collect();
    let covered = |p: Rational| intervals.iter().any(|&a| a <= p && p <= a + 1);
    let nsegs = rng.random_range(1..=5);
    let mut segments = Vec::new();
    while segments.len() < nsegs {
        let a = quarter(rng, 7);
        let b = a + quarter(rng, max_len);
        if covered(a) || covered(b) {
            segments.push((a, b));
        }
    }
    DiscScInstance::new(segments, intervals).unwrap()
}

fn c9_reductions(rng: &mut ChaCha8Rng) -> Outcome {
    for i in 0..100 {
        let n = rng.random_range(1..=8);
        let m = rng.random_range(1..=6);
        let mut sets: Vec<BTreeSet<usize>> =
            (0..m).map(|_| (1..=n).filter(|_| rng.random_bool(0.35)).collect()).collect();
        for x in 1..=n {
            if !sets.iter().any(|s| s.contains(&x)) {
                sets[rng.random_range(0..m)].insert(x);
            }
        }
        let inst = SetCoverInstance::new(n, sets).unwrap();
        let t = rng.random_range(1..=2);
        let got = reduced_optimum(&reduce_set_cover(&inst, t).unwrap())?;
        let want = inst.solve_brute().unwrap().size;
        if got != want {
            return Err(format!("set cover {i}: separator {got}, cover {want}\n{inst}"));
        }
    }
    for i in 0..100 {
        let n = rng.random_range(1..=8);
        let inst = VertexCoverInstance {
            graph: random_graph(rng, n, 0.35),
        };
        let got = reduced_optimum(&reduce_vertex_cover(&inst).unwrap())?;
        let want = n + inst.solve_brute().unwrap().size;
        if got != want {
            return Err(format!("vertex cover {i}: separator {got}, n + cover {want}\n{inst}"));
        }
    }
    for i in 0..100 {
        let n = rng.random_range(4..=8);
        let g = random_graph(rng, n, 0.45);
        let mut perm: Vec<usize> = (0..n).collect();
        for j in (1..n).rev() {
            perm.swap(j, rng.random_range(0..=j));
        }
        let terminals = [perm[0], perm[1], perm[2]];
        let edges: Vec<(usize, usize)> = g
            .edges()
            .iter()
            .copied()
            .filter(|(a, b)| !(terminals.contains(a) && terminals.contains(b)))
            .collect();
        let inst = MultiwayCutInstance::new(StaticGraph::new(n, edges).unwrap(), terminals).unwrap();
        let got = reduced_optimum(&reduce_multiway_cut(&inst).unwrap())?;
        let want = inst.solve_brute().unwrap().size;
        if got != want {
            return Err(format!("multiway cut {i}: separator {got}, cut {want}\n{inst}"));
        }
    }
    for i in 0..100 {
        let inst = random_disc(rng, 3);
        let got = reduced_optimum(&reduce_disc_sc(&inst, 1).unwrap())?;
        let want = inst.solve_brute().unwrap().size;
        if got != want {
            return Err(format!("disc-sc {i}: separator {got}, cover {want}\n{inst}"));
        }
    }
    for i in 0..100 {
        let k = rng.random_range(1..=3);
        let inst = random_disc(rng, i64::from(k));
        let red = reduce_disc_sc_k(&inst, 1, k).unwrap();
        let got = reduced_optimum(&red.reduced)?;
        let want = inst.solve_brute().unwrap().size;
        if got != want {
            return Err(format!("disc-sc-k {i} (k={k}): separator {got}, cover {want}\n{inst}"));
        }
    }
    Ok("500 instances, all optima preserved".into())
}

/// Width of a path decomposition checked from scratch.
fn independent_width(g: &StaticGraph, pd: &PathDecomposition) -> Option<usize> {
    for &(a, b) in g.edges() {
        if !pd.bags.iter().any(|bag| bag.contains(&a) && bag.contains(&b)) {
            return None;
        }
    }
    for v in 0..g.n() {
        let hits: Vec<usize> = (0..pd.bags.len()).filter(|&i| pd.bags[i].contains(&v)).collect();
        if hits.windows(2).any(|w| w[1] != w[0] + 1) {
            return None;
        }
    }
    pd.bags.iter().map(|b| b.len()).max().map(|w| w - 1)
}

fn c10_width(rng: &mut ChaCha8Rng) -> Outcome {
    let mut widest = [0; 3];
    for k in 1..=3u32 {
        for i in 0..50 {
            let inst = random_disc(rng, i64::from(k));
            let red = reduce_disc_sc_k(&inst, 1, k).unwrap();
            let footprint = red.reduced.graph.footprint();
            let verified = verify_path_decomposition(&footprint, &red.decomposition)
                .map_err(|e| format!("k={k} instance {i}: {e}"))?;
            let bound = 2 * k as usize + 6;
            if verified > bound || independent_width(&footprint, &red.decomposition) != Some(verified) {
                return Err(format!("k={k} instance {i}: width {verified} > {bound}"));
            }
            let reach = 2 * k as usize;
            if let Some(&(a, b)) = red.crossings.iter().find(|&&(a, b)| b > a + reach) {
                return Err(format!("k={k} instance {i}: crossing from SP position {a} to {b}"));
            }
            widest[k as usize - 1] = widest[k as usize - 1].max(verified);
        }
    }
    Ok(format!("widest per k = 1, 2, 3: {widest:?} (bounds 8, 10, 12)"))
}

fn run_cli(args: &[&str]) -> (Vec<u8>, i32) {
    let out = Command::new(env!("CARGO_BIN_EXE_tempsep"))
        .args(args)
        .output()
        .expect("binary runs");
    (out.stdout, out.status.code().unwrap_or(-1))
}

fn c11_cli_determinism() -> Outcome {
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let path = |name: &str| dir.path().join(name).to_string_lossy().into_owned();
    let mut compared = 0;
    for class in ["random", "tree-like", "sp"] {
        let mut files = Vec::new();
        for run in 0..2 {
            let file = path(&format!("{class}-{run}.tg"));
            let (_, code) =
                run_cli(&["gen", class, "--n", "9", "--tau", "4", "--p", "0.4", "--seed", "17", "--out", &file]);
            if code != 0 {
                return Err(format!("gen {class} exited with {code}"));
            }
            files.push(std::fs::read(&file).map_err(|e| e.to_string())?);
        }
        if files[0] != files[1] {
            return Err(format!("gen {class}: files differ"));
        }
        let file = path(&format!("{class}-0.tg"));
        for mode in ["auto", "exact", "approx"] {
            let args = ["solve", &file, "--source", "0", "--sink", "8", "--deadline", "2", "--mode", mode];
            let (a, code) = run_cli(&args);
            let (b, _) = run_cli(&args);
            if code != 0 || a != b || a.is_empty() {
                return Err(format!("solve {class} {mode}: exit {code}, records differ or empty"));
            }
            compared += 1;
        }
    }
    Ok(format!("3 generated files and {compared} solve records byte-identical across runs"))
}

fn main() -> ExitCode {
    let graphs = suite_one();
    let results: Vec<(&str, Outcome)> = std::thread::scope(|scope| {
        let g = &graphs;
        let jobs: Vec<(&str, std::thread::ScopedJoinHandle<Outcome>)> = vec![
            ("exact solver matches subset enumeration", scope.spawn(move || c1_exact_oracle(g))),
            ("deadline path predicate agrees with enumeration", scope.spawn(move || c2_predicate(g))),
            ("flattening approximation within tau", scope.spawn(move || c3_approx_tau(g))),
            ("windowed approximation within tau squared", scope.spawn(move || c4_approx_deadline(g))),
            ("flattening preserves reachability", scope.spawn(c5_flattening)),
            (
                "greedy tree solver is optimal",
                scope.spawn(|| c6_tree(&mut ChaCha8Rng::seed_from_u64(6))),
            ),
            ("rts is optimal on series-parallel footprints", scope.spawn(c7_rts)),
            ("strict special cases are optimal", scope.spawn(c8_strict_special)),
            (
                "reductions preserve optima",
                scope.spawn(|| c9_reductions(&mut ChaCha8Rng::seed_from_u64(9))),
            ),
            (
                "disc-sc-k path decompositions within 2k+6",
                scope.spawn(|| c10_width(&mut ChaCha8Rng::seed_from_u64(10))),
            ),
            ("cli output is deterministic", scope.spawn(c11_cli_determinism)),
        ];
        jobs.into_iter()
            .map(|(name, h)| (name, h.join().unwrap_or_else(|_| Err("panicked".into()))))
            .collect()
    });
    let mut failed = 0;
    for (i, (name, outcome)) in results.iter().enumerate() {
        match outcome {
            Ok(detail) => println!("criterion {:>2} PASS  {name}: {detail}", i + 1),
            Err(detail) => {
                failed += 1;
                println!("criterion {:>2} FAIL  {name}: {detail}", i + 1);
            }
        }
    }
    println!("{} of {} criteria passed", results.len() - failed, results.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
