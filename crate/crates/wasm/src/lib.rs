//! Browser bindings. Each export takes and returns plain strings so the page
//! needs no generated types; results are JSON objects, failures carry an
//! `error` code.

use serde::Serialize;
use wasm_bindgen::prelude::wasm_bindgen;

use tempsep::generate::{generate, GenParams, GraphClass};
use tempsep::structured::{is_treelike, rts, tree_separator};
use tempsep::{
    approx_separator_deadline, approx_separator_tau, fastest_travel_time, min_separator_exact,
    Deadline, Error, PathQuery, SeparatorResult, TemporalGraph,
};

#[derive(Serialize)]
struct Failure<'a> {
    error: &'a str,
    message: String,
}

#[derive(Serialize)]
struct Solved {
    mode: &'static str,
    separator: Vec<usize>,
    size: usize,
    guarantee: Option<u64>,
}

#[derive(Serialize)]
struct FastestPath {
    travel_time: Option<u32>,
    /// `[from, to, label]` per hop.
    hops: Vec<[u32; 3]>,
}

fn json<T: Serialize>(result: Result<T, Error>) -> String {
    match result {
        Ok(v) => serde_json::to_string(&v),
        Err(e) => serde_json::to_string(&Failure {
            error: e.code(),
            message: e.to_string(),
        }),
    }
    .expect("plain data serializes")
}

/// `mode` is one of `exact`, `approx`, `rts`, `tree` or `auto`.
pub fn solve_json(graph: &str, source: usize, sink: usize, deadline: &str, strict: bool, mode: &str) -> String {
    json(solve_inner(graph, source, sink, deadline, strict, mode))
}

fn solve_inner(
    graph: &str,
    source: usize,
    sink: usize,
    deadline: &str,
    strict: bool,
    mode: &str,
) -> Result<Solved, Error> {
    let g: TemporalGraph = graph.parse()?;
    let q = PathQuery::new(source, sink, deadline.trim().parse()?, strict)?;
    let approx = |g: &TemporalGraph, q: &PathQuery| -> Result<SeparatorResult, Error> {
        match q.deadline {
            Deadline::Finite(t) if t < g.tau() => approx_separator_deadline(g, source, sink, t, strict),
            _ => approx_separator_tau(g, source, sink, strict),
        }
    };
    let r = match mode {
        "exact" => min_separator_exact(&g, &q)?,
        "approx" => approx(&g, &q)?,
        "rts" => rts(&g, &q)?,
        "tree" => tree_separator(&g, &q)?,
        "auto" => {
            if is_treelike(&g, source, sink) {
                tree_separator(&g, &q)?
            } else {
                match rts(&g, &q) {
                    Err(Error::WidthExceeded) if g.n() <= 20 => min_separator_exact(&g, &q)?,
                    Err(Error::WidthExceeded) => approx(&g, &q)?,
                    other => other?,
                }
            }
        }
        other => return Err(Error::PreconditionViolated(format!("unknown mode `{other}`"))),
    };
    Ok(Solved {
        mode: r.mode.as_str(),
        size: r.size(),
        separator: r.separator.into_iter().collect(),
        guarantee: r.guarantee,
    })
}

pub fn fastest_json(graph: &str, source: usize, sink: usize, strict: bool) -> String {
    json((|| {
        let g: TemporalGraph = graph.parse()?;
        let found = fastest_travel_time(&g, source, sink, strict)?;
        Ok(match found {
            Some(f) => FastestPath {
                travel_time: Some(f.travel_time),
                hops: f
                    .path
                    .hops()
                    .iter()
                    .map(|h| [h.from as u32, h.to as u32, h.t])
                    .collect(),
            },
            None => FastestPath {
                travel_time: None,
                hops: Vec::new(),
            },
        })
    })())
}

/// Instance text, or a JSON error object if the parameters are invalid.
pub fn generate_text(class: &str, n: usize, tau: u32, p: f64, seed: u64) -> String {
    let made = class
        .parse::<GraphClass>()
        .and_then(|c| generate(c, GenParams { n, tau, p, seed }));
    match made {
        Ok(g) => g.to_string(),
        Err(e) => json::<()>(Err(e)),
    }
}

#[wasm_bindgen]
pub fn solve(graph: &str, source: usize, sink: usize, deadline: &str, strict: bool, mode: &str) -> String {
    solve_json(graph, source, sink, deadline, strict, mode)
}

#[wasm_bindgen]
pub fn fastest(graph: &str, source: usize, sink: usize, strict: bool) -> String {
    fastest_json(graph, source, sink, strict)
}

/// `seed` is a float on the JavaScript side; fractional parts are dropped.
#[wasm_bindgen]
pub fn generate_instance(class: &str, n: usize, tau: u32, p: f64, seed: f64) -> String {
    generate_text(class, n, tau, p, seed as u64)
}
