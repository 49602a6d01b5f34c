//! Minimum and approximate temporal `(s, z, t)`-separators.
//!
//! A temporal graph carries a time label on every edge. A set of vertices
//! separates `s` from `z` for a deadline `t` if, once removed, no temporal path
//! from `s` to `z` travels in at most `t` time steps.

pub mod error;
pub mod exact;
pub mod flatten;
pub mod flow;
pub mod generate;
pub mod graph;
pub mod paths;
pub mod reductions;
pub mod structured;

pub use error::{Error, Result};
pub use graph::{StaticGraph, TemporalEdge, TemporalGraph, VertexSet};
pub use paths::{
    enumerate_deadline_paths, exists_deadline_path, fastest_travel_time, travel_time, Deadline,
    Enumeration, Fastest, Hop, PathQuery, TemporalPath,
};
pub use exact::{is_separator, min_separator_exact, strict_special, Mode, SeparatorResult};
pub use flatten::{
    approx_separator_deadline, approx_separator_deadline_threads, approx_separator_tau, flatten,
    flatten_with, static_to_temporal_path, temporal_to_static_path, Flattening, WindowPlan,
};
pub use flow::{min_static_vertex_separator, StaticDigraph};
