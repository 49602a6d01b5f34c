//! Exact polynomial solvers for structured footprints.

pub mod branch;
pub mod rts;
pub mod tree;

pub use branch::{
    boundary, branch_decomposition_w2, structure_violations, parse_branch_decomposition, top_node,
    BdNode, BranchDecomposition,
};
pub use rts::{rts, rts_with};
pub use tree::{compute_removal_lists, greedy_rts, is_treelike, tree_separator, Pair, RemovalLists};
