//! 3-AP-free sets, Ruzsa-Szemerédi graphs, bipartite doubling, greedy
//! induced-matching decomposition and induced arrowing checks.

mod arrow;
mod behrend;
mod decompose;
mod rs;

pub use arrow::{
    arrow_check, is_falsifying, red_induced_star, verify_falsifying, ArrowInstance, ArrowMode, ArrowVerdict,
    MAX_EXHAUSTIVE_EDGES,
};
pub use behrend::{
    behrend_set, check_ap_free, find_three_ap, greedy_complete, max_ap_free, ApFreeSet, EXACT_CHECK_N, MAX_BEHREND_N,
    MAX_ORACLE_N,
};
pub use decompose::{
    find_induced_matching, greedy_decompose, max_degree, Decomposition, FalsifyingColoring, MatchingSearch,
    DEFAULT_MATCHING_BUDGET,
};
pub use rs::{
    bipartite_double, covered_edges, induced_violation, rs_from_ap_free, rs_from_behrend, split_chunks, verify_rs, Edge,
    RsConstruction, RsDecomposition, RsViolation,
};
