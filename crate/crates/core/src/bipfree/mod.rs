//! Subgraphs avoiding complete bipartite (and complete k-partite) patterns:
//! exact copy counters, Las Vegas extraction, tight instances and a small
//! exact oracle for the extremal number.

mod count;
mod extract;
mod kpartite;
mod tight;

pub use count::{
    count_kkrr, count_krr, kkrr_count_bound, krr_count_bound, list_kkrr, list_krr, BicliqueCopy, KPartiteCopy,
    COUNT_LIMIT,
};
pub use extract::{
    ceil_scaled_root, extract_free, extract_free_hyper, graph_target, hyper_target, q_of, Extraction,
    DEFAULT_RETRY_CAP,
};
pub use kpartite::{count_kpartite, kpartite_bound, kpartite_count_check, KPartiteCheck, KPartiteGraph};
pub use tight::{
    contains_biclique, exact_root, tight_instance, zarankiewicz_oracle, TightInstance, ZarankiewiczBound,
    MAX_ORACLE_LEFT, MAX_ORACLE_RIGHT,
};
