//! Weakly (bi-)complete r-sequences: degree filters, random cover
//! partitions and `K_{t,t}` extraction; minor assembly on top.

mod filter;
mod ktt;
mod minor;
mod pipeline;
mod seq;

pub use filter::{cover_partition, degree_filter, CoverPartition, FilterMode, FilterOutcome};
pub use ktt::{find_ktt, verify_ktt, KttSearch, DEFAULT_KTT_NODE_BUDGET};
pub use minor::{
    greedy_paths, minor_pipeline, minor_regime, paths_drc, verify_minor, FourPath, MinorModel, MinorOutcome,
    MinorStats, MinorViolation, PathsDrc, PathsDrcSummary,
};
pub use pipeline::{
    regime2_t, sequence_in_bipartite, weak_sequence_pipeline, BipartiteSequence, SeqParams, SequenceOutcome,
    SequenceStats, StageCheck,
};
pub use seq::{max_weakly_complete_order, verify_sequence, SeqKind, SeqViolation, WeakSequence};
