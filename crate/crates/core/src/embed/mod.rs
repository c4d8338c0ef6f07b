//! Embedding bounded-degree hypergraphs into dense down-closed hypergraphs
//! by resampling, dependent random choice, and the bipartite Ramsey
//! pipeline built from them.

mod drc;
mod hyper;
mod pipeline;
mod resample;

pub use drc::{count_bad_sets, drc_subset, DrcOutcome, DrcParams};
pub use hyper::{random_dense_dch, DownClosedHypergraph, TargetHypergraph, MAX_MISSING_WORK, MAX_TOP_SETS};
pub use pipeline::{
    bip_ramsey_pipeline, build_aux_pair, random_two_coloring, split_bipartite, verify_monochromatic, AuxPair,
    PipelineOutcome, PIPELINE_ATTEMPTS,
};
pub use resample::{lemma_regime, resample_embed, verify_embedding, BadEvent, EmbeddingResult, DEFAULT_ROUND_CAP};
