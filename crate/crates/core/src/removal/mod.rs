//! Colored triangle removal: triangle covers, the sparse-pair step and its
//! iteration, diamonds, and monochromatic corners in grid colorings.

mod cover;
mod grid;
mod step;

pub use cover::{
    diamond_find, is_diamond, triangle_census, Census, CoverTriangle, CoverViolation, Diamond, TriangleCover,
    TripartiteColoring, MAX_CENSUS_SIDE, NO_EDGE,
};
pub use grid::{corner_oracle, grid_cover, grid_pipeline, Corner, GridColoring, GridOutcome, MAX_PIPELINE_SIDE};
pub use step::{removal_iterate, sparse_pair_step, BaseCase, IterTrace, IterVerdict, Level, SparseStep};
