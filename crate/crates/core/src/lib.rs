//! Constructions, verifiers and brute-force oracles for a collection of
//! extremal-combinatorics results.
//!
//! Every randomized construction takes an explicit [`RngStream`] and is
//! retried until its output meets the bound the construction promises in
//! expectation; every output is re-checked by an independent verifier.

pub mod bipfree;
pub mod bitset;
pub mod coloring;
pub mod embed;
pub mod combin;
pub mod error;
pub mod generate;
pub mod graph;
pub mod io;
pub mod partition;
pub mod preset;
pub mod removal;
pub mod rng;
pub mod rsgraph;
pub mod scalar;
pub mod setmap;
pub mod weakseq;

pub use coloring::EdgeColoring;
pub use error::{Error, Result};
pub use graph::{BipartiteGraph, Graph, KUniformHypergraph, TripartiteGraph};
pub use rng::RngStream;
pub use scalar::Scalar;

/// Exact scalar for threshold arithmetic.
pub type Exact = num_rational::BigRational;
/// Floating-point scalar used on hot paths and in reports.
pub type Real = f64;
