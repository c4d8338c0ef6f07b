//! Random equitable bipartitions.

use rand::seq::SliceRandom;

use crate::error::{require, Error, Result};
use crate::graph::{BipartiteGraph, Graph};
use crate::rng::RngStream;

pub const DEFAULT_RETRY_CAP: usize = 1000;

/// A split `V = left ∪ right` with `|left| - |right| ∈ {0, 1}` and the cross
/// bipartite graph, relabeled so left vertex `i` is `left[i]` in the host.
#[derive(Clone, Debug)]
pub struct Bipartition {
    pub left: Vec<usize>,
    pub right: Vec<usize>,
    pub cross: BipartiteGraph,
    pub attempts: usize,
}

impl Bipartition {
    pub fn cross_density(&self) -> f64 {
        self.cross.density()
    }
}

/// Draws uniformly random equitable splits until the cross density is at
/// least the density of `g`. A uniformly random split has expected cross
/// density exactly `density(g)`, so some split always qualifies.
pub fn random_equitable_bipartition(
    g: &Graph,
    rng: &mut RngStream,
    retry_cap: usize,
) -> Result<Bipartition> {
    let n = g.n();
    require(n >= 2, || format!("cannot bipartition {n} vertices"))?;
    let pairs = n * (n - 1) / 2;
    let mut order: Vec<usize> = (0..n).collect();
    let mut best = 0.0f64;
    for attempt in 1..=retry_cap {
        order.shuffle(rng);
        let half = n.div_ceil(2);
        let mut left = order[..half].to_vec();
        let mut right = order[half..].to_vec();
        left.sort_unstable();
        right.sort_unstable();
        let cross = BipartiteGraph::from_fn(left.len(), right.len(), |i, j| {
            g.has_edge(left[i], right[j])
        });
        // e(L,R) / (|L||R|) >= m / C(n,2), compared in integers
        if cross.m() * pairs >= g.m() * left.len() * right.len() {
            return Ok(Bipartition {
                left,
                right,
                cross,
                attempts: attempt,
            });
        }
        best = best.max(cross.density());
    }
    Err(Error::RetryCap {
        cap: retry_cap,
        report: format!(
            "best cross density {best:.6} below host density {:.6}",
            g.density::<f64>()
        ),
    })
}
