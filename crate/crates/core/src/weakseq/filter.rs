use rand::seq::SliceRandom;
use serde::{Deserialize, Serialize};

use crate::error::{require, Error, Result};
use crate::graph::BipartiteGraph;
use crate::rng::RngStream;

const EPS: f64 = 1e-12;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "mode", content = "value", rename_all = "snake_case")]
pub enum FilterMode {
    /// Keep right vertices with more than `p |V_1| / 2` neighbours.
    Sparse(f64),
    /// Keep right vertices with more than `(1 - 2q) |V_1|` neighbours.
    Dense(f64),
}

#[derive(Clone, Debug, Serialize)]
pub struct FilterOutcome {
    /// Right vertices kept, sorted.
    pub kept: Vec<usize>,
    pub degree_threshold: f64,
    pub size_bound: f64,
}

/// Right-side degree filter; both output clauses are asserted.
pub fn degree_filter(b: &BipartiteGraph, mode: FilterMode) -> Result<FilterOutcome> {
    let (n1, n2) = (b.left_len() as f64, b.right_len() as f64);
    let density: f64 = b.density();
    let (threshold, size_bound) = match mode {
        FilterMode::Sparse(p) => {
            require(density + EPS >= p, || format!("density {density:.6} below p = {p}"))?;
            (p * n1 / 2.0, p * n2 / 2.0)
        }
        FilterMode::Dense(q) => {
            require(density + EPS >= 1.0 - q, || format!("density {density:.6} below 1 - q = {}", 1.0 - q))?;
            ((1.0 - 2.0 * q) * n1, n2 / 2.0)
        }
    };
    let kept: Vec<usize> = (0..b.right_len())
        .filter(|&v| b.right_neighbors(v).len() as f64 > threshold)
        .collect();
    if (kept.len() as f64) + EPS < size_bound {
        return Err(Error::Precondition(format!(
            "filter kept {} < {size_bound:.3} vertices",
            kept.len()
        )));
    }
    Ok(FilterOutcome {
        kept,
        degree_threshold: threshold,
        size_bound,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct CoverPartition {
    /// Parts of `r` left vertices.
    pub parts: Vec<Vec<usize>>,
    /// Left vertices left over when `r` does not divide `|V_1|`.
    pub leftover: Vec<usize>,
    /// Pairs `(A_i, b)` with no edge.
    pub uncovered: u64,
    pub pairs: u64,
    pub fraction: f64,
    pub bound: f64,
    pub attempts: usize,
}

fn uncovered_pairs(b: &BipartiteGraph, parts: &[Vec<usize>]) -> u64 {
    let mut count = 0u64;
    for part in parts {
        let mut reach = b.left_neighbors(part[0]).clone();
        for &a in &part[1..] {
            reach.union_with(b.left_neighbors(a));
        }
        count += (b.right_len() - reach.len()) as u64;
    }
    count
}

/// Uniform random partition of the left side into `r`-sets, redrawn until
/// the fraction of part/right-vertex pairs without an edge is at most
/// `(1 - p)^r`. Needs every right vertex to have at least `p |V_1|`
/// neighbours. When `r` does not divide `|V_1|` the remainder is left out.
pub fn cover_partition(
    b: &BipartiteGraph,
    r: usize,
    p: f64,
    rng: &mut RngStream,
    retry_cap: usize,
) -> Result<CoverPartition> {
    let n1 = b.left_len();
    require(r >= 1 && r <= n1, || format!("cannot split {n1} vertices into {r}-sets"))?;
    require((0.0..=1.0).contains(&p), || format!("p = {p} outside [0, 1]"))?;
    let min_deg = (0..b.right_len()).map(|v| b.right_neighbors(v).len()).min().unwrap_or(n1);
    require(min_deg as f64 + EPS >= p * n1 as f64, || {
        format!("minimum right degree {min_deg} below p |V_1| = {:.3}", p * n1 as f64)
    })?;
    let d = n1 / r;
    let pairs = (d * b.right_len()) as u64;
    let bound = (1.0 - p).powi(r as i32);
    let mut order: Vec<usize> = (0..n1).collect();
    let mut best = f64::INFINITY;
    for attempt in 1..=retry_cap {
        order.shuffle(rng);
        let parts: Vec<Vec<usize>> = order[..d * r]
            .chunks(r)
            .map(|c| {
                let mut c = c.to_vec();
                c.sort_unstable();
                c
            })
            .collect();
        let uncovered = uncovered_pairs(b, &parts);
        let fraction = if pairs == 0 { 0.0 } else { uncovered as f64 / pairs as f64 };
        if fraction <= bound + EPS {
            let mut leftover = order[d * r..].to_vec();
            leftover.sort_unstable();
            return Ok(CoverPartition {
                parts,
                leftover,
                uncovered,
                pairs,
                fraction,
                bound,
                attempts: attempt,
            });
        }
        best = best.min(fraction);
    }
    Err(Error::RetryCap {
        cap: retry_cap,
        report: format!("best uncovered fraction {best:.6} above bound {bound:.6}"),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn filter_examples() {
        let k = BipartiteGraph::complete(6, 8);
        assert_eq!(degree_filter(&k, FilterMode::Sparse(1.0)).unwrap().kept, (0..8).collect::<Vec<_>>());

        // right vertices 0..4 isolated, 4..8 complete
        let half = BipartiteGraph::from_fn(6, 8, |_, v| v >= 4);
        let out = degree_filter(&half, FilterMode::Sparse(0.5)).unwrap();
        assert_eq!(out.kept, vec![4, 5, 6, 7]);

        // every right vertex misses exactly one of four left vertices: 1 - q = 3/4
        let uniform = BipartiteGraph::from_fn(4, 8, |u, v| u != v % 4);
        let out = degree_filter(&uniform, FilterMode::Dense(0.25)).unwrap();
        assert_eq!(out.kept.len(), 8);
        assert!(degree_filter(&uniform, FilterMode::Dense(0.2)).is_err());
    }

    #[test]
    fn cover_examples() {
        let mut rng = RngStream::new(1);
        let k = BipartiteGraph::complete(12, 5);
        let c = cover_partition(&k, 3, 1.0, &mut rng, 10).unwrap();
        assert_eq!((c.parts.len(), c.uncovered), (4, 0));

        // r = 1: fraction is the non-adjacent fraction
        let g = BipartiteGraph::from_fn(4, 8, |u, v| u != v % 4);
        let c = cover_partition(&g, 1, 0.75, &mut rng, 10).unwrap();
        assert_eq!(c.uncovered, 8);
        assert!((c.fraction - 0.25).abs() < 1e-12);
    }

    #[test]
    fn random_half_density_r4() {
        // every right vertex has exactly 32 random neighbours
        let mut rng = RngStream::new(7);
        let edges: Vec<(usize, usize)> = (0..64)
            .flat_map(|v| {
                rand::seq::index::sample(&mut rng, 64, 32)
                    .into_iter()
                    .map(move |u| (u, v))
                    .collect::<Vec<_>>()
            })
            .collect();
        let b = BipartiteGraph::from_edges(64, 64, edges).unwrap();
        let c = cover_partition(&b, 4, 0.5, &mut rng, 1000).unwrap();
        assert_eq!(c.parts.len(), 16);
        assert_eq!(c.uncovered, uncovered_pairs(&b, &c.parts));
        assert!(c.fraction <= 1.0 / 16.0);
    }

    #[test]
    fn leftover_when_not_divisible() {
        let k = BipartiteGraph::complete(10, 3);
        let c = cover_partition(&k, 4, 1.0, &mut RngStream::new(0), 10).unwrap();
        assert_eq!((c.parts.len(), c.leftover.len()), (2, 2));
    }
}
