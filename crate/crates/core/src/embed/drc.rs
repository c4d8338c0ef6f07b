use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::bitset::VertexSet;
use crate::combin::{binomial, for_each_subset};
use crate::error::{guard, require, Error, Result};
use crate::graph::BipartiteGraph;
use crate::rng::RngStream;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct DrcParams {
    pub eps: f64,
    pub k: usize,
    pub b: f64,
    pub n: usize,
}

impl DrcParams {
    /// `eps^{-k} max(b n, 4 k)`.
    pub fn required_side(&self) -> f64 {
        self.eps.powi(-(self.k as i32)) * (self.b * self.n as f64).max(4.0 * self.k as f64)
    }

    /// `2^{-1/k} eps^k N`.
    pub fn size_bound(&self, side: usize) -> f64 {
        (-1.0 / self.k as f64).exp2() * self.eps.powi(self.k as i32) * side as f64
    }

    /// `2^{k+1} b^{-k}`.
    pub fn bad_fraction_bound(&self) -> f64 {
        (self.k as f64 + 1.0).exp2() * self.b.powi(-(self.k as i32))
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct DrcOutcome {
    /// Left vertices, sorted.
    pub u: Vec<usize>,
    /// `k`-subsets of `u` with fewer than `n` common neighbours.
    pub bad: u128,
    pub size_bound: f64,
    pub bad_bound: f64,
    pub attempts: usize,
}

/// `k`-subsets of `u` whose common right neighbourhood is smaller than `n`.
pub fn count_bad_sets(b: &BipartiteGraph, u: &[usize], k: usize, n: usize) -> Result<u128> {
    guard(binomial(u.len() as u64, k as u64) <= 20_000_000, || {
        format!("C({}, {k}) subsets too many to count", u.len())
    })?;
    let mut bad = 0u128;
    for_each_subset(u, k, |s| {
        let mut common = b.left_neighbors(s[0]).clone();
        for &x in &s[1..] {
            common.intersect_with(b.left_neighbors(x));
        }
        if common.len() < n {
            bad += 1;
        }
    });
    Ok(bad)
}

/// `U` = common neighbourhood of `k` uniformly random right vertices, drawn
/// until `|U|` reaches the size bound and the bad `k`-sets are fewer than
/// `bad_bound C(|U|, k)`; both clauses counted directly.
pub(crate) fn drc_draw(
    b: &BipartiteGraph,
    k: usize,
    n: usize,
    size_bound: f64,
    bad_bound: f64,
    rng: &mut RngStream,
    retry_cap: usize,
) -> Result<DrcOutcome> {
    require(b.right_len() > 0 && k >= 1, || "need a nonempty right side and k >= 1".into())?;
    let mut best = (0usize, u128::MAX);
    for attempt in 1..=retry_cap {
        let mut common = VertexSet::full(b.left_len());
        for _ in 0..k {
            let v = rng.gen_range(0..b.right_len());
            common.intersect_with(b.right_neighbors(v));
        }
        let u = common.to_vec();
        if (u.len() as f64) < size_bound {
            best.0 = best.0.max(u.len());
            continue;
        }
        let bad = count_bad_sets(b, &u, k, n)?;
        let total = binomial(u.len() as u64, k as u64);
        if bad == 0 || (bad as f64) < bad_bound * total as f64 {
            return Ok(DrcOutcome {
                u,
                bad,
                size_bound,
                bad_bound,
                attempts: attempt,
            });
        }
        best = (best.0.max(u.len()), best.1.min(bad));
    }
    Err(Error::RetryCap {
        cap: retry_cap,
        report: format!(
            "largest U had {} vertices (bound {size_bound:.2}); fewest bad sets {}",
            best.0,
            if best.1 == u128::MAX { "n/a".to_string() } else { best.1.to_string() }
        ),
    })
}

/// Dependent random choice on a bipartite graph with both parts of order N.
pub fn drc_subset(b: &BipartiteGraph, params: DrcParams, rng: &mut RngStream, retry_cap: usize) -> Result<DrcOutcome> {
    let side = b.left_len();
    require(side == b.right_len(), || format!("parts of order {side} and {} differ", b.right_len()))?;
    require(params.k >= 1 && params.eps > 0.0 && params.b > 0.0, || "need k >= 1, eps > 0, b > 0".into())?;
    let density: f64 = b.density();
    require(density >= params.eps, || format!("density {density:.4} below eps = {}", params.eps))?;
    let need = params.required_side();
    require(side as f64 >= need, || format!("N = {side} is below eps^-k max(bn, 4k) = {need:.1}"))?;
    drc_draw(
        b,
        params.k,
        params.n,
        params.size_bound(side),
        params.bad_fraction_bound(),
        rng,
        retry_cap,
    )
}
