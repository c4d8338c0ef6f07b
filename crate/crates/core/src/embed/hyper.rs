use std::collections::{HashMap, HashSet};

use rand::seq::index;

use crate::combin::{binomial, for_each_subset, unrank_combination, Combinations, SetKey};
use crate::error::{guard, require, Error, Result};
use crate::graph::Graph;
use crate::rng::RngStream;

/// Largest number of `k`-sets a down-closed hypergraph may range over.
pub const MAX_TOP_SETS: u128 = 100_000_000;
/// Largest missing-set bookkeeping (missing sets times `2^k`).
pub const MAX_MISSING_WORK: u128 = 50_000_000;

/// Down-closed hypergraph given by its top level: an `l`-set is a member iff
/// some top `k`-set contains it. Stored through the missing top sets and, for
/// each lower level, how many missing `k`-sets contain each `l`-set.
#[derive(Clone, Debug)]
pub struct DownClosedHypergraph {
    n: usize,
    k: usize,
    missing: HashSet<SetKey>,
    /// `covered[l][S]` = number of missing top sets containing the `l`-set S
    covered: Vec<HashMap<SetKey, u64>>,
}

impl DownClosedHypergraph {
    pub fn from_missing(n: usize, k: usize, missing: impl IntoIterator<Item = Vec<usize>>) -> Result<Self> {
        require(k >= 1 && k <= SetKey::MAX_LEN, || format!("uniformity {k} outside 1..=8"))?;
        guard(n <= SetKey::MAX_VERTEX + 1, || format!("{n} vertices exceed the key range"))?;
        guard(binomial(n as u64, k as u64) <= MAX_TOP_SETS, || {
            format!("C({n}, {k}) exceeds {MAX_TOP_SETS}")
        })?;
        let mut set = HashSet::new();
        let mut covered = vec![HashMap::new(); k];
        for mut e in missing {
            e.sort_unstable();
            if e.len() != k || e.windows(2).any(|w| w[0] == w[1]) || e.iter().any(|&v| v >= n) {
                return Err(Error::InvalidGraph(format!("{e:?} is not a {k}-subset of 0..{n}")));
            }
            if !set.insert(SetKey::from_sorted(&e)) {
                continue;
            }
            guard((set.len() as u128) << k <= MAX_MISSING_WORK, || {
                "too many missing top sets to index".into()
            })?;
            for (l, level) in covered.iter_mut().enumerate().skip(1) {
                for_each_subset(&e, l, |s| *level.entry(SetKey::from_sorted(s)).or_insert(0) += 1);
            }
        }
        Ok(DownClosedHypergraph {
            n,
            k,
            missing: set,
            covered,
        })
    }

    /// Top level = every `k`-set passing `keep`.
    pub fn from_top_fn(n: usize, k: usize, mut keep: impl FnMut(&[usize]) -> bool) -> Result<Self> {
        guard(binomial(n as u64, k as u64) <= 10_000_000, || {
            format!("C({n}, {k}) too large to enumerate")
        })?;
        let missing: Vec<Vec<usize>> = Combinations::new(n, k).filter(|s| !keep(s)).collect();
        Self::from_missing(n, k, missing)
    }

    pub fn complete(n: usize, k: usize) -> Result<Self> {
        Self::from_missing(n, k, std::iter::empty())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn missing_top(&self) -> usize {
        self.missing.len()
    }

    pub fn top_count(&self) -> u128 {
        binomial(self.n as u64, self.k as u64) - self.missing.len() as u128
    }

    /// `|top| / C(N, k)`.
    pub fn top_density(&self) -> f64 {
        let total = binomial(self.n as u64, self.k as u64);
        if total == 0 {
            0.0
        } else {
            self.top_count() as f64 / total as f64
        }
    }

    /// Missing fraction at the top level.
    pub fn delta(&self) -> f64 {
        1.0 - self.top_density()
    }

    /// Membership of a set of distinct vertices (any order).
    pub fn contains(&self, set: &[usize]) -> bool {
        let l = set.len();
        if l > self.k || set.iter().any(|&v| v >= self.n) {
            return false;
        }
        if self.n < self.k {
            return false;
        }
        let key = SetKey::from_unsorted(set);
        if l == self.k {
            return !self.missing.contains(&key);
        }
        let supersets = binomial((self.n - l) as u64, (self.k - l) as u64);
        let hit = if l == 0 {
            self.missing.len() as u64
        } else {
            self.covered[l].get(&key).copied().unwrap_or(0)
        };
        (hit as u128) < supersets
    }
}

/// `N` vertices, all `k`-sets except `floor(delta C(N, k))` removed uniformly.
pub fn random_dense_dch(n: usize, k: usize, delta: f64, rng: &mut RngStream) -> Result<DownClosedHypergraph> {
    require((0.0..1.0).contains(&delta), || format!("delta = {delta} outside [0, 1)"))?;
    require(k >= 1 && k <= n, || format!("need 1 <= k <= N, got k={k}, N={n}"))?;
    let total = binomial(n as u64, k as u64);
    guard(total <= MAX_TOP_SETS, || format!("C({n}, {k}) = {total} exceeds {MAX_TOP_SETS}"))?;
    let removed = (delta * total as f64).floor() as usize;
    let picks = index::sample(rng, total as usize, removed);
    DownClosedHypergraph::from_missing(n, k, picks.into_iter().map(|r| unrank_combination(n, k, r as u128)))
}

/// Hypergraph with edges of size `1..=k` to be embedded.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TargetHypergraph {
    n: usize,
    edges: Vec<Vec<usize>>,
}

impl TargetHypergraph {
    /// Edges are deduplicated as sets.
    pub fn new(n: usize, edges: impl IntoIterator<Item = Vec<usize>>) -> Result<Self> {
        let mut seen = HashSet::new();
        let mut out = Vec::new();
        for mut e in edges {
            e.sort_unstable();
            e.dedup();
            if e.is_empty() || e.iter().any(|&v| v >= n) {
                return Err(Error::InvalidGraph(format!("bad target edge {e:?} on {n} vertices")));
            }
            if seen.insert(e.clone()) {
                out.push(e);
            }
        }
        out.sort();
        Ok(TargetHypergraph { n, edges: out })
    }

    /// Vertex set of `g`, one edge per distinct nonempty neighbourhood.
    pub fn neighborhoods(g: &Graph) -> Self {
        let edges = (0..g.n()).map(|v| g.neighbors(v).to_vec()).filter(|e| !e.is_empty());
        Self::new(g.n(), edges).expect("neighbourhoods are valid edges")
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> &[Vec<usize>] {
        &self.edges
    }

    /// Largest edge size.
    pub fn k(&self) -> usize {
        self.edges.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn max_degree(&self) -> usize {
        let mut deg = vec![0; self.n];
        for e in &self.edges {
            for &v in e {
                deg[v] += 1;
            }
        }
        deg.into_iter().max().unwrap_or(0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn complete_when_delta_zero() {
        let g = random_dense_dch(10, 3, 0.0, &mut RngStream::new(0)).unwrap();
        assert_eq!(g.top_count(), 120);
        for l in 0..=3 {
            assert!(Combinations::new(10, l).all(|s| g.contains(&s)));
        }
        assert!(!g.contains(&[0, 1, 2, 3]));
    }

    #[test]
    fn retained_count() {
        let g = random_dense_dch(20, 3, 0.01, &mut RngStream::new(5)).unwrap();
        assert_eq!(g.top_count(), 1129);
    }

    #[test]
    fn closure_semantics_and_monotonicity() {
        let mut rng = RngStream::new(2);
        for delta in [0.3, 0.7, 0.95] {
            let g = random_dense_dch(9, 3, delta, &mut rng).unwrap();
            let top: Vec<Vec<usize>> = Combinations::new(9, 3).filter(|s| g.contains(s)).collect();
            for l in 0..3 {
                for s in Combinations::new(9, l) {
                    let by_def = top.iter().any(|t| s.iter().all(|v| t.contains(v)));
                    assert_eq!(g.contains(&s), by_def, "{s:?}");
                    if g.contains(&s) {
                        for sub in 0..s.len() {
                            let mut smaller = s.clone();
                            smaller.remove(sub);
                            assert!(g.contains(&smaller));
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn lower_levels_miss_at_most_delta_fraction() {
        let mut rng = RngStream::new(8);
        for delta in [0.05, 0.2, 0.5] {
            let g = random_dense_dch(16, 3, delta, &mut rng).unwrap();
            let d = g.delta();
            for l in 1..=3 {
                let non = Combinations::new(16, l).filter(|s| !g.contains(s)).count();
                assert!(non as f64 <= d * binomial(16, l as u64) as f64 + 1e-9);
            }
        }
    }

    #[test]
    fn cube_neighbourhoods() {
        let q3 = crate::generate::hypercube(3).unwrap();
        let h = TargetHypergraph::neighborhoods(&q3);
        assert_eq!((h.n(), h.edges().len(), h.k(), h.max_degree()), (8, 8, 3, 3));
    }
}
