use serde::Serialize;

use crate::combin::Combinations;
use crate::error::{guard, require, Result};
use crate::graph::BipartiteGraph;

pub const MAX_ORACLE_LEFT: usize = 5;
pub const MAX_ORACLE_RIGHT: usize = 20;

/// `K_{a, a^r}` with `m = a^{r+1}` edges: the extremal host for `K_{r,s}`.
#[derive(Clone, Debug)]
pub struct TightInstance {
    pub r: usize,
    pub s: usize,
    pub m: usize,
    pub graph: BipartiteGraph,
}

impl TightInstance {
    /// `s m^{r/(r+1)} = s |V|`.
    pub fn upper_bound(&self) -> usize {
        self.s * self.graph.right_len()
    }
}

/// Exact integer `root`-th root of `m`, if there is one.
pub fn exact_root(m: usize, root: u32) -> Option<usize> {
    let guess = (m as f64).powf(1.0 / root as f64).round() as usize;
    (guess.saturating_sub(1)..=guess + 1).find(|&a| (a as u128).checked_pow(root) == Some(m as u128))
}

pub fn tight_instance(r: usize, s: usize, m: usize) -> Result<TightInstance> {
    require(2 <= r && r <= s, || format!("need 2 <= r <= s, got r={r}, s={s}"))?;
    let a = exact_root(m, r as u32 + 1)
        .ok_or_else(|| crate::Error::Precondition(format!("m = {m} is not a perfect {}-th power", r + 1)))?;
    let right = a.pow(r as u32);
    guard(a * right <= 10_000_000, || format!("instance with {m} edges is too large"))?;
    Ok(TightInstance {
        r,
        s,
        m,
        graph: BipartiteGraph::complete(a, right),
    })
}

/// Maximum number of edges in a subgraph without `K_{r,s}` (either
/// orientation). `lower == upper` iff the search finished.
#[derive(Clone, Debug, Serialize)]
pub struct ZarankiewiczBound {
    pub lower: usize,
    pub upper: usize,
    #[serde(skip)]
    pub witness: BipartiteGraph,
    pub nodes: u64,
}

impl ZarankiewiczBound {
    pub fn is_exact(&self) -> bool {
        self.lower == self.upper
    }
}

struct Oracle {
    /// Right vertices ordered so equal host neighbourhoods are adjacent.
    order: Vec<usize>,
    host: Vec<u32>,
    /// Candidate masks per right vertex, by decreasing popcount.
    choices: Vec<Vec<u32>>,
    /// (left subset, exclusive cap on right vertices containing it)
    rules: Vec<(u32, u32)>,
    counts: Vec<u32>,
    assign: Vec<u32>,
    best_val: usize,
    best: Vec<u32>,
    nodes: u64,
    budget: u64,
    open_upper: usize,
}

impl Oracle {
    fn fits(&self, mask: u32) -> bool {
        self.rules
            .iter()
            .zip(&self.counts)
            .all(|(&(sub, cap), &c)| sub & mask != sub || c + 1 < cap)
    }

    fn apply(&mut self, mask: u32, delta: i32) {
        for (i, &(sub, _)) in self.rules.iter().enumerate() {
            if sub & mask == sub {
                self.counts[i] = (self.counts[i] as i32 + delta) as u32;
            }
        }
    }

    /// Sum over the remaining vertices of the best gain still feasible.
    fn optimistic(&self, from: usize) -> usize {
        let mut total = 0;
        let mut prev: Option<(u32, usize)> = None;
        for &v in &self.order[from..] {
            let gain = match prev {
                Some((h, g)) if h == self.host[v] => g,
                _ => {
                    let g = self.choices[v]
                        .iter()
                        .find(|&&m| self.fits(m))
                        .map_or(0, |m| m.count_ones() as usize);
                    prev = Some((self.host[v], g));
                    g
                }
            };
            total += gain;
        }
        total
    }

    fn run(&mut self, depth: usize, value: usize, min_choice: usize) {
        let bound = value + self.optimistic(depth);
        if bound <= self.best_val && !(self.best_val == 0 && depth == 0) {
            return;
        }
        if self.nodes >= self.budget {
            self.open_upper = self.open_upper.max(bound);
            return;
        }
        self.nodes += 1;
        if depth == self.order.len() {
            if value > self.best_val || self.best.is_empty() {
                self.best_val = value;
                self.best = self.assign.clone();
            }
            return;
        }
        let v = self.order[depth];
        let start = if depth > 0 && self.host[self.order[depth - 1]] == self.host[v] {
            min_choice
        } else {
            0
        };
        for ci in start..self.choices[v].len() {
            let mask = self.choices[v][ci];
            if !self.fits(mask) {
                continue;
            }
            self.apply(mask, 1);
            self.assign[v] = mask;
            self.run(depth + 1, value + mask.count_ones() as usize, ci);
            self.apply(mask, -1);
            self.assign[v] = 0;
        }
    }
}

/// Branch and bound over the neighbourhood each right vertex keeps. Caps on
/// every `r`-subset (and `s`-subset) of the left side enforce freeness; equal
/// right vertices are assigned in non-increasing order to break symmetry.
pub fn zarankiewicz_oracle(host: &BipartiteGraph, r: usize, s: usize, budget: u64) -> Result<ZarankiewiczBound> {
    let (nl, nr) = (host.left_len(), host.right_len());
    require(r >= 1 && s >= 1, || "r and s must be >= 1".into())?;
    guard(nl <= MAX_ORACLE_LEFT && nr <= MAX_ORACLE_RIGHT, || {
        format!("oracle envelope is |U| <= {MAX_ORACLE_LEFT}, |V| <= {MAX_ORACLE_RIGHT}; got {nl}, {nr}")
    })?;
    let mut rules = Vec::new();
    let mut push_rules = |size: usize, cap: usize| {
        for c in Combinations::new(nl, size) {
            let mask = c.iter().fold(0u32, |m, &u| m | 1 << u);
            rules.push((mask, cap as u32));
        }
    };
    push_rules(r, s);
    if r != s {
        push_rules(s, r);
    }
    let host_masks: Vec<u32> = (0..nr)
        .map(|v| host.right_neighbors(v).iter().fold(0u32, |m, u| m | 1 << u))
        .collect();
    let choices: Vec<Vec<u32>> = host_masks
        .iter()
        .map(|&h| {
            let mut subs: Vec<u32> = (0..1u32 << nl).filter(|&m| m & h == m).collect();
            subs.sort_by_key(|&m| (std::cmp::Reverse(m.count_ones()), m));
            subs
        })
        .collect();
    let mut order: Vec<usize> = (0..nr).collect();
    order.sort_by_key(|&v| (std::cmp::Reverse(host_masks[v].count_ones()), host_masks[v], v));
    let mut o = Oracle {
        order,
        host: host_masks,
        choices,
        counts: vec![0; rules.len()],
        rules,
        assign: vec![0; nr],
        best_val: 0,
        best: Vec::new(),
        nodes: 0,
        budget,
        open_upper: 0,
    };
    o.run(0, 0, 0);
    if o.best.is_empty() {
        o.best = vec![0; nr];
    }
    let witness = BipartiteGraph::from_fn(nl, nr, |u, v| o.best[v] >> u & 1 == 1);
    Ok(ZarankiewiczBound {
        lower: o.best_val,
        upper: o.best_val.max(o.open_upper),
        witness,
        nodes: o.nodes,
    })
}

/// Whether `b` contains `K_{r,s}` with the `r` side on the left.
pub fn contains_biclique(b: &BipartiteGraph, r: usize, s: usize) -> bool {
    Combinations::new(b.left_len(), r).any(|a| {
        let mut common = crate::bitset::VertexSet::full(b.right_len());
        for &u in &a {
            common.intersect_with(b.left_neighbors(u));
        }
        common.len() >= s
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::RngStream;
    use rand::seq::SliceRandom;

    /// Independent check for r = s = 2: every left pair may be covered by at
    /// most one right vertex; dynamic programming over covered pair sets.
    fn c4_free_dp(host: &BipartiteGraph) -> usize {
        let nl = host.left_len();
        let pairs: Vec<(usize, usize)> = (0..nl).flat_map(|a| (a + 1..nl).map(move |b| (a, b))).collect();
        let pair_mask = |m: u32| -> u32 {
            pairs
                .iter()
                .enumerate()
                .filter(|(_, &(a, b))| m >> a & 1 == 1 && m >> b & 1 == 1)
                .fold(0, |acc, (i, _)| acc | 1 << i)
        };
        let states = 1usize << pairs.len();
        let mut dp = vec![None::<usize>; states];
        dp[0] = Some(0);
        for v in 0..host.right_len() {
            let h = host.right_neighbors(v).iter().fold(0u32, |m, u| m | 1 << u);
            let mut next = vec![None::<usize>; states];
            for (covered, val) in dp.iter().enumerate() {
                let Some(val) = *val else { continue };
                for m in (0..1u32 << nl).filter(|&m| m & h == m) {
                    let pm = pair_mask(m) as usize;
                    if pm & covered == 0 {
                        let slot = &mut next[covered | pm];
                        let cand = val + m.count_ones() as usize;
                        if slot.map_or(true, |x| x < cand) {
                            *slot = Some(cand);
                        }
                    }
                }
            }
            dp = next;
        }
        dp.into_iter().flatten().max().unwrap()
    }

    #[test]
    fn instance_shape() {
        let t = tight_instance(2, 2, 64).unwrap();
        assert_eq!((t.graph.left_len(), t.graph.right_len()), (4, 16));
        assert_eq!(t.graph.m(), 64);
        assert_eq!(t.upper_bound(), 32);
        assert!(tight_instance(2, 2, 63).is_err());
        assert!(tight_instance(3, 2, 16).is_err());
    }

    #[test]
    fn k4_16_matches_dp() {
        let t = tight_instance(2, 2, 64).unwrap();
        let z = zarankiewicz_oracle(&t.graph, 2, 2, u64::MAX).unwrap();
        assert!(z.is_exact());
        assert_eq!(z.lower, c4_free_dp(&t.graph));
        assert_eq!(z.lower, 22);
        assert!(!contains_biclique(&z.witness, 2, 2));
        assert_eq!(z.witness.m(), 22);
    }

    #[test]
    fn star_is_free() {
        let star = BipartiteGraph::complete(1, 7);
        let z = zarankiewicz_oracle(&star, 2, 2, u64::MAX).unwrap();
        assert_eq!(z.lower, 7);
    }

    #[test]
    fn random_hosts_match_dp_and_relabeling() {
        let mut rng = RngStream::new(21);
        for _ in 0..10 {
            let host = crate::generate::random_bipartite(4, 9, 0.7, &mut rng);
            let z = zarankiewicz_oracle(&host, 2, 2, u64::MAX).unwrap();
            assert_eq!(z.lower, c4_free_dp(&host));
            let mut pl: Vec<usize> = (0..4).collect();
            let mut pr: Vec<usize> = (0..9).collect();
            pl.shuffle(&mut rng);
            pr.shuffle(&mut rng);
            let permuted = host.induced(&pl, &pr);
            assert_eq!(zarankiewicz_oracle(&permuted, 2, 2, u64::MAX).unwrap().lower, z.lower);
        }
    }

    #[test]
    fn asymmetric_pattern_forbids_both_orientations() {
        let host = BipartiteGraph::complete(3, 6);
        let z = zarankiewicz_oracle(&host, 2, 3, u64::MAX).unwrap();
        assert!(!contains_biclique(&z.witness, 2, 3));
        assert!(!contains_biclique(&z.witness.transposed(), 2, 3));
        assert!(z.lower <= 3 * 6);
    }
}
