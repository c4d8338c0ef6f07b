use serde::Serialize;

use crate::bitset::VertexSet;
use crate::error::{guard, require, Result};
use crate::graph::BipartiteGraph;

pub const DEFAULT_KTT_NODE_BUDGET: u64 = 50_000_000;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "outcome", rename_all = "snake_case")]
pub enum KttSearch {
    Found { left: Vec<usize>, right: Vec<usize>, nodes: u64 },
    /// `exhaustive` marks a certified negative.
    NotFound { exhaustive: bool, nodes: u64 },
}

impl KttSearch {
    pub fn witness(&self) -> Option<(&[usize], &[usize])> {
        match self {
            KttSearch::Found { left, right, .. } => Some((left, right)),
            KttSearch::NotFound { .. } => None,
        }
    }
}

struct Ktt<'a> {
    b: &'a BipartiteGraph,
    t: usize,
    order: Vec<usize>,
    chosen: Vec<usize>,
    nodes: u64,
    budget: u64,
    out_of_budget: bool,
}

impl Ktt<'_> {
    fn run(&mut self, from: usize, common: &VertexSet) -> Option<Vec<usize>> {
        if self.chosen.len() == self.t {
            return Some(common.iter().take(self.t).collect());
        }
        if self.nodes >= self.budget {
            self.out_of_budget = true;
            return None;
        }
        self.nodes += 1;
        let need = self.t - self.chosen.len();
        for i in from..self.order.len() {
            if self.order.len() - i < need {
                break;
            }
            let u = self.order[i];
            let next = common.intersection(self.b.left_neighbors(u));
            if next.len() < self.t {
                continue;
            }
            self.chosen.push(u);
            if let Some(right) = self.run(i + 1, &next) {
                return Some(right);
            }
            self.chosen.pop();
            if self.out_of_budget {
                return None;
            }
        }
        None
    }
}

/// `K_{t,t}` by backtracking over left `t`-sets in decreasing degree order,
/// pruning on the size of the common neighbourhood. Exhaustive unless the
/// node budget runs out.
pub fn find_ktt(b: &BipartiteGraph, t: usize, max_t: usize, node_budget: u64) -> Result<KttSearch> {
    require(t >= 1, || "t must be >= 1".into())?;
    guard(t <= max_t, || format!("K_{{t,t}} search envelope is t <= {max_t}, got {t}"))?;
    let mut order: Vec<usize> = (0..b.left_len()).filter(|&u| b.left_neighbors(u).len() >= t).collect();
    order.sort_by_key(|&u| (std::cmp::Reverse(b.left_neighbors(u).len()), u));
    let mut search = Ktt {
        b,
        t,
        order,
        chosen: Vec::new(),
        nodes: 0,
        budget: node_budget,
        out_of_budget: false,
    };
    let all = VertexSet::full(b.right_len());
    Ok(match search.run(0, &all) {
        Some(right) => {
            let mut left = search.chosen.clone();
            left.sort_unstable();
            KttSearch::Found {
                left,
                right,
                nodes: search.nodes,
            }
        }
        None => KttSearch::NotFound {
            exhaustive: !search.out_of_budget,
            nodes: search.nodes,
        },
    })
}

pub fn verify_ktt(b: &BipartiteGraph, left: &[usize], right: &[usize]) -> bool {
    let distinct = |v: &[usize]| {
        let mut s = v.to_vec();
        s.sort_unstable();
        s.windows(2).all(|w| w[0] != w[1])
    };
    left.len() == right.len()
        && distinct(left)
        && distinct(right)
        && left.iter().all(|&u| u < b.left_len())
        && right.iter().all(|&v| v < b.right_len() && left.iter().all(|&u| b.has_edge(u, v)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combin::Combinations;
    use crate::generate::random_bipartite;
    use crate::rng::RngStream;

    fn brute(b: &BipartiteGraph, t: usize) -> bool {
        Combinations::new(b.left_len(), t)
            .any(|l| Combinations::new(b.right_len(), t).any(|r| verify_ktt(b, &l, &r)))
    }

    #[test]
    fn complete_and_c6() {
        let k = BipartiteGraph::complete(5, 5);
        let s = find_ktt(&k, 3, 12, u64::MAX).unwrap();
        let (l, r) = s.witness().unwrap();
        assert!(verify_ktt(&k, l, r));
        // C_6 as 3 + 3: left i adjacent to right i and i + 1
        let c6 = BipartiteGraph::from_fn(3, 3, |u, v| v == u || v == (u + 1) % 3);
        assert!(matches!(
            find_ktt(&c6, 2, 12, u64::MAX).unwrap(),
            KttSearch::NotFound { exhaustive: true, .. }
        ));
        assert!(find_ktt(&k, 13, 12, u64::MAX).is_err());
    }

    #[test]
    fn agrees_with_double_subset_scan() {
        let mut rng = RngStream::new(11);
        for _ in 0..300 {
            let (n1, n2) = (1 + rand::Rng::gen_range(&mut rng, 0..6), 1 + rand::Rng::gen_range(&mut rng, 0..6));
            let p = rand::Rng::gen_range(&mut rng, 0.2..0.95);
            let b = random_bipartite(n1, n2, p, &mut rng);
            for t in 1..=n1.min(n2) {
                let s = find_ktt(&b, t, 12, u64::MAX).unwrap();
                assert_eq!(s.witness().is_some(), brute(&b, t));
                if let Some((l, r)) = s.witness() {
                    assert!(verify_ktt(&b, l, r));
                }
            }
        }
    }

    #[test]
    fn dense_random_host() {
        let mut rng = RngStream::new(4);
        let b = random_bipartite(60, 60, 0.9, &mut rng);
        let s = find_ktt(&b, 3, 12, DEFAULT_KTT_NODE_BUDGET).unwrap();
        let (l, r) = s.witness().unwrap();
        assert!(verify_ktt(&b, l, r));
    }
}
