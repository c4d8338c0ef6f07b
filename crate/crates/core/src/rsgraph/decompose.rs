use serde::Serialize;

use super::rs::{Edge, RsDecomposition};
use crate::bitset::VertexSet;
use crate::error::Result;
use crate::graph::Graph;

pub const DEFAULT_MATCHING_BUDGET: u64 = 20_000_000;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "outcome", rename_all = "snake_case")]
pub enum MatchingSearch {
    Found { matching: Vec<Edge>, nodes: u64 },
    NotFound { exhaustive: bool, nodes: u64 },
}

struct Bnb<'a> {
    edges: &'a [Edge],
    compat: Vec<VertexSet>,
    want: usize,
    chosen: Vec<usize>,
    nodes: u64,
    budget: u64,
    out_of_budget: bool,
}

impl Bnb<'_> {
    /// Vertices spanned by the candidates, halved: no more edges fit.
    fn bound(&self, cands: &VertexSet) -> usize {
        let mut seen = std::collections::HashSet::new();
        for e in cands.iter() {
            seen.insert(self.edges[e].0);
            seen.insert(self.edges[e].1);
        }
        cands.len().min(seen.len() / 2)
    }

    fn run(&mut self, cands: VertexSet) -> bool {
        if self.chosen.len() == self.want {
            return true;
        }
        if self.nodes >= self.budget {
            self.out_of_budget = true;
            return false;
        }
        self.nodes += 1;
        if self.chosen.len() + self.bound(&cands) < self.want {
            return false;
        }
        // branch on the most constrained candidate
        let Some(e) = cands.iter().min_by_key(|&e| (cands.intersection_len(&self.compat[e]), e))
        else {
            return false;
        };
        self.chosen.push(e);
        if self.run(cands.intersection(&self.compat[e])) {
            return true;
        }
        self.chosen.pop();
        if self.out_of_budget {
            return false;
        }
        let mut rest = cands;
        rest.remove(e);
        self.run(rest)
    }
}

/// Induced matching of `g` with `want` edges, all taken from `allowed`, by
/// branch and bound over the edges (take a candidate or drop it).
pub fn find_induced_matching(g: &Graph, allowed: &[Edge], want: usize, budget: u64) -> MatchingSearch {
    let m = allowed.len();
    // f is compatible with e when neither end of f is in N[u] ∪ N[v]
    let closed: Vec<VertexSet> = allowed
        .iter()
        .map(|&(u, v)| {
            let mut s = g.neighbors(u).clone();
            s.union_with(g.neighbors(v));
            s.insert(u);
            s.insert(v);
            s
        })
        .collect();
    let compat: Vec<VertexSet> = closed
        .iter()
        .map(|c| VertexSet::from_iter_with_capacity(m, (0..m).filter(|&f| !c.contains(allowed[f].0) && !c.contains(allowed[f].1))))
        .collect();
    let mut bnb = Bnb {
        edges: allowed,
        compat,
        want,
        chosen: Vec::new(),
        nodes: 0,
        budget,
        out_of_budget: false,
    };
    if bnb.run(VertexSet::full(m)) {
        MatchingSearch::Found {
            matching: bnb.chosen.iter().map(|&i| allowed[i]).collect(),
            nodes: bnb.nodes,
        }
    } else {
        MatchingSearch::NotFound {
            exhaustive: !bnb.out_of_budget,
            nodes: bnb.nodes,
        }
    }
}

/// Red edges; the rest of `G` is blue.
#[derive(Clone, Debug, Serialize)]
pub struct FalsifyingColoring {
    pub red: Vec<Edge>,
    pub blue: Vec<Edge>,
    pub red_max_degree: usize,
}

#[derive(Clone, Debug, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum Decomposition {
    /// `t` induced matchings of size `n`: an RS subgraph.
    Rs(RsDecomposition),
    /// Fewer than `t` matchings; the coloring falsifies the arrow.
    Falsified { coloring: FalsifyingColoring, extracted: usize },
    Unknown { extracted: Vec<Vec<Edge>>, reason: String },
}

/// Extracts edge-disjoint induced matchings of size `n` until `t` are found
/// or none is left. Without `t` of them, the extracted edges colored red and
/// the rest blue has red degree below `t` and no blue induced `M_n`.
pub fn greedy_decompose(g: &Graph, n: usize, t: usize, budget: u64) -> Result<Decomposition> {
    crate::error::require(n >= 1 && t >= 1, || "n and t must be >= 1".into())?;
    let mut remaining: Vec<Edge> = g.edges().to_vec();
    let mut extracted: Vec<Vec<Edge>> = Vec::new();
    while extracted.len() < t {
        match find_induced_matching(g, &remaining, n, budget) {
            MatchingSearch::Found { matching, .. } => {
                remaining.retain(|e| !matching.contains(e));
                extracted.push(matching);
            }
            MatchingSearch::NotFound { exhaustive: true, .. } => {
                let red: Vec<Edge> = extracted.iter().flatten().copied().collect();
                let coloring = FalsifyingColoring {
                    red_max_degree: max_degree(g.n(), &red),
                    red,
                    blue: remaining,
                };
                return Ok(Decomposition::Falsified {
                    coloring,
                    extracted: extracted.len(),
                });
            }
            MatchingSearch::NotFound { exhaustive: false, nodes } => {
                return Ok(Decomposition::Unknown {
                    extracted,
                    reason: format!("induced matching search stopped after {nodes} nodes"),
                })
            }
        }
    }
    let sub = Graph::from_edges(g.n(), extracted.iter().flatten().copied())?;
    Ok(Decomposition::Rs(RsDecomposition {
        graph: sub,
        matchings: extracted,
        spanning: true,
        left: None,
    }))
}

pub fn max_degree(n: usize, edges: &[Edge]) -> usize {
    let mut deg = vec![0usize; n];
    for &(u, v) in edges {
        deg[u] += 1;
        deg[v] += 1;
    }
    deg.into_iter().max().unwrap_or(0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generate::gnp;
    use crate::rng::RngStream;
    use crate::rsgraph::rs::{induced_violation, rs_from_behrend};

    fn brute_max_induced(g: &Graph) -> usize {
        let e = g.edges();
        (0u32..1 << e.len())
            .filter(|&mask| {
                let m: Vec<Edge> = (0..e.len()).filter(|&i| mask >> i & 1 == 1).map(|i| e[i]).collect();
                induced_violation(g, &m).is_none()
            })
            .map(|m| m.count_ones() as usize)
            .max()
            .unwrap_or(0)
    }

    #[test]
    fn search_matches_brute_force() {
        let mut rng = RngStream::new(5);
        for _ in 0..40 {
            let g = gnp(8, 0.3, &mut rng);
            if g.m() > 16 {
                continue;
            }
            let best = brute_max_induced(&g);
            for want in 1..=best + 1 {
                let found = matches!(find_induced_matching(&g, g.edges(), want, u64::MAX), MatchingSearch::Found { .. });
                assert_eq!(found, want <= best);
            }
        }
    }

    #[test]
    fn perfect_matching_and_k4() {
        let m3 = Graph::from_edges(6, [(0, 1), (2, 3), (4, 5)]).unwrap();
        match greedy_decompose(&m3, 3, 1, u64::MAX).unwrap() {
            Decomposition::Rs(d) => assert_eq!(d.matchings.len(), 1),
            other => panic!("{other:?}"),
        }
        match greedy_decompose(&m3, 3, 2, u64::MAX).unwrap() {
            Decomposition::Falsified { coloring, extracted } => {
                assert_eq!((extracted, coloring.blue.len(), coloring.red_max_degree), (1, 0, 1));
            }
            other => panic!("{other:?}"),
        }
        match greedy_decompose(&Graph::complete(4), 2, 1, u64::MAX).unwrap() {
            Decomposition::Falsified { coloring, .. } => {
                assert!(coloring.red.is_empty());
                assert_eq!(coloring.blue.len(), 6);
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn recovers_rs_matchings() {
        let c = rs_from_behrend(40, None).unwrap();
        let d = &c.decomposition;
        match greedy_decompose(&d.graph, d.n(), d.t(), DEFAULT_MATCHING_BUDGET).unwrap() {
            Decomposition::Rs(found) => assert!(crate::rsgraph::verify_rs(&found).is_ok()),
            other => panic!("{other:?}"),
        }
        // greedy may pick mixed matchings and stop short (10 of 11 at N = 43)
        let c = rs_from_behrend(43, None).unwrap();
        let d = &c.decomposition;
        match greedy_decompose(&d.graph, d.n(), d.t(), DEFAULT_MATCHING_BUDGET).unwrap() {
            Decomposition::Falsified { coloring, extracted } => {
                assert_eq!((extracted, d.t()), (10, 11));
                assert!(coloring.red_max_degree < d.t());
                assert!(crate::rsgraph::verify_falsifying(&d.graph, &coloring.red, d.t(), d.n()));
            }
            other => panic!("{other:?}"),
        }
    }
}
