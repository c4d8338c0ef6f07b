use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::decompose::{find_induced_matching, max_degree, MatchingSearch, DEFAULT_MATCHING_BUDGET};
use super::rs::{verify_rs, Edge, RsDecomposition};
use crate::bitset::VertexSet;
use crate::error::{guard, require, Result};
use crate::graph::Graph;

pub const MAX_EXHAUSTIVE_EDGES: usize = 24;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ArrowMode {
    Exhaustive,
    Theorem,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum ArrowVerdict {
    Arrows { colorings_checked: u64 },
    /// From the majority-color argument on an RS decomposition.
    ArrowsByTheorem { c: f64, matching_size: usize, matchings: usize, vertices: usize },
    Falsified { red: Vec<Edge> },
    Unknown { reason: String },
}

#[derive(Clone, Debug, Serialize)]
pub struct ArrowInstance {
    pub t: usize,
    pub n: usize,
    pub mode: ArrowMode,
    pub verdict: ArrowVerdict,
}

/// A red star `K_{1,t}` whose leaves are pairwise non-adjacent in `g`.
pub fn red_induced_star(g: &Graph, red: &[Edge], t: usize) -> Option<(usize, Vec<usize>)> {
    let mut red_nbrs = vec![VertexSet::new(g.n()); g.n()];
    for &(u, v) in red {
        red_nbrs[u].insert(v);
        red_nbrs[v].insert(u);
    }
    fn independent(g: &Graph, cands: &VertexSet, want: usize, chosen: &mut Vec<usize>) -> bool {
        if chosen.len() == want {
            return true;
        }
        if chosen.len() + cands.len() < want {
            return false;
        }
        let Some(v) = cands.first() else { return false };
        let mut with = cands.clone();
        with.difference_with(g.neighbors(v));
        with.remove(v);
        chosen.push(v);
        if independent(g, &with, want, chosen) {
            return true;
        }
        chosen.pop();
        let mut without = cands.clone();
        without.remove(v);
        independent(g, &without, want, chosen)
    }
    (0..g.n()).find_map(|c| {
        let mut leaves = Vec::new();
        independent(g, &red_nbrs[c], t, &mut leaves).then_some((c, leaves))
    })
}

/// Neither a red induced `K_{1,t}` nor a blue induced `M_n`. `None` when
/// the matching search ran out of budget.
pub fn is_falsifying(g: &Graph, red: &[Edge], t: usize, n: usize, budget: u64) -> Option<bool> {
    if red_induced_star(g, red, t).is_some() {
        return Some(false);
    }
    let blue: Vec<Edge> = g.edges().iter().copied().filter(|e| !red.contains(e)).collect();
    match find_induced_matching(g, &blue, n, budget) {
        MatchingSearch::Found { .. } => Some(false),
        MatchingSearch::NotFound { exhaustive, .. } => exhaustive.then_some(true),
    }
}

/// Exhaustive mode scans all `2^|E|` colorings; theorem mode checks the
/// hypotheses of the majority-color argument on `rs` (bipartite, spanning,
/// matchings of size `c n` with `c >= 2`, and `t_rs c n >= n |V|`).
pub fn arrow_check(g: &Graph, t: usize, n: usize, mode: ArrowMode, rs: Option<&RsDecomposition>) -> Result<ArrowInstance> {
    require(t >= 1 && n >= 1, || "t and n must be >= 1".into())?;
    let verdict = match mode {
        ArrowMode::Exhaustive => {
            let m = g.m();
            guard(m <= MAX_EXHAUSTIVE_EDGES, || {
                format!("exhaustive arrow check envelope is |E| <= {MAX_EXHAUSTIVE_EDGES}, got {m}")
            })?;
            let edges = g.edges();
            let red_of = |mask: u64| -> Vec<Edge> { (0..m).filter(|&i| mask >> i & 1 == 1).map(|i| edges[i]).collect() };
            let found = (0..1u64 << m).into_par_iter().find_map_first(|mask| {
                let red = red_of(mask);
                match is_falsifying(g, &red, t, n, DEFAULT_MATCHING_BUDGET) {
                    Some(true) => Some(Ok(red)),
                    Some(false) => None,
                    None => Some(Err(mask)),
                }
            });
            match found {
                None => ArrowVerdict::Arrows {
                    colorings_checked: 1 << m,
                },
                Some(Ok(red)) => ArrowVerdict::Falsified { red },
                Some(Err(mask)) => ArrowVerdict::Unknown {
                    reason: format!("matching search budget exhausted at coloring {mask:#x}"),
                },
            }
        }
        ArrowMode::Theorem => theorem_verdict(g, t, n, rs)?,
    };
    Ok(ArrowInstance { t, n, mode, verdict })
}

fn theorem_verdict(g: &Graph, t: usize, n: usize, rs: Option<&RsDecomposition>) -> Result<ArrowVerdict> {
    let Some(d) = rs else {
        return Ok(ArrowVerdict::Unknown {
            reason: "theorem mode needs an RS decomposition".into(),
        });
    };
    require(d.graph == *g, || "decomposition is for a different graph".into())?;
    if let Err(v) = verify_rs(d) {
        return Ok(ArrowVerdict::Unknown {
            reason: format!("decomposition invalid: {v}"),
        });
    }
    if d.left.is_none() || !d.spanning {
        return Ok(ArrowVerdict::Unknown {
            reason: "decomposition must be bipartite and spanning".into(),
        });
    }
    let (size, count, verts) = (d.n(), d.t(), g.n());
    // a matching at least half blue gives a blue induced M_n; otherwise more
    // than count * size / 2 >= n |V| / 2 red edges force red degree >= n
    let n_max = (size / 2).min(count * size / verts);
    Ok(if t <= n && n <= n_max {
        ArrowVerdict::ArrowsByTheorem {
            c: size as f64 / n as f64,
            matching_size: size,
            matchings: count,
            vertices: verts,
        }
    } else {
        ArrowVerdict::Unknown {
            reason: format!("hypotheses need t <= n <= {n_max}"),
        }
    })
}

/// Independent re-check of a falsifying coloring.
pub fn verify_falsifying(g: &Graph, red: &[Edge], t: usize, n: usize) -> bool {
    red.iter().all(|&(u, v)| g.has_edge(u, v))
        && (max_degree(g.n(), red) < t || red_induced_star(g, red, t).is_none())
        && is_falsifying(g, red, t, n, u64::MAX) == Some(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combin::Combinations;
    use crate::rsgraph::rs::bipartite_double;

    fn arrows(g: &Graph, t: usize, n: usize) -> bool {
        match arrow_check(g, t, n, ArrowMode::Exhaustive, None).unwrap().verdict {
            ArrowVerdict::Arrows { .. } => true,
            ArrowVerdict::Falsified { red } => {
                assert!(verify_falsifying(g, &red, t, n));
                false
            }
            v => panic!("{v:?}"),
        }
    }

    #[test]
    fn small_arrows() {
        let star = Graph::from_edges(3, [(0, 1), (0, 2)]).unwrap();
        assert!(arrows(&star, 1, 1));
        assert!(arrows(&Graph::from_edges(2, [(0, 1)]).unwrap(), 1, 1));
        assert!(!arrows(&star, 2, 2));
        assert!(arrow_check(&Graph::complete(8), 1, 1, ArrowMode::Exhaustive, None).is_err());
    }

    #[test]
    fn antimonotone_on_small_graphs() {
        // every graph on 5 vertices with at most 5 edges
        let all: Vec<(usize, usize)> = Combinations::new(5, 2).map(|c| (c[0], c[1])).collect();
        for k in 1..=5 {
            for pick in Combinations::new(all.len(), k) {
                let g = Graph::from_edges(5, pick.iter().map(|&i| all[i])).unwrap();
                for t in 1..=2 {
                    for n in 1..=2 {
                        if arrows(&g, t, n) {
                            for (t2, n2) in [(t.saturating_sub(1), n), (t, n.saturating_sub(1))] {
                                if t2 >= 1 && n2 >= 1 {
                                    assert!(arrows(&g, t2, n2));
                                }
                            }
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn theorem_mode_on_double_of_triangle() {
        let k3 = Graph::complete(3);
        let d = RsDecomposition {
            graph: k3.clone(),
            matchings: k3.edges().iter().map(|&e| vec![e]).collect(),
            spanning: true,
            left: None,
        };
        let dd = bipartite_double(&d);
        let out = arrow_check(&dd.graph, 1, 1, ArrowMode::Theorem, Some(&dd)).unwrap();
        assert!(matches!(out.verdict, ArrowVerdict::ArrowsByTheorem { .. }));
        assert!(arrows(&dd.graph, 1, 1));
        let no = arrow_check(&dd.graph, 2, 2, ArrowMode::Theorem, Some(&dd)).unwrap();
        assert!(matches!(no.verdict, ArrowVerdict::Unknown { .. }));
    }
}
