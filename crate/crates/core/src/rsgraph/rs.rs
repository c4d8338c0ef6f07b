use std::collections::HashSet;
use std::fmt;

use serde::Serialize;

use super::behrend::{behrend_set, find_three_ap};
use crate::bitset::VertexSet;
use crate::error::{require, Result};
use crate::graph::Graph;

pub type Edge = (usize, usize);

fn canon((u, v): Edge) -> Edge {
    (u.min(v), u.max(v))
}

/// `t` pairwise edge-disjoint induced matchings of a graph.
#[derive(Clone, Debug, Serialize)]
pub struct RsDecomposition {
    #[serde(skip)]
    pub graph: Graph,
    pub matchings: Vec<Vec<Edge>>,
    /// The matchings cover every edge.
    pub spanning: bool,
    /// Vertices `0..left` form one side of a bipartition, when known.
    pub left: Option<usize>,
}

impl RsDecomposition {
    pub fn n(&self) -> usize {
        self.matchings.first().map_or(0, Vec::len)
    }

    pub fn t(&self) -> usize {
        self.matchings.len()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum RsViolation {
    UnequalSizes { index: usize, len: usize },
    NotAnEdge { index: usize, edge: Edge },
    SharedVertex { index: usize, vertex: usize },
    SharedEdge { first: usize, second: usize, edge: Edge },
    NotInduced { index: usize, edge: Edge },
    NotSpanning { covered: usize, edges: usize },
    NotBipartite { edge: Edge },
}

impl fmt::Display for RsViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RsViolation::UnequalSizes { index, len } => write!(f, "matching {index} has {len} edges"),
            RsViolation::NotAnEdge { index, edge } => write!(f, "matching {index}: {edge:?} is not an edge"),
            RsViolation::SharedVertex { index, vertex } => write!(f, "matching {index} uses vertex {vertex} twice"),
            RsViolation::SharedEdge { first, second, edge } => {
                write!(f, "matchings {first} and {second} share {edge:?}")
            }
            RsViolation::NotInduced { index, edge } => write!(f, "matching {index} not induced: {edge:?}"),
            RsViolation::NotSpanning { covered, edges } => write!(f, "matchings cover {covered} of {edges} edges"),
            RsViolation::NotBipartite { edge } => write!(f, "edge {edge:?} inside one side"),
        }
    }
}

/// First edge of `g` joining two distinct edges of `m`, or a vertex `m`
/// uses twice.
pub fn induced_violation(g: &Graph, m: &[Edge]) -> Option<std::result::Result<Edge, usize>> {
    let mut verts = VertexSet::new(g.n());
    for &(u, v) in m {
        for w in [u, v] {
            if !verts.insert(w) {
                return Some(Err(w));
            }
        }
    }
    for &(u, v) in m {
        for (a, b) in [(u, v), (v, u)] {
            // the only matched neighbour of a may be its partner
            if let Some(w) = g.neighbors(a).intersection(&verts).iter().find(|&w| w != b) {
                return Some(Ok(canon((a, w))));
            }
        }
    }
    None
}

pub fn verify_rs(d: &RsDecomposition) -> std::result::Result<(), RsViolation> {
    let g = &d.graph;
    let n = d.n();
    let mut seen: std::collections::HashMap<Edge, usize> = std::collections::HashMap::new();
    for (i, m) in d.matchings.iter().enumerate() {
        if m.len() != n {
            return Err(RsViolation::UnequalSizes { index: i, len: m.len() });
        }
        for &e in m {
            if !g.has_edge(e.0, e.1) {
                return Err(RsViolation::NotAnEdge { index: i, edge: e });
            }
            if let Some(&j) = seen.get(&canon(e)) {
                return Err(RsViolation::SharedEdge {
                    first: j,
                    second: i,
                    edge: canon(e),
                });
            }
            seen.insert(canon(e), i);
        }
        match induced_violation(g, m) {
            Some(Err(vertex)) => return Err(RsViolation::SharedVertex { index: i, vertex }),
            Some(Ok(edge)) => return Err(RsViolation::NotInduced { index: i, edge }),
            None => {}
        }
    }
    if d.spanning && seen.len() != g.m() {
        return Err(RsViolation::NotSpanning {
            covered: seen.len(),
            edges: g.m(),
        });
    }
    if let Some(l) = d.left {
        if let Some(&e) = g.edges().iter().find(|&&(u, v)| (u < l) == (v < l)) {
            return Err(RsViolation::NotBipartite { edge: e });
        }
    }
    Ok(())
}

/// Matchings indexed by a middle value `y in 0..k`: edge
/// `(y + M - b, y + M + b)` for each `b` in the 3-AP-free set `B ⊆ 1..=M`.
/// Left vertices `0..k+M-1`, right vertex `z` is `k + M - 1 + (z - M - 1)`.
/// A cross edge `(y - b, y + b')` would give `b + b' = 2b''`.
pub fn rs_from_ap_free(b: &[usize], k: usize) -> Result<RsDecomposition> {
    require(!b.is_empty() && k >= 1, || "need a nonempty set and k >= 1".into())?;
    require(b.iter().all(|&x| x >= 1), || "set must lie in 1..".into())?;
    require(find_three_ap(b).is_none(), || "set contains a 3-AP".into())?;
    let m = *b.iter().max().unwrap();
    let side = k + m - 1;
    let matchings: Vec<Vec<Edge>> = (0..k)
        .map(|y| b.iter().map(|&x| (y + m - x, side + (y + x - 1))).collect())
        .collect();
    let graph = Graph::from_edges(2 * side, matchings.iter().flatten().copied())?;
    let d = RsDecomposition {
        graph,
        matchings,
        spanning: true,
        left: Some(side),
    };
    verify_rs(&d).unwrap_or_else(|v| panic!("construction produced an invalid decomposition: {v}"));
    Ok(d)
}

#[derive(Clone, Debug, Serialize)]
pub struct RsConstruction {
    pub decomposition: RsDecomposition,
    pub big_n: usize,
    /// `K = M = floor((N + 2) / 4)`
    pub m: usize,
    pub set_size: usize,
    pub chunk: Option<usize>,
    /// Edges dropped when the chunk does not divide the matching size.
    pub dropped: usize,
}

/// RS graph on at most `big_n` vertices with about `big_n / 4` induced
/// matchings of size `|behrend_set(big_n / 4)|`, optionally split into
/// induced sub-matchings of size `chunk`.
pub fn rs_from_behrend(big_n: usize, chunk: Option<usize>) -> Result<RsConstruction> {
    require(big_n >= 15, || format!("N = {big_n} below 15"))?;
    let m = (big_n + 2) / 4;
    let set = behrend_set(m)?;
    let mut d = rs_from_ap_free(&set.elements, m)?;
    let mut dropped = 0;
    if let Some(c) = chunk {
        let before = d.matchings.len() * d.n();
        d = split_chunks(&d, c)?;
        dropped = before - d.matchings.len() * c;
    }
    debug_assert!(d.graph.n() <= big_n);
    Ok(RsConstruction {
        decomposition: d,
        big_n,
        m,
        set_size: set.elements.len(),
        chunk,
        dropped,
    })
}

/// Cuts every matching into consecutive pieces of `chunk` edges; a short
/// tail is dropped (and the result is then not spanning).
pub fn split_chunks(d: &RsDecomposition, chunk: usize) -> Result<RsDecomposition> {
    require(chunk >= 1 && chunk <= d.n(), || format!("chunk {chunk} outside 1..={}", d.n()))?;
    let matchings: Vec<Vec<Edge>> = d
        .matchings
        .iter()
        .flat_map(|m| m.chunks_exact(chunk).map(<[Edge]>::to_vec))
        .collect();
    let out = RsDecomposition {
        graph: d.graph.clone(),
        matchings,
        spanning: d.spanning && d.n() % chunk == 0,
        left: d.left,
    };
    verify_rs(&out).unwrap_or_else(|v| panic!("splitting broke the decomposition: {v}"));
    Ok(out)
}

/// Two copies of `V`; `(u, 0)(v, 1)` is an edge iff `uv` is. Every matching
/// doubles in size.
pub fn bipartite_double(d: &RsDecomposition) -> RsDecomposition {
    let n = d.graph.n();
    let edges = d.graph.edges().iter().flat_map(|&(u, v)| [(u, n + v), (v, n + u)]);
    let graph = Graph::from_edges(2 * n, edges).expect("double of a simple graph");
    let matchings = d
        .matchings
        .iter()
        .map(|m| m.iter().flat_map(|&(u, v)| [(u, n + v), (v, n + u)]).collect())
        .collect();
    RsDecomposition {
        graph,
        matchings,
        spanning: d.spanning,
        left: Some(n),
    }
}

/// Edges of the union of the matchings.
pub fn covered_edges(d: &RsDecomposition) -> HashSet<Edge> {
    d.matchings.iter().flatten().map(|&e| canon(e)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::RngStream;
    use rand::Rng;

    #[test]
    fn single_difference() {
        let d = rs_from_ap_free(&[1], 3).unwrap();
        assert_eq!((d.t(), d.n(), d.graph.n()), (3, 1, 6));
        assert!(verify_rs(&d).is_ok());
    }

    #[test]
    fn difference_graph_matchings_are_not_induced() {
        // the naive M_b = {(x, x + b)} with B = {1, 2} fails: (1,3) joins (1,2) and (2,3)
        let g = Graph::from_edges(7, [(1, 2), (2, 3), (3, 4), (1, 3), (2, 4)]).unwrap();
        assert_eq!(induced_violation(&g, &[(1, 2), (3, 4)]), Some(Ok((1, 3))));
        let d = rs_from_ap_free(&[1, 2], 4).unwrap();
        assert!(verify_rs(&d).is_ok());
        assert!(rs_from_ap_free(&[1, 2, 3], 4).is_err());
    }

    #[test]
    fn chunk_splitting() {
        let g = Graph::from_edges(12, (0..6).map(|i| (2 * i, 2 * i + 1))).unwrap();
        let d = RsDecomposition {
            graph: g,
            matchings: vec![(0..6).map(|i| (2 * i, 2 * i + 1)).collect()],
            spanning: true,
            left: None,
        };
        let s = split_chunks(&d, 2).unwrap();
        assert_eq!((s.t(), s.n()), (3, 2));
        assert!(s.spanning && verify_rs(&s).is_ok());
        assert!(!split_chunks(&d, 4).unwrap().spanning);
    }

    #[test]
    fn chunk_splitting_random() {
        let mut rng = RngStream::new(8);
        for _ in 0..50 {
            let n = rng.gen_range(15..200);
            let c = rs_from_behrend(n, None).unwrap();
            let chunk = rng.gen_range(1..=c.decomposition.n());
            let s = split_chunks(&c.decomposition, chunk).unwrap();
            assert!(verify_rs(&s).is_ok());
            assert_eq!(s.t(), c.decomposition.t() * (c.decomposition.n() / chunk));
        }
    }

    #[test]
    fn behrend_run_and_double() {
        let c = rs_from_behrend(3000, None).unwrap();
        let d = &c.decomposition;
        assert!(d.graph.n() <= 3000);
        assert_eq!(d.t(), 750);
        assert_eq!(d.n(), c.set_size);
        assert!(verify_rs(d).is_ok());
        let dd = bipartite_double(d);
        assert_eq!((dd.graph.n(), dd.t(), dd.n()), (2 * d.graph.n(), d.t(), 2 * d.n()));
        assert!(verify_rs(&dd).is_ok());
        assert!(rs_from_behrend(14, None).is_err());
    }

    #[test]
    fn double_of_one_edge() {
        let d = RsDecomposition {
            graph: Graph::from_edges(2, [(0, 1)]).unwrap(),
            matchings: vec![vec![(0, 1)]],
            spanning: true,
            left: None,
        };
        let dd = bipartite_double(&d);
        assert_eq!(dd.graph.edges(), &[(0, 3), (1, 2)]);
        assert_eq!(dd.n(), 2);
        assert!(verify_rs(&dd).is_ok());
    }
}
