//! Immutable simple graphs, bipartite graphs and k-uniform hypergraphs over
//! dense integer vertex indices.

use std::collections::HashSet;

use serde::{Deserialize, Serialize};

use crate::bitset::VertexSet;
use crate::combin::SetKey;
use crate::error::{Error, Result};
use crate::scalar::{self, Scalar};

/// Simple undirected graph on `0..n`. Edges are stored canonically
/// (`u < v`) and sorted.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    adj: Vec<VertexSet>,
    edges: Vec<(usize, usize)>,
}

impl Graph {
    pub fn empty(n: usize) -> Self {
        Graph {
            n,
            adj: vec![VertexSet::new(n); n],
            edges: Vec::new(),
        }
    }

    /// Builds a graph, rejecting loops, duplicate edges and endpoints `>= n`.
    /// Endpoints may be given in either order.
    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut list: Vec<(usize, usize)> = Vec::new();
        for (u, v) in edges {
            if u == v {
                return Err(Error::InvalidGraph(format!("loop at vertex {u}")));
            }
            if u >= n || v >= n {
                return Err(Error::InvalidGraph(format!(
                    "edge ({u}, {v}) has an endpoint >= n = {n}"
                )));
            }
            list.push((u.min(v), u.max(v)));
        }
        list.sort_unstable();
        if let Some(w) = list.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::InvalidGraph(format!(
                "duplicate edge ({}, {})",
                w[0].0, w[0].1
            )));
        }
        Ok(Self::from_sorted_unique(n, list))
    }

    /// `edges` must be canonical, sorted and unique.
    pub(crate) fn from_sorted_unique(n: usize, edges: Vec<(usize, usize)>) -> Self {
        let mut adj = vec![VertexSet::new(n); n];
        for &(u, v) in &edges {
            adj[u].insert(v);
            adj[v].insert(u);
        }
        Graph { n, adj, edges }
    }

    /// Builds from a symmetric adjacency predicate evaluated on all pairs.
    pub fn from_fn(n: usize, mut adjacent: impl FnMut(usize, usize) -> bool) -> Self {
        let mut edges = Vec::new();
        for u in 0..n {
            for v in u + 1..n {
                if adjacent(u, v) {
                    edges.push((u, v));
                }
            }
        }
        Self::from_sorted_unique(n, edges)
    }

    pub fn complete(n: usize) -> Self {
        Self::from_fn(n, |_, _| true)
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn m(&self) -> usize {
        self.edges.len()
    }

    #[inline]
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n && self.adj[u].contains(v)
    }

    #[inline]
    pub fn neighbors(&self, v: usize) -> &VertexSet {
        &self.adj[v]
    }

    #[inline]
    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn max_degree(&self) -> usize {
        (0..self.n).map(|v| self.degree(v)).max().unwrap_or(0)
    }

    /// `m / C(n, 2)`; zero for graphs with fewer than two vertices.
    pub fn density<T: Scalar>(&self) -> T {
        let pairs = self.n * self.n.saturating_sub(1) / 2;
        if pairs == 0 {
            T::zero()
        } else {
            scalar::ratio(self.m(), pairs)
        }
    }

    pub fn common_neighbors(&self, verts: &[usize]) -> VertexSet {
        let mut it = verts.iter();
        let mut acc = match it.next() {
            Some(&v) => self.adj[v].clone(),
            None => return VertexSet::full(self.n),
        };
        for &v in it {
            acc.intersect_with(&self.adj[v]);
        }
        acc
    }

    /// The subgraph induced on `verts`, relabeled to `0..verts.len()` in the
    /// given order.
    pub fn induced(&self, verts: &[usize]) -> Graph {
        let mut pos = vec![usize::MAX; self.n];
        for (i, &v) in verts.iter().enumerate() {
            pos[v] = i;
        }
        let mut edges = Vec::new();
        for (i, &u) in verts.iter().enumerate() {
            for w in self.adj[u].iter() {
                let j = pos[w];
                if j != usize::MAX && i < j {
                    edges.push((i, j));
                }
            }
        }
        edges.sort_unstable();
        Self::from_sorted_unique(verts.len(), edges)
    }

    /// Spanning subgraph keeping the edges accepted by `keep`.
    pub fn filter_edges(&self, mut keep: impl FnMut(usize, usize) -> bool) -> Graph {
        let edges = self.edges.iter().copied().filter(|&(u, v)| keep(u, v)).collect();
        Self::from_sorted_unique(self.n, edges)
    }

    pub fn complement(&self) -> Graph {
        Self::from_fn(self.n, |u, v| !self.has_edge(u, v))
    }

    /// Whether `verts` induces a connected subgraph (empty sets are not).
    pub fn is_connected_within(&self, verts: &VertexSet) -> bool {
        let Some(start) = verts.first() else {
            return false;
        };
        let mut seen = VertexSet::new(self.n);
        seen.insert(start);
        let mut stack = vec![start];
        while let Some(u) = stack.pop() {
            let mut nb = self.adj[u].intersection(verts);
            nb.difference_with(&seen);
            for w in nb.iter() {
                seen.insert(w);
                stack.push(w);
            }
        }
        seen.len() == verts.len()
    }

    /// Breadth-first distances from `source` using only vertices in `within`.
    pub fn distances_within(&self, source: usize, within: &VertexSet) -> Vec<Option<usize>> {
        let mut dist = vec![None; self.n];
        dist[source] = Some(0);
        let mut frontier = vec![source];
        let mut d = 0;
        while !frontier.is_empty() {
            d += 1;
            let mut next = Vec::new();
            for &u in &frontier {
                for w in self.adj[u].iter() {
                    if within.contains(w) && dist[w].is_none() {
                        dist[w] = Some(d);
                        next.push(w);
                    }
                }
            }
            frontier = next;
        }
        dist
    }
}

/// Bipartite graph with parts `left = 0..n1` and `right = 0..n2`; edges are
/// `(left, right)` pairs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BipartiteGraph {
    left_adj: Vec<VertexSet>,
    right_adj: Vec<VertexSet>,
    edges: Vec<(usize, usize)>,
}

impl BipartiteGraph {
    pub fn from_edges<I>(n1: usize, n2: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut list: Vec<(usize, usize)> = Vec::new();
        for (a, b) in edges {
            if a >= n1 || b >= n2 {
                return Err(Error::InvalidGraph(format!(
                    "cross edge ({a}, {b}) outside parts of sizes {n1}, {n2}"
                )));
            }
            list.push((a, b));
        }
        list.sort_unstable();
        if let Some(w) = list.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::InvalidGraph(format!(
                "duplicate edge ({}, {})",
                w[0].0, w[0].1
            )));
        }
        Ok(Self::from_sorted_unique(n1, n2, list))
    }

    pub(crate) fn from_sorted_unique(n1: usize, n2: usize, edges: Vec<(usize, usize)>) -> Self {
        let mut left_adj = vec![VertexSet::new(n2); n1];
        let mut right_adj = vec![VertexSet::new(n1); n2];
        for &(a, b) in &edges {
            left_adj[a].insert(b);
            right_adj[b].insert(a);
        }
        BipartiteGraph {
            left_adj,
            right_adj,
            edges,
        }
    }

    pub fn from_fn(n1: usize, n2: usize, mut adjacent: impl FnMut(usize, usize) -> bool) -> Self {
        let mut edges = Vec::new();
        for a in 0..n1 {
            for b in 0..n2 {
                if adjacent(a, b) {
                    edges.push((a, b));
                }
            }
        }
        Self::from_sorted_unique(n1, n2, edges)
    }

    pub fn complete(n1: usize, n2: usize) -> Self {
        Self::from_fn(n1, n2, |_, _| true)
    }

    #[inline]
    pub fn left_len(&self) -> usize {
        self.left_adj.len()
    }

    #[inline]
    pub fn right_len(&self) -> usize {
        self.right_adj.len()
    }

    #[inline]
    pub fn m(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    #[inline]
    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        a < self.left_len() && self.left_adj[a].contains(b)
    }

    #[inline]
    pub fn left_neighbors(&self, a: usize) -> &VertexSet {
        &self.left_adj[a]
    }

    #[inline]
    pub fn right_neighbors(&self, b: usize) -> &VertexSet {
        &self.right_adj[b]
    }

    /// `m / (n1 * n2)`.
    pub fn density<T: Scalar>(&self) -> T {
        let pairs = self.left_len() * self.right_len();
        if pairs == 0 {
            T::zero()
        } else {
            scalar::ratio(self.m(), pairs)
        }
    }

    /// Same graph with the roles of the parts exchanged.
    pub fn transposed(&self) -> BipartiteGraph {
        let mut edges: Vec<_> = self.edges.iter().map(|&(a, b)| (b, a)).collect();
        edges.sort_unstable();
        Self::from_sorted_unique(self.right_len(), self.left_len(), edges)
    }

    /// Subgraph induced on the given left and right vertices, relabeled in the
    /// given orders.
    pub fn induced(&self, left: &[usize], right: &[usize]) -> BipartiteGraph {
        Self::from_fn(left.len(), right.len(), |i, j| self.has_edge(left[i], right[j]))
    }

    /// As an ordinary graph: left part first, then the right part.
    pub fn to_graph(&self) -> Graph {
        let off = self.left_len();
        let edges = self.edges.iter().map(|&(a, b)| (a, b + off)).collect();
        Graph::from_sorted_unique(off + self.right_len(), edges)
    }
}

/// k-uniform hypergraph on `0..n`. Edges are sorted vertex lists.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KUniformHypergraph {
    n: usize,
    k: usize,
    edges: Vec<Vec<usize>>,
    index: HashSet<SetKey>,
}

impl KUniformHypergraph {
    pub fn from_edges<I>(n: usize, k: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = Vec<usize>>,
    {
        if k == 0 || k > SetKey::MAX_LEN {
            return Err(Error::InvalidGraph(format!(
                "uniformity {k} outside 1..={}",
                SetKey::MAX_LEN
            )));
        }
        if n > SetKey::MAX_VERTEX + 1 {
            return Err(Error::ResourceGuard(format!("{n} vertices exceed hypergraph index")));
        }
        let mut list = Vec::new();
        let mut index = HashSet::new();
        for mut e in edges {
            e.sort_unstable();
            if e.len() != k || e.windows(2).any(|w| w[0] == w[1]) {
                return Err(Error::InvalidGraph(format!(
                    "edge {e:?} is not a set of {k} distinct vertices"
                )));
            }
            if e[k - 1] >= n {
                return Err(Error::InvalidGraph(format!("edge {e:?} leaves 0..{n}")));
            }
            if !index.insert(SetKey::from_sorted(&e)) {
                return Err(Error::InvalidGraph(format!("duplicate edge {e:?}")));
            }
            list.push(e);
        }
        list.sort();
        Ok(KUniformHypergraph {
            n,
            k,
            edges: list,
            index,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn m(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[Vec<usize>] {
        &self.edges
    }

    /// `verts` in any order.
    pub fn contains(&self, verts: &[usize]) -> bool {
        verts.len() == self.k && self.index.contains(&SetKey::from_unsorted(verts))
    }

    pub fn filter_edges(&self, mut keep: impl FnMut(&[usize]) -> bool) -> KUniformHypergraph {
        let edges: Vec<Vec<usize>> = self.edges.iter().filter(|e| keep(e)).cloned().collect();
        let index = edges.iter().map(|e| SetKey::from_sorted(e)).collect();
        KUniformHypergraph {
            n: self.n,
            k: self.k,
            edges,
            index,
        }
    }
}

/// A graph whose vertices are split into three consecutive blocks
/// `V0 = 0..n0`, `V1 = n0..n0+n1`, `V2 = n0+n1..n` with no edge inside a block.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TripartiteGraph {
    sizes: [usize; 3],
    graph: Graph,
}

impl TripartiteGraph {
    pub fn new(sizes: [usize; 3], graph: Graph) -> Result<Self> {
        if sizes.iter().sum::<usize>() != graph.n() {
            return Err(Error::InvalidGraph(format!(
                "part sizes {sizes:?} do not sum to {}",
                graph.n()
            )));
        }
        let t = TripartiteGraph { sizes, graph };
        if let Some(&(u, v)) = t.graph.edges().iter().find(|&&(u, v)| t.part_of(u) == t.part_of(v)) {
            return Err(Error::InvalidGraph(format!("edge ({u}, {v}) inside a part")));
        }
        Ok(t)
    }

    pub fn sizes(&self) -> [usize; 3] {
        self.sizes
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    /// Global index of the `i`-th vertex of part `part`.
    #[inline]
    pub fn vertex(&self, part: usize, i: usize) -> usize {
        self.offset(part) + i
    }

    #[inline]
    pub fn offset(&self, part: usize) -> usize {
        self.sizes[..part].iter().sum()
    }

    pub fn part_of(&self, v: usize) -> usize {
        if v < self.sizes[0] {
            0
        } else if v < self.sizes[0] + self.sizes[1] {
            1
        } else {
            2
        }
    }

    pub fn part(&self, part: usize) -> std::ops::Range<usize> {
        let o = self.offset(part);
        o..o + self.sizes[part]
    }
}

/// Serializable edge list, used in witnesses and records.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EdgeList {
    pub n: usize,
    pub edges: Vec<(usize, usize)>,
}

impl From<&Graph> for EdgeList {
    fn from(g: &Graph) -> Self {
        EdgeList {
            n: g.n(),
            edges: g.edges().to_vec(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_loops_duplicates_and_range() {
        assert!(Graph::from_edges(3, [(1, 1)]).is_err());
        assert!(Graph::from_edges(3, [(0, 1), (1, 0)]).is_err());
        assert!(Graph::from_edges(3, [(0, 3)]).is_err());
        let g = Graph::from_edges(3, [(2, 0), (1, 2)]).unwrap();
        assert_eq!(g.edges(), &[(0, 2), (1, 2)]);
    }

    #[test]
    fn density_and_common_neighbors() {
        let g = Graph::complete(4);
        assert_eq!(g.density::<f64>(), 1.0);
        assert_eq!(g.common_neighbors(&[0, 1]).to_vec(), vec![2, 3]);
        assert_eq!(Graph::empty(1).density::<f64>(), 0.0);
    }

    #[test]
    fn connectivity_and_distances() {
        let path = Graph::from_edges(4, [(0, 1), (1, 2), (2, 3)]).unwrap();
        let all = VertexSet::full(4);
        assert!(path.is_connected_within(&all));
        let gap = VertexSet::from_iter_with_capacity(4, [0, 2]);
        assert!(!path.is_connected_within(&gap));
        assert_eq!(path.distances_within(0, &all)[3], Some(3));
    }

    #[test]
    fn bipartite_basics() {
        let b = BipartiteGraph::from_edges(2, 3, [(0, 2), (1, 0)]).unwrap();
        assert!(b.has_edge(0, 2));
        assert!(!b.has_edge(2, 0));
        assert_eq!(b.transposed().left_len(), 3);
        assert_eq!(b.to_graph().edges(), &[(0, 4), (1, 2)]);
        assert!(BipartiteGraph::from_edges(1, 1, [(0, 1)]).is_err());
    }

    #[test]
    fn hypergraph_validation() {
        assert!(KUniformHypergraph::from_edges(4, 3, [vec![0, 1, 1]]).is_err());
        assert!(KUniformHypergraph::from_edges(4, 3, [vec![0, 1]]).is_err());
        let h = KUniformHypergraph::from_edges(4, 3, [vec![2, 0, 1]]).unwrap();
        assert!(h.contains(&[1, 2, 0]));
        assert!(!h.contains(&[1, 2, 3]));
    }
}
