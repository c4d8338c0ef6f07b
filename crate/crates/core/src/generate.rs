//! Named graph families and random graph models.

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{guard, require, Result};
use crate::graph::{BipartiteGraph, Graph, TripartiteGraph};
use crate::rng::RngStream;

pub const MAX_HYPERCUBE_DIM: u32 = 20;
pub const MAX_GRID_CELLS: u64 = 100_000_000;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GraphKind {
    Complete(usize),
    CompleteBipartite(usize, usize),
    CompleteKpartite(Vec<usize>),
    Hypercube(u32),
    GridLines(usize),
}

#[derive(Clone, Debug)]
pub enum Generated {
    Graph(Graph),
    Bipartite(BipartiteGraph),
    Tripartite(GridLines),
}

pub fn generate(kind: &GraphKind) -> Result<Generated> {
    Ok(match kind {
        GraphKind::Complete(n) => {
            require(*n >= 1, || "complete graph needs n >= 1".into())?;
            Generated::Graph(Graph::complete(*n))
        }
        GraphKind::CompleteBipartite(a, b) => {
            require(*a >= 1 && *b >= 1, || "part sizes must be >= 1".into())?;
            Generated::Bipartite(BipartiteGraph::complete(*a, *b))
        }
        GraphKind::CompleteKpartite(sizes) => Generated::Graph(complete_kpartite(sizes)?),
        GraphKind::Hypercube(d) => Generated::Graph(hypercube(*d)?),
        GraphKind::GridLines(n) => Generated::Tripartite(grid_lines(*n)?),
    })
}

/// Complete multipartite graph; part `i` occupies a consecutive index block.
pub fn complete_kpartite(sizes: &[usize]) -> Result<Graph> {
    require(!sizes.is_empty() && sizes.iter().all(|&s| s >= 1), || {
        format!("part sizes {sizes:?} must be nonempty and >= 1")
    })?;
    let mut part = Vec::new();
    for (i, &s) in sizes.iter().enumerate() {
        part.extend(std::iter::repeat(i).take(s));
    }
    Ok(Graph::from_fn(part.len(), |u, v| part[u] != part[v]))
}

/// `Q_d` on `{0,1}^d`, vertex `x` labelled by its bit pattern.
pub fn hypercube(d: u32) -> Result<Graph> {
    require(d >= 1, || "hypercube dimension must be >= 1".into())?;
    guard(d <= MAX_HYPERCUBE_DIM, || format!("hypercube dimension {d} > {MAX_HYPERCUBE_DIM}"))?;
    let n = 1usize << d;
    let mut edges = Vec::with_capacity(d as usize * n / 2);
    for x in 0..n {
        for b in 0..d {
            let y = x ^ (1 << b);
            if x < y {
                edges.push((x, y));
            }
        }
    }
    edges.sort_unstable();
    Ok(Graph::from_sorted_unique(n, edges))
}

/// The line graph of the `N x N` grid used for corners: `V0` holds the `2N-1`
/// anti-diagonals `x + y = s`, `V1` the vertical lines `x = i`, `V2` the
/// horizontal lines `y = j`. Two lines are adjacent iff they meet in a grid
/// point. Coordinates are 0-based.
#[derive(Clone, Debug)]
pub struct GridLines {
    pub side: usize,
    pub graph: TripartiteGraph,
}

impl GridLines {
    pub fn diagonal(&self, s: usize) -> usize {
        self.graph.vertex(0, s)
    }

    pub fn vertical(&self, x: usize) -> usize {
        self.graph.vertex(1, x)
    }

    pub fn horizontal(&self, y: usize) -> usize {
        self.graph.vertex(2, y)
    }

    /// The grid point where the lines `u` and `v` meet, if they do.
    pub fn meeting_point(&self, u: usize, v: usize) -> Option<(usize, usize)> {
        let g = &self.graph;
        let (a, b) = if g.part_of(u) <= g.part_of(v) { (u, v) } else { (v, u) };
        let (pa, pb) = (g.part_of(a), g.part_of(b));
        let ia = a - g.offset(pa);
        let ib = b - g.offset(pb);
        let n = self.side;
        let pt = match (pa, pb) {
            (1, 2) => Some((ia, ib)),
            (0, 1) => ia.checked_sub(ib).map(|y| (ib, y)),
            (0, 2) => ia.checked_sub(ib).map(|x| (x, ib)),
            _ => None,
        }?;
        (pt.0 < n && pt.1 < n).then_some(pt)
    }

    /// The three lines through `(x, y)`: diagonal, vertical, horizontal.
    pub fn lines_through(&self, x: usize, y: usize) -> [usize; 3] {
        [self.diagonal(x + y), self.vertical(x), self.horizontal(y)]
    }
}

pub fn grid_lines(n: usize) -> Result<GridLines> {
    require(n >= 1, || "grid side must be >= 1".into())?;
    guard((n as u64).saturating_mul(n as u64) <= MAX_GRID_CELLS, || {
        format!("grid of side {n} exceeds {MAX_GRID_CELLS} cells")
    })?;
    let sizes = [2 * n - 1, n, n];
    let (o1, o2) = (sizes[0], sizes[0] + n);
    let mut edges = Vec::with_capacity(3 * n * n);
    for x in 0..n {
        for y in 0..n {
            let s = x + y;
            edges.push((s, o1 + x));
            edges.push((s, o2 + y));
            edges.push((o1 + x, o2 + y));
        }
    }
    edges.sort_unstable();
    let graph = Graph::from_sorted_unique(sizes.iter().sum(), edges);
    Ok(GridLines {
        side: n,
        graph: TripartiteGraph::new(sizes, graph)?,
    })
}

/// Erdős–Rényi `G(n, p)`; pairs are visited in lexicographic order.
pub fn gnp(n: usize, p: f64, rng: &mut RngStream) -> Graph {
    Graph::from_fn(n, |_, _| rng.gen::<f64>() < p)
}

pub fn random_bipartite(n1: usize, n2: usize, p: f64, rng: &mut RngStream) -> BipartiteGraph {
    BipartiteGraph::from_fn(n1, n2, |_, _| rng.gen::<f64>() < p)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hypercube_sizes_and_adjacency() {
        let q2 = hypercube(2).unwrap();
        assert_eq!((q2.n(), q2.m()), (4, 4));
        assert!((0..4).all(|v| q2.degree(v) == 2));
        let q3 = hypercube(3).unwrap();
        assert_eq!((q3.n(), q3.m()), (8, 12));
        assert!((0..8).all(|v| q3.degree(v) == 3));
        for d in 1..=10 {
            let q = hypercube(d).unwrap();
            assert_eq!(q.m(), d as usize * (1 << (d - 1)));
            for x in 0..q.n() {
                for y in 0..q.n() {
                    assert_eq!(q.has_edge(x, y), (x ^ y).count_ones() == 1);
                }
            }
        }
        assert!(hypercube(21).is_err());
    }

    #[test]
    fn grid_lines_two() {
        let gl = grid_lines(2).unwrap();
        assert_eq!(gl.graph.sizes(), [3, 2, 2]);
        let g = gl.graph.graph();
        for x in 0..2 {
            for y in 0..2 {
                assert!(g.has_edge(gl.vertical(x), gl.horizontal(y)));
            }
        }
        assert_eq!(g.m(), 12);
        assert_eq!(gl.meeting_point(gl.diagonal(1), gl.vertical(1)), Some((1, 0)));
        assert_eq!(gl.meeting_point(gl.horizontal(1), gl.diagonal(0)), None);
        assert!(grid_lines(10_001).is_err());
    }

    #[test]
    fn multipartite() {
        let g = complete_kpartite(&[2, 3]).unwrap();
        assert_eq!(g.m(), 6);
        assert!(!g.has_edge(0, 1));
        assert!(complete_kpartite(&[2, 0]).is_err());
    }
}
