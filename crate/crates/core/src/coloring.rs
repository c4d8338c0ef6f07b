//! Total edge colorings with `r` colors.

use crate::error::{Error, Result};
use crate::graph::Graph;

/// Marker stored in the lookup matrix for non-edges.
const NONE: u8 = u8::MAX;

/// A graph together with a color in `0..r` on every edge. Colors are parallel
/// to `graph.edges()`; a dense `n x n` matrix gives constant-time lookup.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EdgeColoring {
    graph: Graph,
    r: usize,
    colors: Vec<u8>,
    matrix: Vec<u8>,
}

impl EdgeColoring {
    pub const MAX_COLORS: usize = 254;

    pub fn new(graph: Graph, r: usize, colors: Vec<u8>) -> Result<Self> {
        if r == 0 || r > Self::MAX_COLORS {
            return Err(Error::InvalidGraph(format!("color count {r} outside 1..=254")));
        }
        if colors.len() != graph.m() {
            return Err(Error::InvalidGraph(format!(
                "{} colors for {} edges",
                colors.len(),
                graph.m()
            )));
        }
        if let Some(c) = colors.iter().find(|&&c| c as usize >= r) {
            return Err(Error::InvalidGraph(format!("color {c} >= r = {r}")));
        }
        let n = graph.n();
        let mut matrix = vec![NONE; n * n];
        for (&(u, v), &c) in graph.edges().iter().zip(&colors) {
            matrix[u * n + v] = c;
            matrix[v * n + u] = c;
        }
        Ok(EdgeColoring {
            graph,
            r,
            colors,
            matrix,
        })
    }

    /// Colors every edge by `f(u, v)` with `u < v`.
    pub fn from_fn(graph: Graph, r: usize, mut f: impl FnMut(usize, usize) -> u8) -> Result<Self> {
        let colors = graph.edges().iter().map(|&(u, v)| f(u, v)).collect();
        Self::new(graph, r, colors)
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn colors(&self) -> &[u8] {
        &self.colors
    }

    #[inline]
    pub fn color(&self, u: usize, v: usize) -> Option<u8> {
        let n = self.graph.n();
        match self.matrix[u * n + v] {
            NONE => None,
            c => Some(c),
        }
    }

    /// Spanning subgraph of the edges with color `c`.
    pub fn color_class(&self, c: u8) -> Graph {
        let edges = self
            .graph
            .edges()
            .iter()
            .zip(&self.colors)
            .filter(|&(_, &k)| k == c)
            .map(|(&e, _)| e)
            .collect();
        Graph::from_sorted_unique(self.graph.n(), edges)
    }

    pub fn color_counts(&self) -> Vec<usize> {
        let mut counts = vec![0; self.r];
        for &c in &self.colors {
            counts[c as usize] += 1;
        }
        counts
    }

    /// Most frequent color, lowest index on ties.
    pub fn majority_color(&self) -> u8 {
        let counts = self.color_counts();
        let mut best = 0;
        for (c, &k) in counts.iter().enumerate() {
            if k > counts[best] {
                best = c;
            }
        }
        best as u8
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lookup_and_classes() {
        let g = Graph::complete(4);
        let col = EdgeColoring::from_fn(g, 2, |u, _| (u == 0) as u8).unwrap();
        assert_eq!(col.color(2, 0), Some(1));
        assert_eq!(col.color(2, 3), Some(0));
        assert_eq!(col.color(1, 1), None);
        assert_eq!(col.color_class(1).m(), 3);
        assert_eq!(col.color_counts(), vec![3, 3]);
        assert_eq!(col.majority_color(), 0);
    }

    #[test]
    fn rejects_bad_colors() {
        let g = Graph::complete(3);
        assert!(EdgeColoring::new(g.clone(), 2, vec![0, 1]).is_err());
        assert!(EdgeColoring::new(g.clone(), 2, vec![0, 1, 2]).is_err());
        assert!(EdgeColoring::new(g, 0, vec![]).is_err());
    }
}
