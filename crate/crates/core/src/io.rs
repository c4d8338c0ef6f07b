//! Plain-text edge-list formats.
//!
//! ```text
//! # comment
//! 4          vertex count
//! 0 1        one edge per line
//! 2 3
//! ```
//!
//! Colorings append a color to every edge line (`u v c`). Bipartite files
//! carry a second header line `n1 n2` and use global indices, left part
//! first. Grid files hold `N` followed by `N` rows of `N` colors; row `y`
//! lists the cells `(0, y) .. (N-1, y)`.

use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use crate::coloring::EdgeColoring;
use crate::error::{Error, Result};
use crate::graph::{BipartiteGraph, Graph};
use crate::removal::GridColoring;

/// Non-empty, comment-stripped lines with their 1-based line numbers.
fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().filter_map(|(i, raw)| {
        let line = raw.split('#').next().unwrap_or("").trim();
        (!line.is_empty()).then_some((i + 1, line))
    })
}

fn parse_fields<const K: usize>(line_no: usize, line: &str) -> Result<[usize; K]> {
    let mut out = [0usize; K];
    let mut it = line.split_whitespace();
    for slot in out.iter_mut() {
        let tok = it.next().ok_or_else(|| Error::Parse {
            line: line_no,
            msg: format!("expected {K} integers, got {line:?}"),
        })?;
        *slot = tok.parse().map_err(|_| Error::Parse {
            line: line_no,
            msg: format!("{tok:?} is not a non-negative integer"),
        })?;
    }
    if it.next().is_some() {
        return Err(Error::Parse {
            line: line_no,
            msg: format!("trailing tokens in {line:?}"),
        });
    }
    Ok(out)
}

fn missing_header() -> Error {
    Error::Parse {
        line: 0,
        msg: "missing vertex-count header".into(),
    }
}

pub fn parse_graph(text: &str) -> Result<Graph> {
    let mut lines = content_lines(text);
    let (no, head) = lines.next().ok_or_else(missing_header)?;
    let [n] = parse_fields::<1>(no, head)?;
    let mut edges = Vec::new();
    for (no, line) in lines {
        let [u, v] = parse_fields::<2>(no, line)?;
        edges.push((u, v));
    }
    Graph::from_edges(n, edges)
}

pub fn format_graph(g: &Graph) -> String {
    let mut s = format!("{}\n", g.n());
    for &(u, v) in g.edges() {
        let _ = writeln!(s, "{u} {v}");
    }
    s
}

pub fn read_graph(path: impl AsRef<Path>) -> Result<Graph> {
    parse_graph(&fs::read_to_string(path)?)
}

pub fn write_graph(g: &Graph, path: impl AsRef<Path>) -> Result<()> {
    Ok(fs::write(path, format_graph(g))?)
}

pub fn parse_bipartite(text: &str) -> Result<BipartiteGraph> {
    let mut lines = content_lines(text);
    let (no, head) = lines.next().ok_or_else(missing_header)?;
    let [n] = parse_fields::<1>(no, head)?;
    let (no, parts) = lines.next().ok_or(Error::Parse {
        line: no,
        msg: "missing part-size header".into(),
    })?;
    let [n1, n2] = parse_fields::<2>(no, parts)?;
    if n1 + n2 != n {
        return Err(Error::Parse {
            line: no,
            msg: format!("part sizes {n1} + {n2} != {n}"),
        });
    }
    let mut edges = Vec::new();
    for (no, line) in lines {
        let [u, v] = parse_fields::<2>(no, line)?;
        let (u, v) = (u.min(v), u.max(v));
        if u >= n1 || v < n1 || v >= n {
            return Err(Error::InvalidGraph(format!(
                "line {no}: ({u}, {v}) does not cross parts 0..{n1} and {n1}..{n}"
            )));
        }
        edges.push((u, v - n1));
    }
    BipartiteGraph::from_edges(n1, n2, edges)
}

pub fn format_bipartite(b: &BipartiteGraph) -> String {
    let n1 = b.left_len();
    let mut s = format!("{}\n{} {}\n", n1 + b.right_len(), n1, b.right_len());
    for &(u, v) in b.edges() {
        let _ = writeln!(s, "{} {}", u, v + n1);
    }
    s
}

/// The color count is taken as one more than the largest color present.
pub fn parse_coloring(text: &str) -> Result<EdgeColoring> {
    let mut lines = content_lines(text);
    let (no, head) = lines.next().ok_or_else(missing_header)?;
    let [n] = parse_fields::<1>(no, head)?;
    let mut triples = Vec::new();
    for (no, line) in lines {
        let [u, v, c] = parse_fields::<3>(no, line)?;
        if c >= EdgeColoring::MAX_COLORS {
            return Err(Error::Parse {
                line: no,
                msg: format!("color {c} too large"),
            });
        }
        triples.push(((u.min(v), u.max(v)), c as u8));
    }
    let g = Graph::from_edges(n, triples.iter().map(|t| t.0))?;
    triples.sort_unstable();
    let r = triples.iter().map(|t| t.1 as usize + 1).max().unwrap_or(1);
    EdgeColoring::new(g, r, triples.into_iter().map(|t| t.1).collect())
}

pub fn format_coloring(c: &EdgeColoring) -> String {
    let g = c.graph();
    let mut s = format!("{}\n", g.n());
    for (&(u, v), &k) in g.edges().iter().zip(c.colors()) {
        let _ = writeln!(s, "{u} {v} {k}");
    }
    s
}

pub fn parse_grid(text: &str) -> Result<GridColoring> {
    let mut lines = content_lines(text);
    let (no, head) = lines.next().ok_or_else(missing_header)?;
    let [n] = parse_fields::<1>(no, head)?;
    let mut cells = vec![0u8; n * n];
    let mut rows = 0;
    for (no, line) in lines {
        if rows == n {
            return Err(Error::Parse {
                line: no,
                msg: format!("more than {n} rows"),
            });
        }
        let row: Vec<&str> = line.split_whitespace().collect();
        if row.len() != n {
            return Err(Error::Parse {
                line: no,
                msg: format!("expected {n} colors, got {}", row.len()),
            });
        }
        for (x, tok) in row.iter().enumerate() {
            cells[rows * n + x] = tok
                .parse::<u8>()
                .ok()
                .filter(|&c| (c as usize) < EdgeColoring::MAX_COLORS)
                .ok_or_else(|| Error::Parse {
                    line: no,
                    msg: format!("{tok:?} is not a color"),
                })?;
        }
        rows += 1;
    }
    if rows != n {
        return Err(Error::Parse {
            line: 0,
            msg: format!("expected {n} rows, got {rows}"),
        });
    }
    let r = cells.iter().map(|&c| c as usize + 1).max().unwrap_or(1);
    GridColoring::new(n, r, cells)
}

pub fn format_grid(g: &GridColoring) -> String {
    let n = g.side();
    let mut s = format!("{n}\n");
    for y in 0..n {
        let row: Vec<String> = (0..n).map(|x| g.color(x, y).to_string()).collect();
        let _ = writeln!(s, "{}", row.join(" "));
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generate::hypercube;

    #[test]
    fn single_edge_and_edgeless() {
        let g = parse_graph("2\n0 1\n").unwrap();
        assert_eq!((g.n(), g.edges()), (2, &[(0, 1)][..]));
        let e = parse_graph("# empty\n5\n").unwrap();
        assert_eq!((e.n(), e.m()), (5, 0));
    }

    #[test]
    fn hypercube_round_trip() {
        let q = hypercube(3).unwrap();
        assert_eq!(parse_graph(&format_graph(&q)).unwrap(), q);
    }

    #[test]
    fn errors_name_the_line() {
        match parse_graph("3\n0 1\n1 x\n") {
            Err(Error::Parse { line, .. }) => assert_eq!(line, 3),
            other => panic!("{other:?}"),
        }
        assert!(matches!(parse_graph("3\n0 3\n"), Err(Error::InvalidGraph(_))));
        assert!(matches!(parse_graph("3\n0 1 2\n"), Err(Error::Parse { line: 2, .. })));
    }

    #[test]
    fn bipartite_and_coloring_round_trip() {
        let b = BipartiteGraph::from_edges(2, 3, [(0, 0), (1, 2)]).unwrap();
        assert_eq!(parse_bipartite(&format_bipartite(&b)).unwrap(), b);
        assert!(parse_bipartite("3\n1 2\n1 2\n").is_err());
        let c = EdgeColoring::from_fn(Graph::complete(4), 3, |u, v| ((u + v) % 3) as u8).unwrap();
        assert_eq!(parse_coloring(&format_coloring(&c)).unwrap(), c);
    }

    #[test]
    fn grid_round_trip() {
        let g = parse_grid("2\n0 1\n1 1\n").unwrap();
        assert_eq!(g.color(1, 0), 1);
        assert_eq!(g.color(0, 0), 0);
        assert_eq!(parse_grid(&format_grid(&g)).unwrap(), g);
        assert!(parse_grid("2\n0 1\n").is_err());
    }
}
