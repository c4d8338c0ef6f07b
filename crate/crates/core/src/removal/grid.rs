//! Colored grids and monochromatic corners.

use serde::{Deserialize, Serialize};

use super::cover::{diamond_find, CoverTriangle, Diamond, TriangleCover, TripartiteColoring};
use crate::coloring::EdgeColoring;
use crate::error::{guard, Error, Result};
use crate::generate::grid_lines;
use crate::rng::RngStream;

pub const MAX_ORACLE_SIDE: usize = 300;
pub const MAX_PIPELINE_SIDE: usize = 100;

/// An `r`-coloring of the `N x N` grid, cells `(x, y)` with 0-based
/// coordinates, stored row-major by `y`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GridColoring {
    side: usize,
    r: usize,
    cells: Vec<u8>,
}

impl GridColoring {
    pub fn new(side: usize, r: usize, cells: Vec<u8>) -> Result<Self> {
        if r == 0 || r > EdgeColoring::MAX_COLORS {
            return Err(Error::InvalidGraph(format!("color count {r} outside 1..=254")));
        }
        if cells.len() != side * side {
            return Err(Error::InvalidGraph(format!(
                "{} cells for a grid of side {side}",
                cells.len()
            )));
        }
        if cells.iter().any(|&c| c as usize >= r) {
            return Err(Error::InvalidGraph(format!("cell color >= r = {r}")));
        }
        Ok(GridColoring { side, r, cells })
    }

    pub fn from_fn(side: usize, r: usize, mut f: impl FnMut(usize, usize) -> u8) -> Result<Self> {
        let mut cells = Vec::with_capacity(side * side);
        for y in 0..side {
            for x in 0..side {
                cells.push(f(x, y));
            }
        }
        Self::new(side, r, cells)
    }

    pub fn random(side: usize, r: usize, rng: &mut RngStream) -> Result<Self> {
        use rand::Rng;
        Self::from_fn(side, r, |_, _| rng.gen_range(0..r) as u8)
    }

    /// The `index`-th coloring in base-`r` order, cell `(x, y)` being digit
    /// `y * side + x`.
    pub fn from_index(side: usize, r: usize, mut index: u64) -> Result<Self> {
        let mut cells = vec![0u8; side * side];
        for c in cells.iter_mut() {
            *c = (index % r as u64) as u8;
            index /= r as u64;
        }
        Self::new(side, r, cells)
    }

    pub fn side(&self) -> usize {
        self.side
    }

    pub fn r(&self) -> usize {
        self.r
    }

    #[inline]
    pub fn color(&self, x: usize, y: usize) -> u8 {
        self.cells[y * self.side + x]
    }

    fn color_at(&self, x: i64, y: i64) -> Option<u8> {
        let n = self.side as i64;
        (0..n).contains(&x).then_some(())?;
        (0..n).contains(&y).then_some(())?;
        Some(self.color(x as usize, y as usize))
    }

    /// Whether `c` is an in-range monochromatic corner of this grid.
    pub fn is_corner(&self, c: &Corner) -> bool {
        if c.d == 0 {
            return false;
        }
        let pts = [(c.x, c.y), (c.x + c.d, c.y), (c.x, c.y + c.d)];
        pts.iter().all(|&(x, y)| self.color_at(x, y) == Some(c.color))
    }
}

/// Points `(x, y)`, `(x + d, y)`, `(x, y + d)` with `d != 0`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Corner {
    pub x: i64,
    pub y: i64,
    pub d: i64,
    pub color: u8,
}

/// Every monochromatic corner, both signs of `d`, ordered by `(x, y, d)`.
pub fn corner_oracle(g: &GridColoring) -> Result<Vec<Corner>> {
    let n = g.side();
    guard(n <= MAX_ORACLE_SIDE, || format!("grid side {n} > {MAX_ORACLE_SIDE}"))?;
    let n = n as i64;
    let mut out = Vec::new();
    for x in 0..n {
        for y in 0..n {
            let color = g.color(x as usize, y as usize);
            for d in -n + 1..n {
                let c = Corner { x, y, d, color };
                if d != 0 && g.is_corner(&c) {
                    out.push(c);
                }
            }
        }
    }
    Ok(out)
}

/// The line graph of the grid, each edge colored by the point where its two
/// lines meet, covered by the `N^2` point triangles.
pub fn grid_cover(g: &GridColoring) -> Result<TriangleCover> {
    let lines = grid_lines(g.side())?;
    let tg = &lines.graph;
    let mut c = TripartiteColoring::empty(tg.sizes(), g.r())?;
    for &(u, v) in tg.graph().edges() {
        let (x, y) = lines.meeting_point(u, v).expect("adjacent lines meet");
        let col = g.color(x, y);
        let (iu, iv) = (u - tg.offset(tg.part_of(u)), v - tg.offset(tg.part_of(v)));
        match (tg.part_of(u), tg.part_of(v)) {
            (0, 1) => c.set01(iu, iv, col)?,
            (0, 2) => c.set02(iu, iv, col)?,
            (1, 2) => c.set12(iu, iv, col)?,
            parts => unreachable!("edge between parts {parts:?}"),
        }
    }
    let n = g.side();
    let triangles = (0..n)
        .flat_map(|x| (0..n).map(move |y| (x, y)))
        .map(|(x, y)| CoverTriangle {
            a: x + y,
            i: x,
            j: y,
            color: g.color(x, y),
        })
        .collect();
    TriangleCover::new(c, triangles).map_err(|v| Error::InvalidGraph(format!("grid cover: {v}")))
}

#[derive(Clone, Debug, Serialize)]
pub struct GridOutcome {
    pub corner: Option<Corner>,
    pub diamond: Option<Diamond>,
}

/// Corner from a diamond on the edge `(x, y)`: the apex other than the
/// point's own diagonal `x + y` is `x + y + d`.
fn corner_from_diamond(d: &Diamond) -> Corner {
    let own = d.i + d.j;
    let apex = if d.apexes[0] != own { d.apexes[0] } else { d.apexes[1] };
    Corner {
        x: d.i as i64,
        y: d.j as i64,
        d: apex as i64 - own as i64,
        color: d.color,
    }
}

/// Monochromatic corner via a diamond in the colored line graph. A corner
/// `(x, y, d)` gives the apexes `x + y` and `x + y + d` over the edge
/// `(x, y)`, so `None` here also means the grid has no corner.
pub fn grid_pipeline(g: &GridColoring) -> Result<GridOutcome> {
    guard(g.side() <= MAX_PIPELINE_SIDE, || format!("grid side {} > {MAX_PIPELINE_SIDE}", g.side()))?;
    let cover = grid_cover(g)?;
    let diamond = diamond_find(cover.coloring())?;
    let corner = diamond.as_ref().map(corner_from_diamond);
    if let Some(c) = &corner {
        assert!(g.is_corner(c), "diamond {diamond:?} converted to a non-corner {c:?}");
    }
    Ok(GridOutcome { corner, diamond })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_color_two_by_two() {
        let g = GridColoring::from_fn(2, 1, |_, _| 0).unwrap();
        let cs = corner_oracle(&g).unwrap();
        let tuples: Vec<_> = cs.iter().map(|c| (c.x, c.y, c.d)).collect();
        assert_eq!(tuples, vec![(0, 0, 1), (1, 1, -1)]);
    }

    #[test]
    fn one_cell_has_no_corner() {
        let g = GridColoring::from_fn(1, 1, |_, _| 0).unwrap();
        assert!(corner_oracle(&g).unwrap().is_empty());
    }

    #[test]
    fn checkerboard_three() {
        let g = GridColoring::from_fn(3, 2, |x, y| ((x + y) % 2) as u8).unwrap();
        // (x, y), (x+d, y), (x, y+d) share parity only for even d
        let cs = corner_oracle(&g).unwrap();
        assert!(cs.iter().all(|c| c.d % 2 == 0));
        assert_eq!(cs.len(), 2);
    }

    #[test]
    fn pipeline_agrees_with_oracle_exhaustively() {
        // corner-free 2-colorings of the N x N grid, N = 1..=4
        let mut free = Vec::new();
        for n in 1..=4usize {
            let mut count = 0;
            for index in 0..1u64 << (n * n) {
                let g = GridColoring::from_index(n, 2, index).unwrap();
                let oracle = corner_oracle(&g).unwrap();
                let out = grid_pipeline(&g).unwrap();
                match out.corner {
                    Some(c) => assert!(oracle.contains(&c)),
                    None => {
                        assert!(oracle.is_empty());
                        count += 1;
                    }
                }
            }
            free.push(count);
        }
        assert_eq!(free, vec![2, 10, 54, 148]);
    }

    #[test]
    fn monochromatic_grids() {
        let g = GridColoring::from_fn(2, 1, |_, _| 0).unwrap();
        let c = grid_pipeline(&g).unwrap().corner.unwrap();
        assert!(g.is_corner(&c) && c.d.abs() == 1);
        let g4 = GridColoring::from_fn(4, 1, |_, _| 0).unwrap();
        assert!(grid_pipeline(&g4).unwrap().diamond.is_some());
        let cover = grid_cover(&g4).unwrap();
        assert!(cover.is_complete());
        assert!(crate::removal::triangle_census(cover.coloring()).unwrap().total >= 16);
    }

    #[test]
    fn random_grid_step_clauses() {
        let mut rng = RngStream::new(15);
        let g = GridColoring::random(15, 2, &mut rng).unwrap();
        let cover = grid_cover(&g).unwrap();
        let step = crate::removal::sparse_pair_step(&cover).unwrap();
        assert!(step.size_holds && step.edge_holds);
        let direct = step
            .v1
            .iter()
            .flat_map(|&i| step.v2.iter().map(move |&j| (i, j)))
            .filter(|&(i, j)| cover.coloring().c12(i, j) == step.color)
            .count() as u64;
        assert_eq!(direct, step.measured);
        assert!(grid_pipeline(&GridColoring::random(101, 2, &mut rng).unwrap()).is_err());
    }
}
