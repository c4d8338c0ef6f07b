use std::fmt;

use rayon::prelude::*;
use serde::Serialize;

use crate::bitset::VertexSet;
use crate::error::{guard, require, Result};

pub const NO_EDGE: u8 = u8::MAX;
/// Census and diamond scans enumerate `|V_1| |V_2|` edges against `V_0`.
pub const MAX_CENSUS_SIDE: usize = 300;

/// Edge-colored tripartite graph with parts `V_0`, `V_1`, `V_2`, indexed
/// locally; absent edges hold [`NO_EDGE`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TripartiteColoring {
    sizes: [usize; 3],
    r: usize,
    c01: Vec<u8>,
    c02: Vec<u8>,
    c12: Vec<u8>,
}

impl TripartiteColoring {
    pub fn empty(sizes: [usize; 3], r: usize) -> Result<Self> {
        require((1..NO_EDGE as usize).contains(&r), || format!("color count {r} outside 1..=254"))?;
        Ok(TripartiteColoring {
            sizes,
            r,
            c01: vec![NO_EDGE; sizes[0] * sizes[1]],
            c02: vec![NO_EDGE; sizes[0] * sizes[2]],
            c12: vec![NO_EDGE; sizes[1] * sizes[2]],
        })
    }

    pub fn sizes(&self) -> [usize; 3] {
        self.sizes
    }

    pub fn r(&self) -> usize {
        self.r
    }

    #[inline]
    pub fn c01(&self, a: usize, i: usize) -> u8 {
        self.c01[a * self.sizes[1] + i]
    }

    #[inline]
    pub fn c02(&self, a: usize, j: usize) -> u8 {
        self.c02[a * self.sizes[2] + j]
    }

    #[inline]
    pub fn c12(&self, i: usize, j: usize) -> u8 {
        self.c12[i * self.sizes[2] + j]
    }

    fn check_color(&self, c: u8) -> Result<()> {
        require(c == NO_EDGE || (c as usize) < self.r, || format!("color {c} >= r = {}", self.r))
    }

    pub fn set01(&mut self, a: usize, i: usize, c: u8) -> Result<()> {
        self.check_color(c)?;
        self.c01[a * self.sizes[1] + i] = c;
        Ok(())
    }

    pub fn set02(&mut self, a: usize, j: usize, c: u8) -> Result<()> {
        self.check_color(c)?;
        self.c02[a * self.sizes[2] + j] = c;
        Ok(())
    }

    pub fn set12(&mut self, i: usize, j: usize, c: u8) -> Result<()> {
        self.check_color(c)?;
        self.c12[i * self.sizes[2] + j] = c;
        Ok(())
    }

    pub fn edges12(&self) -> usize {
        self.c12.iter().filter(|&&c| c != NO_EDGE).count()
    }

    /// Colors used on `V_1`–`V_2` edges.
    pub fn colors12(&self) -> Vec<u8> {
        let mut seen = vec![false; self.r];
        for &c in &self.c12 {
            if c != NO_EDGE {
                seen[c as usize] = true;
            }
        }
        (0..self.r as u8).filter(|&c| seen[c as usize]).collect()
    }

    /// Keeps `V_0`, the listed `V_1` and `V_2` vertices, and drops `V_1`–`V_2`
    /// edges of color `drop`.
    pub fn restrict(&self, v1: &[usize], v2: &[usize], drop: Option<u8>) -> TripartiteColoring {
        let sizes = [self.sizes[0], v1.len(), v2.len()];
        let mut out = TripartiteColoring::empty(sizes, self.r).expect("same r");
        for a in 0..sizes[0] {
            for (ni, &i) in v1.iter().enumerate() {
                out.c01[a * sizes[1] + ni] = self.c01(a, i);
            }
            for (nj, &j) in v2.iter().enumerate() {
                out.c02[a * sizes[2] + nj] = self.c02(a, j);
            }
        }
        for (ni, &i) in v1.iter().enumerate() {
            for (nj, &j) in v2.iter().enumerate() {
                let c = self.c12(i, j);
                out.c12[ni * sizes[2] + nj] = if Some(c) == drop { NO_EDGE } else { c };
            }
        }
        out
    }

    /// `apex01[c][i]`: apexes `a` with `a–i` of color `c`; likewise `apex02`.
    fn apex_sets(&self) -> (Vec<Vec<VertexSet>>, Vec<Vec<VertexSet>>) {
        let [n0, n1, n2] = self.sizes;
        let mut s01 = vec![vec![VertexSet::new(n0); n1]; self.r];
        let mut s02 = vec![vec![VertexSet::new(n0); n2]; self.r];
        for a in 0..n0 {
            for i in 0..n1 {
                let c = self.c01(a, i);
                if c != NO_EDGE {
                    s01[c as usize][i].insert(a);
                }
            }
            for j in 0..n2 {
                let c = self.c02(a, j);
                if c != NO_EDGE {
                    s02[c as usize][j].insert(a);
                }
            }
        }
        (s01, s02)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Census {
    pub total: u64,
    pub per_color: Vec<u64>,
    /// Monochromatic triangles through each `V_0` vertex.
    pub per_apex: Vec<u64>,
}

fn census_guard(c: &TripartiteColoring) -> Result<()> {
    let [n0, n1, n2] = c.sizes;
    guard(n0.max(n1).max(n2) <= 2 * MAX_CENSUS_SIDE, || {
        format!("census envelope is parts <= {MAX_CENSUS_SIDE} (V_0 <= {}), got {:?}", 2 * MAX_CENSUS_SIDE, c.sizes)
    })?;
    guard(n1.max(n2) <= MAX_CENSUS_SIDE, || format!("census envelope is n <= {MAX_CENSUS_SIDE}"))
}

/// Exact monochromatic triangle counts: for each `V_1`–`V_2` edge, the
/// apexes joined to both ends in its color.
pub fn triangle_census(c: &TripartiteColoring) -> Result<Census> {
    census_guard(c)?;
    let [n0, n1, n2] = c.sizes;
    let (s01, s02) = c.apex_sets();
    let rows: Vec<(Vec<u64>, Vec<u64>)> = (0..n1)
        .into_par_iter()
        .map(|i| {
            let mut per_color = vec![0u64; c.r];
            let mut per_apex = vec![0u64; n0];
            for j in 0..n2 {
                let col = c.c12(i, j);
                if col == NO_EDGE {
                    continue;
                }
                let both = s01[col as usize][i].intersection(&s02[col as usize][j]);
                per_color[col as usize] += both.len() as u64;
                for a in both.iter() {
                    per_apex[a] += 1;
                }
            }
            (per_color, per_apex)
        })
        .collect();
    let mut per_color = vec![0u64; c.r];
    let mut per_apex = vec![0u64; n0];
    for (pc, pa) in rows {
        per_color.iter_mut().zip(pc).for_each(|(x, y)| *x += y);
        per_apex.iter_mut().zip(pa).for_each(|(x, y)| *x += y);
    }
    Ok(Census {
        total: per_color.iter().sum(),
        per_color,
        per_apex,
    })
}

/// A `V_1`–`V_2` edge `(i, j)` in two monochromatic triangles with apexes
/// `apexes[0] < apexes[1]` in `V_0`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Diamond {
    pub i: usize,
    pub j: usize,
    pub apexes: [usize; 2],
    pub color: u8,
}

/// First edge in `(i, j)` order with two monochromatic apexes; `None` is a
/// full-scan certificate.
pub fn diamond_find(c: &TripartiteColoring) -> Result<Option<Diamond>> {
    census_guard(c)?;
    let [_, n1, n2] = c.sizes;
    let (s01, s02) = c.apex_sets();
    Ok((0..n1).into_par_iter().find_map_first(|i| {
        (0..n2).find_map(|j| {
            let col = c.c12(i, j);
            if col == NO_EDGE {
                return None;
            }
            let both = s01[col as usize][i].intersection(&s02[col as usize][j]);
            let mut it = both.iter();
            let (a, b) = (it.next()?, it.next()?);
            Some(Diamond {
                i,
                j,
                apexes: [a, b],
                color: col,
            })
        })
    }))
}

pub fn is_diamond(c: &TripartiteColoring, d: &Diamond) -> bool {
    d.apexes[0] != d.apexes[1]
        && c.c12(d.i, d.j) == d.color
        && d.apexes.iter().all(|&a| c.c01(a, d.i) == d.color && c.c02(a, d.j) == d.color)
}

/// Apex `a` and edge `(i, j)`, monochromatic in `color`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct CoverTriangle {
    pub a: usize,
    pub i: usize,
    pub j: usize,
    pub color: u8,
}

/// Edge-disjoint monochromatic triangles, one through each `V_1`–`V_2` edge.
#[derive(Clone, Debug)]
pub struct TriangleCover {
    coloring: TripartiteColoring,
    triangles: Vec<CoverTriangle>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum CoverViolation {
    OutOfRange { index: usize },
    NotMonochromatic { index: usize },
    SharedEdge { first: usize, second: usize },
    Uncovered { i: usize, j: usize },
}

impl fmt::Display for CoverViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CoverViolation::OutOfRange { index } => write!(f, "triangle {index} out of range"),
            CoverViolation::NotMonochromatic { index } => write!(f, "triangle {index} is not monochromatic"),
            CoverViolation::SharedEdge { first, second } => write!(f, "triangles {first} and {second} share an edge"),
            CoverViolation::Uncovered { i, j } => write!(f, "edge ({i}, {j}) not covered"),
        }
    }
}

impl TriangleCover {
    /// Validates every invariant on the way in.
    pub fn new(coloring: TripartiteColoring, triangles: Vec<CoverTriangle>) -> std::result::Result<Self, CoverViolation> {
        let [n0, n1, n2] = coloring.sizes;
        let mut used01 = vec![usize::MAX; n0 * n1];
        let mut used02 = vec![usize::MAX; n0 * n2];
        let mut used12 = vec![usize::MAX; n1 * n2];
        for (k, t) in triangles.iter().enumerate() {
            if t.a >= n0 || t.i >= n1 || t.j >= n2 {
                return Err(CoverViolation::OutOfRange { index: k });
            }
            if t.color == NO_EDGE
                || coloring.c01(t.a, t.i) != t.color
                || coloring.c02(t.a, t.j) != t.color
                || coloring.c12(t.i, t.j) != t.color
            {
                return Err(CoverViolation::NotMonochromatic { index: k });
            }
            for slot in [&mut used01[t.a * n1 + t.i], &mut used02[t.a * n2 + t.j], &mut used12[t.i * n2 + t.j]] {
                if *slot != usize::MAX {
                    return Err(CoverViolation::SharedEdge { first: *slot, second: k });
                }
                *slot = k;
            }
        }
        for i in 0..n1 {
            for j in 0..n2 {
                if coloring.c12(i, j) != NO_EDGE && used12[i * n2 + j] == usize::MAX {
                    return Err(CoverViolation::Uncovered { i, j });
                }
            }
        }
        Ok(TriangleCover { coloring, triangles })
    }

    pub fn coloring(&self) -> &TripartiteColoring {
        &self.coloring
    }

    pub fn triangles(&self) -> &[CoverTriangle] {
        &self.triangles
    }

    /// `|V_1| = |V_2| = n` with all `n^2` edges present.
    pub fn is_complete(&self) -> bool {
        let [_, n1, n2] = self.coloring.sizes;
        n1 == n2 && self.triangles.len() == n1 * n2
    }

    /// Restriction to `v1 x v2` without color `drop`; cover triangles follow.
    pub fn restrict(&self, v1: &[usize], v2: &[usize], drop: Option<u8>) -> TriangleCover {
        let coloring = self.coloring.restrict(v1, v2, drop);
        let pos = |list: &[usize], x: usize| list.iter().position(|&y| y == x);
        let triangles = self
            .triangles
            .iter()
            .filter(|t| Some(t.color) != drop)
            .filter_map(|t| {
                Some(CoverTriangle {
                    a: t.a,
                    i: pos(v1, t.i)?,
                    j: pos(v2, t.j)?,
                    color: t.color,
                })
            })
            .collect();
        TriangleCover::new(coloring, triangles).expect("restriction of a valid cover is valid")
    }
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;
    use crate::rng::RngStream;
    use rand::Rng;

    /// Complete tripartite coloring with random colors.
    pub(crate) fn random_coloring(sizes: [usize; 3], r: usize, rng: &mut RngStream) -> TripartiteColoring {
        let mut c = TripartiteColoring::empty(sizes, r).unwrap();
        for a in 0..sizes[0] {
            for i in 0..sizes[1] {
                c.set01(a, i, rng.gen_range(0..r) as u8).unwrap();
            }
            for j in 0..sizes[2] {
                c.set02(a, j, rng.gen_range(0..r) as u8).unwrap();
            }
        }
        for i in 0..sizes[1] {
            for j in 0..sizes[2] {
                c.set12(i, j, rng.gen_range(0..r) as u8).unwrap();
            }
        }
        c
    }

    fn naive_census(c: &TripartiteColoring) -> u64 {
        let [n0, n1, n2] = c.sizes();
        let mut count = 0;
        for a in 0..n0 {
            for i in 0..n1 {
                for j in 0..n2 {
                    let x = c.c01(a, i);
                    if x != NO_EDGE && x == c.c02(a, j) && x == c.c12(i, j) {
                        count += 1;
                    }
                }
            }
        }
        count
    }

    /// Apex pairs first, then edges.
    fn naive_diamond_exists(c: &TripartiteColoring) -> bool {
        let [n0, n1, n2] = c.sizes();
        (0..n0).any(|a| {
            (a + 1..n0).any(|b| {
                (0..n1).any(|i| {
                    (0..n2).any(|j| {
                        let x = c.c12(i, j);
                        x != NO_EDGE && [a, b].iter().all(|&v| c.c01(v, i) == x && c.c02(v, j) == x)
                    })
                })
            })
        })
    }

    /// One apex per `V_1`–`V_2` edge: every cover is diamond-free.
    pub(crate) fn star_cover(n: usize, colors: impl Fn(usize, usize) -> u8, r: usize) -> TriangleCover {
        let mut c = TripartiteColoring::empty([n * n, n, n], r).unwrap();
        let mut tris = Vec::new();
        for i in 0..n {
            for j in 0..n {
                let (a, col) = (i * n + j, colors(i, j));
                c.set01(a, i, col).unwrap();
                c.set02(a, j, col).unwrap();
                c.set12(i, j, col).unwrap();
                tris.push(CoverTriangle { a, i, j, color: col });
            }
        }
        TriangleCover::new(c, tris).unwrap()
    }

    #[test]
    fn census_matches_reference() {
        for seed in 0..20 {
            let mut rng2 = RngStream::new(seed);
            let c = random_coloring([7, 5, 6], 2, &mut rng2);
            let cen = triangle_census(&c).unwrap();
            assert_eq!(cen.total, naive_census(&c));
            assert_eq!(cen.per_apex.iter().sum::<u64>(), cen.total);
            assert_eq!(diamond_find(&c).unwrap().is_some(), naive_diamond_exists(&c));
            if let Some(d) = diamond_find(&c).unwrap() {
                assert!(is_diamond(&c, &d));
            }
        }
    }

    #[test]
    fn single_apex_all_one_color() {
        let n = 5;
        let mut c = TripartiteColoring::empty([1, n, n], 1).unwrap();
        let mut tris = Vec::new();
        for i in 0..n {
            c.set01(0, i, 0).unwrap();
            c.set02(0, i, 0).unwrap();
            for j in 0..n {
                c.set12(i, j, 0).unwrap();
            }
        }
        assert_eq!(triangle_census(&c).unwrap().total, 25);
        // only one apex: no diamond, and no edge-disjoint cover beyond a matching
        assert_eq!(diamond_find(&c).unwrap(), None);
        tris.push(CoverTriangle { a: 0, i: 0, j: 0, color: 0 });
        tris.push(CoverTriangle { a: 0, i: 1, j: 0, color: 0 });
        assert_eq!(
            TriangleCover::new(c, tris).unwrap_err(),
            CoverViolation::SharedEdge { first: 0, second: 1 }
        );
    }

    #[test]
    fn cover_mutations_rejected() {
        let cover = star_cover(3, |i, j| ((i + j) % 2) as u8, 2);
        assert!(cover.is_complete());
        assert_eq!(diamond_find(cover.coloring()).unwrap(), None);
        let mut tris = cover.triangles().to_vec();
        tris.pop();
        assert_eq!(
            TriangleCover::new(cover.coloring().clone(), tris).unwrap_err(),
            CoverViolation::Uncovered { i: 2, j: 2 }
        );
        let mut tris = cover.triangles().to_vec();
        tris[0].color = 1;
        assert_eq!(
            TriangleCover::new(cover.coloring().clone(), tris).unwrap_err(),
            CoverViolation::NotMonochromatic { index: 0 }
        );
        let mut tris = cover.triangles().to_vec();
        tris.push(tris[0]);
        assert!(matches!(
            TriangleCover::new(cover.coloring().clone(), tris).unwrap_err(),
            CoverViolation::SharedEdge { .. }
        ));
    }

    #[test]
    fn two_triangles_on_an_edge() {
        let mut c = TripartiteColoring::empty([2, 1, 1], 2).unwrap();
        for a in 0..2 {
            c.set01(a, 0, 1).unwrap();
            c.set02(a, 0, 1).unwrap();
        }
        c.set12(0, 0, 1).unwrap();
        let d = diamond_find(&c).unwrap().unwrap();
        assert_eq!((d.i, d.j, d.apexes, d.color), (0, 0, [0, 1], 1));
        c.set02(1, 0, 0).unwrap();
        assert_eq!(diamond_find(&c).unwrap(), None);
    }
}
