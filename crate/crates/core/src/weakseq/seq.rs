use std::fmt;

use serde::{Deserialize, Serialize};

use crate::bitset::VertexSet;
use crate::error::{guard, require, Result};
use crate::graph::Graph;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SeqKind {
    Complete,
    Bicomplete,
}

/// `r`-sets `S_1..S_t` (and `T_1..T_t` for the bicomplete kind).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WeakSequence {
    pub kind: SeqKind,
    pub r: usize,
    pub s: Vec<Vec<usize>>,
    /// Empty for the complete kind.
    pub t: Vec<Vec<usize>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum SeqViolation {
    Shape(String),
    WrongSize { side: char, index: usize, len: usize },
    Repeated { vertex: usize },
    OutOfRange { vertex: usize },
    /// No edge between the two named sets.
    MissingEdge { first: (char, usize), second: (char, usize) },
}

impl fmt::Display for SeqViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SeqViolation::Shape(msg) => write!(f, "{msg}"),
            SeqViolation::WrongSize { side, index, len } => write!(f, "{side}_{index} has {len} vertices"),
            SeqViolation::Repeated { vertex } => write!(f, "vertex {vertex} used twice"),
            SeqViolation::OutOfRange { vertex } => write!(f, "vertex {vertex} out of range"),
            SeqViolation::MissingEdge { first, second } => {
                write!(f, "no edge between {}_{} and {}_{}", first.0, first.1, second.0, second.1)
            }
        }
    }
}

impl WeakSequence {
    pub fn complete(r: usize, s: Vec<Vec<usize>>) -> Self {
        WeakSequence {
            kind: SeqKind::Complete,
            r,
            s,
            t: Vec::new(),
        }
    }

    pub fn bicomplete(r: usize, s: Vec<Vec<usize>>, t: Vec<Vec<usize>>) -> Self {
        WeakSequence {
            kind: SeqKind::Bicomplete,
            r,
            s,
            t,
        }
    }

    pub fn order(&self) -> usize {
        self.s.len()
    }

    /// `S_i ∪ T_i`, a weakly complete `2r`-sequence.
    pub fn to_complete(&self) -> WeakSequence {
        match self.kind {
            SeqKind::Complete => self.clone(),
            SeqKind::Bicomplete => {
                let s = self
                    .s
                    .iter()
                    .zip(&self.t)
                    .map(|(a, b)| {
                        let mut u = [a.as_slice(), b.as_slice()].concat();
                        u.sort_unstable();
                        u
                    })
                    .collect();
                WeakSequence::complete(2 * self.r, s)
            }
        }
    }

    /// Extends every set to `r_new` vertices with the smallest unused ones.
    pub fn pad(&self, n: usize, r_new: usize) -> Result<WeakSequence> {
        let sets = self.s.len() + self.t.len();
        require(r_new >= self.r, || format!("cannot shrink {} to {r_new}", self.r))?;
        require(sets * r_new <= n, || format!("{sets} sets of {r_new} do not fit in {n} vertices"))?;
        let mut used = VertexSet::new(n);
        for v in self.s.iter().chain(&self.t).flatten() {
            used.insert(*v);
        }
        let mut fresh = (0..n).filter(|&v| !used.contains(v));
        let mut grow = |sets: &[Vec<usize>]| -> Vec<Vec<usize>> {
            sets.iter()
                .map(|a| {
                    let mut a = a.clone();
                    while a.len() < r_new {
                        a.push(fresh.next().expect("room checked"));
                    }
                    a.sort_unstable();
                    a
                })
                .collect()
        };
        let s = grow(&self.s);
        let t = grow(&self.t);
        Ok(WeakSequence {
            kind: self.kind,
            r: r_new,
            s,
            t,
        })
    }
}

fn joined(g: &Graph, a: &[usize], b: &[usize]) -> bool {
    a.iter().any(|&u| b.iter().any(|&v| g.has_edge(u, v)))
}

/// Every invariant of the sequence, checked exhaustively.
pub fn verify_sequence(g: &Graph, w: &WeakSequence) -> std::result::Result<(), SeqViolation> {
    if w.kind == SeqKind::Bicomplete && w.s.len() != w.t.len() {
        return Err(SeqViolation::Shape(format!("{} S-sets but {} T-sets", w.s.len(), w.t.len())));
    }
    if w.kind == SeqKind::Complete && !w.t.is_empty() {
        return Err(SeqViolation::Shape("complete sequence with T-sets".into()));
    }
    let mut seen = VertexSet::new(g.n());
    for (side, sets) in [('S', &w.s), ('T', &w.t)] {
        for (i, a) in sets.iter().enumerate() {
            if a.len() != w.r {
                return Err(SeqViolation::WrongSize {
                    side,
                    index: i,
                    len: a.len(),
                });
            }
            for &v in a {
                if v >= g.n() {
                    return Err(SeqViolation::OutOfRange { vertex: v });
                }
                if seen.contains(v) {
                    return Err(SeqViolation::Repeated { vertex: v });
                }
                seen.insert(v);
            }
        }
    }
    match w.kind {
        SeqKind::Complete => {
            for i in 0..w.s.len() {
                for j in i + 1..w.s.len() {
                    if !joined(g, &w.s[i], &w.s[j]) {
                        return Err(SeqViolation::MissingEdge {
                            first: ('S', i),
                            second: ('S', j),
                        });
                    }
                }
            }
        }
        SeqKind::Bicomplete => {
            for i in 0..w.s.len() {
                for j in 0..w.t.len() {
                    if !joined(g, &w.s[i], &w.t[j]) {
                        return Err(SeqViolation::MissingEdge {
                            first: ('S', i),
                            second: ('T', j),
                        });
                    }
                }
            }
        }
    }
    Ok(())
}

/// Largest `t` with a weakly complete `r`-sequence of order `t` in `g`, by
/// exhaustive search. Returns the order and one witness.
pub fn max_weakly_complete_order(g: &Graph, r: usize, max_n: usize) -> Result<(usize, WeakSequence)> {
    guard(g.n() <= max_n, || format!("oracle envelope is n <= {max_n}, got {}", g.n()))?;
    require(r >= 1, || "r must be >= 1".into())?;
    let n = g.n();
    // r-sets as bitmasks, with the union of their neighbourhoods
    let sets: Vec<u32> = crate::combin::Combinations::new(n, r)
        .map(|c| c.iter().fold(0u32, |m, &v| m | 1 << v))
        .collect();
    let nbr: Vec<u32> = (0..n).map(|v| g.neighbors(v).iter().fold(0u32, |m, u| m | 1 << u)).collect();
    let touch: Vec<u32> = sets
        .iter()
        .map(|&s| (0..n).filter(|&v| s >> v & 1 == 1).fold(0u32, |m, v| m | nbr[v]))
        .collect();

    struct Search<'a> {
        sets: &'a [u32],
        touch: &'a [u32],
        r: usize,
        n: usize,
        chosen: Vec<usize>,
        best: Vec<usize>,
    }
    impl Search<'_> {
        fn run(&mut self, start: usize, used: u32) {
            if self.chosen.len() > self.best.len() {
                self.best = self.chosen.clone();
            }
            let free = self.n - used.count_ones() as usize;
            if self.chosen.len() + free / self.r <= self.best.len() {
                return;
            }
            // increasing index: each collection is visited once
            for i in start..self.sets.len() {
                let s = self.sets[i];
                if s & used != 0 {
                    continue;
                }
                if self.chosen.iter().all(|&j| self.touch[j] & s != 0) {
                    self.chosen.push(i);
                    self.run(i + 1, used | s);
                    self.chosen.pop();
                }
            }
        }
    }
    let mut search = Search {
        sets: &sets,
        touch: &touch,
        r,
        n,
        chosen: Vec::new(),
        best: Vec::new(),
    };
    search.run(0, 0);
    let witness: Vec<Vec<usize>> = search
        .best
        .iter()
        .map(|&i| (0..n).filter(|&v| sets[i] >> v & 1 == 1).collect())
        .collect();
    Ok((witness.len(), WeakSequence::complete(r, witness)))
}
