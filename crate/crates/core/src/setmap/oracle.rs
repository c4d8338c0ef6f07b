use serde::{Deserialize, Serialize};

use super::mapping::SetMapping;
use crate::combin::for_each_subset;
use crate::error::{guard, Result};

pub const MAX_ORACLE_GROUND: usize = 64;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FreeMode {
    /// `f(X) ∩ P = ∅` for every `k`-subset `X` of `P`.
    Disjoint,
    /// `f(X) ⊄ Q` for every `k`-subset `X` of `Q`.
    NotSubset,
}

/// Largest free set. `lower == upper` iff the search finished.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FreeSetBound {
    pub lower: usize,
    pub upper: usize,
    pub witness: Vec<usize>,
    pub nodes: u64,
}

impl FreeSetBound {
    pub fn is_exact(&self) -> bool {
        self.lower == self.upper
    }
}

/// Sets a free set may not contain, as bitmasks over the ground set.
fn forbidden_sets(f: &SetMapping, mode: FreeMode) -> Vec<u64> {
    let pts: Vec<usize> = (0..f.ground_size()).collect();
    let mut out = Vec::new();
    for_each_subset(&pts, f.k, |x| {
        let xm: u64 = x.iter().fold(0, |m, &p| m | 1 << p);
        let img = f.image(x);
        match mode {
            FreeMode::Disjoint => out.extend(img.iter().map(|&y| xm | 1 << y)),
            FreeMode::NotSubset => out.push(img.iter().fold(xm, |m, &y| m | 1 << y)),
        }
    });
    out.sort_unstable();
    out.dedup();
    out
}

struct Search {
    by_vertex: Vec<Vec<u64>>,
    best: u64,
    nodes: u64,
    budget: u64,
    open_upper: u32,
}

impl Search {
    fn run(&mut self, chosen: u64, cand: u64) {
        let bound = chosen.count_ones() + cand.count_ones();
        if bound <= self.best.count_ones() {
            return;
        }
        if self.nodes >= self.budget {
            self.open_upper = self.open_upper.max(bound);
            return;
        }
        self.nodes += 1;
        if cand == 0 {
            self.best = chosen;
            return;
        }
        let v = cand.trailing_zeros() as usize;
        let with = chosen | 1 << v;
        let mut next = cand & !(1 << v);
        for &e in &self.by_vertex[v] {
            let rest = e & !with;
            if rest.count_ones() == 1 {
                next &= !rest;
            }
        }
        self.run(with, next);
        self.run(chosen, cand & !(1 << v));
    }
}

/// Branch and bound for the largest free set. Stops after `budget` nodes and
/// reports a bracket.
pub fn free_set_oracle(f: &SetMapping, mode: FreeMode, budget: u64) -> Result<FreeSetBound> {
    let m = f.ground_size();
    guard(m <= MAX_ORACLE_GROUND, || format!("oracle ground set {m} > {MAX_ORACLE_GROUND}"))?;
    let mut by_vertex = vec![Vec::new(); m];
    for e in forbidden_sets(f, mode) {
        let mut bits = e;
        while bits != 0 {
            let v = bits.trailing_zeros() as usize;
            by_vertex[v].push(e);
            bits &= bits - 1;
        }
    }
    let all = if m == 64 { u64::MAX } else { (1u64 << m) - 1 };
    let mut s = Search {
        by_vertex,
        best: 0,
        nodes: 0,
        budget,
        open_upper: 0,
    };
    s.run(0, all);
    let lower = s.best.count_ones() as usize;
    let witness = (0..m).filter(|&v| s.best >> v & 1 == 1).collect();
    Ok(FreeSetBound {
        lower,
        upper: lower.max(s.open_upper as usize),
        witness,
        nodes: s.nodes,
    })
}

/// Whether `set` is free for `f` in the given mode, by direct evaluation.
pub fn is_free(f: &SetMapping, mode: FreeMode, set: &[usize]) -> bool {
    let mut sorted = set.to_vec();
    sorted.sort_unstable();
    let mut free = true;
    for_each_subset(&sorted, f.k, |x| {
        if !free {
            return;
        }
        let img = f.image(x);
        let inside = |p: &usize| sorted.binary_search(p).is_ok();
        free = match mode {
            FreeMode::Disjoint => !img.iter().any(inside),
            FreeMode::NotSubset => !img.iter().all(inside),
        };
    });
    free
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::setmap::mapping::{caro_map, eh_map, EhVariant};

    fn brute(f: &SetMapping, mode: FreeMode) -> usize {
        let m = f.ground_size();
        (0u64..1 << m)
            .filter(|mask| {
                let set: Vec<usize> = (0..m).filter(|&v| mask >> v & 1 == 1).collect();
                is_free(f, mode, &set)
            })
            .map(|mask| mask.count_ones() as usize)
            .max()
            .unwrap()
    }

    #[test]
    fn agrees_with_full_enumeration() {
        let cases = [
            (eh_map(2, 2, EhVariant::FullFactorial).unwrap(), FreeMode::Disjoint),
            (eh_map(3, 2, EhVariant::FullFactorial).unwrap(), FreeMode::Disjoint),
            (eh_map(4, 2, EhVariant::Lexicographic).unwrap(), FreeMode::Disjoint),
            (caro_map(3, 2).unwrap(), FreeMode::NotSubset),
            (caro_map(4, 2).unwrap(), FreeMode::NotSubset),
        ];
        for (f, mode) in &cases {
            let b = free_set_oracle(f, *mode, u64::MAX).unwrap();
            assert!(b.is_exact());
            assert_eq!(b.lower, brute(f, *mode), "{f:?}");
            assert!(is_free(f, *mode, &b.witness));
            assert!(b.lower >= f.k);
        }
    }

    #[test]
    fn caro_plane_value_within_threshold() {
        let f = caro_map(3, 2).unwrap();
        let b = free_set_oracle(&f, FreeMode::NotSubset, u64::MAX).unwrap();
        assert!(b.lower <= 6);
    }

    #[test]
    fn small_budget_gives_bracket() {
        let f = eh_map(6, 2, EhVariant::FullFactorial).unwrap();
        let b = free_set_oracle(&f, FreeMode::Disjoint, 50).unwrap();
        assert!(b.lower <= b.upper);
        assert!(b.upper <= 36);
        assert!(is_free(&f, FreeMode::Disjoint, &b.witness));
    }
}
