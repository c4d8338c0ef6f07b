use serde::{Deserialize, Serialize};

use crate::error::{guard, require, Result};

pub const MAX_GROUND: usize = 1_000_000;

/// Points of the grid `[side]^dim`, indexed so that index order is
/// lexicographic order of coordinate tuples. Coordinates are 0-based.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Ground {
    pub side: usize,
    pub dim: usize,
}

impl Ground {
    pub fn size(&self) -> usize {
        self.side.pow(self.dim as u32)
    }

    pub fn encode(&self, coords: &[usize]) -> usize {
        coords.iter().fold(0, |acc, &c| acc * self.side + c)
    }

    pub fn decode(&self, mut p: usize) -> Vec<usize> {
        let mut out = vec![0; self.dim];
        for slot in out.iter_mut().rev() {
            *slot = p % self.side;
            p /= self.side;
        }
        out
    }

    #[inline]
    pub fn coord(&self, p: usize, i: usize) -> usize {
        (p / self.side.pow((self.dim - 1 - i) as u32)) % self.side
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum EhVariant {
    /// All `k!` permutation tuples.
    FullFactorial,
    /// The `(k-1)!` tuples whose first coordinate is the least first
    /// coordinate in `X`.
    Lexicographic,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "family")]
pub enum Rule {
    ErdosHajnal { variant: EhVariant },
    Caro,
}

/// `f : C(M, k) -> C(M, l)` on the grid `M = [side]^dim`. Erdős–Hajnal rules
/// have `dim = k` and `f(X) ∩ X = ∅`; Caro rules have `k = l = 2` and
/// `|X ∩ f(X)| <= overlap`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SetMapping {
    pub ground: Ground,
    pub k: usize,
    pub l: usize,
    pub overlap: usize,
    pub rule: Rule,
}

pub fn eh_map(n: usize, k: usize, variant: EhVariant) -> Result<SetMapping> {
    require(n >= 2 && k >= 2, || format!("need n >= 2 and k >= 2, got n={n}, k={k}"))?;
    let m = (n as u128).checked_pow(k as u32).unwrap_or(u128::MAX);
    guard(m <= MAX_GROUND as u128, || format!("ground set {n}^{k} exceeds {MAX_GROUND}"))?;
    let fact: usize = (1..=k).product();
    let l = match variant {
        EhVariant::FullFactorial => fact,
        EhVariant::Lexicographic => fact / k,
    };
    // replacement needs l + k distinct points
    require(l + k <= m as usize, || {
        format!("ground set of {m} points cannot hold X plus {l} image points")
    })?;
    Ok(SetMapping {
        ground: Ground { side: n, dim: k },
        k,
        l,
        overlap: 0,
        rule: Rule::ErdosHajnal { variant },
    })
}

pub fn caro_map(m: usize, dim: usize) -> Result<SetMapping> {
    require(m >= 2, || format!("need m >= 2, got {m}"))?;
    require(dim == 2 || dim == 3, || format!("dimension {dim} not in {{2, 3}}"))?;
    guard(m.pow(dim as u32) <= MAX_GROUND, || format!("ground set {m}^{dim} exceeds {MAX_GROUND}"))?;
    Ok(SetMapping {
        ground: Ground { side: m, dim },
        k: 2,
        l: 2,
        overlap: if dim == 2 { 1 } else { 0 },
        rule: Rule::Caro,
    })
}

/// Advances `a` to the next permutation in lexicographic order.
fn next_permutation(a: &mut [usize]) -> bool {
    let Some(i) = (1..a.len()).rev().find(|&i| a[i - 1] < a[i]) else {
        return false;
    };
    let j = (i..a.len()).rev().find(|&j| a[j] > a[i - 1]).unwrap();
    a.swap(i - 1, j);
    a[i..].reverse();
    true
}

impl SetMapping {
    pub fn ground_size(&self) -> usize {
        self.ground.size()
    }

    /// `f(X)` as a sorted list. `x` must hold `k` distinct points in any order.
    pub fn image(&self, x: &[usize]) -> Vec<usize> {
        debug_assert_eq!(x.len(), self.k);
        let mut xs = x.to_vec();
        xs.sort_unstable();
        let mut out = match self.rule {
            Rule::ErdosHajnal { variant } => self.eh_image(&xs, variant),
            Rule::Caro => self.caro_image(xs[0], xs[1]),
        };
        out.sort_unstable();
        out
    }

    fn eh_image(&self, xs: &[usize], variant: EhVariant) -> Vec<usize> {
        let k = self.k;
        let coords: Vec<Vec<usize>> = xs.iter().map(|&p| self.ground.decode(p)).collect();
        // pi[i] is the element of X supplying coordinate i; xs is sorted, so
        // element 0 has the least first coordinate
        let mut pi: Vec<usize> = (0..k).collect();
        let mut chosen: Vec<usize> = Vec::with_capacity(self.l);
        let mut fresh = 0usize;
        loop {
            let tuple: Vec<usize> = (0..k).map(|i| coords[pi[i]][i]).collect();
            let mut pt = self.ground.encode(&tuple);
            if xs.contains(&pt) || chosen.contains(&pt) {
                while xs.contains(&fresh) || chosen.contains(&fresh) {
                    fresh += 1;
                }
                pt = fresh;
            }
            chosen.push(pt);
            let more = match variant {
                EhVariant::FullFactorial => next_permutation(&mut pi),
                EhVariant::Lexicographic => next_permutation(&mut pi[1..]),
            };
            if !more {
                return chosen;
            }
        }
    }

    fn caro_image(&self, a: usize, b: usize) -> Vec<usize> {
        let g = &self.ground;
        let (ca, cb) = (g.decode(a), g.decode(b));
        if g.dim == 2 {
            let ((x, y), (x2, y2)) = ((ca[0], ca[1]), (cb[0], cb[1]));
            if x < x2 && y != y2 {
                return vec![a, g.encode(&[x, y2])];
            }
        } else {
            let ((x, y, z), (x2, y2, z2)) = ((ca[0], ca[1], ca[2]), (cb[0], cb[1], cb[2]));
            if x < x2 && y != y2 && z != z2 {
                return vec![g.encode(&[x2, y, z]), g.encode(&[x2, y, z2])];
            }
        }
        self.fallback_pair(a, b)
    }

    /// Lexicographically smallest pair meeting the overlap contract.
    fn fallback_pair(&self, a: usize, b: usize) -> Vec<usize> {
        if self.overlap >= 1 {
            // any pair other than X itself
            if (a, b) != (0, 1) {
                vec![0, 1]
            } else {
                vec![0, 2]
            }
        } else {
            let mut free = (0..).filter(|&p| p != a && p != b);
            vec![free.next().unwrap(), free.next().unwrap()]
        }
    }

    /// Whether `f(X)` has the advertised size and overlap with `X`.
    pub fn respects_contract(&self, x: &[usize]) -> bool {
        let img = self.image(x);
        let overlap = img.iter().filter(|p| x.contains(p)).count();
        img.len() == self.l && img.windows(2).all(|w| w[0] < w[1]) && overlap <= self.overlap
    }
}
