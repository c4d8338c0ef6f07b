use serde::{Deserialize, Serialize};

use super::mapping::{EhVariant, Ground, Rule, SetMapping};
use crate::combin::{binomial, for_each_subset};
use crate::error::{require, Result};

/// Exhaustive fallback envelope: number of candidate `k`-subsets.
const EXHAUSTIVE_LIMIT: u128 = 1_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Found {
    /// The deletion argument produced the witness.
    Deletion,
    /// The deletion argument stalled and a direct scan found one.
    Scan,
}

/// `X ⊆ P` with `f(X)` hitting `P` (disjoint mode, `witness` is the hit
/// point) or `X ⊆ Q` with `f(X) ⊆ Q` (Caro mode, `witness` is `f(X)`).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Violation {
    pub x: Vec<usize>,
    pub witness: Vec<usize>,
    pub found: Found,
}

impl Violation {
    /// Re-evaluates the rule; never trusts the producing procedure.
    pub fn verify(&self, f: &SetMapping, set: &[usize]) -> bool {
        let mut sorted = set.to_vec();
        sorted.sort_unstable();
        let inside = |p: &usize| sorted.binary_search(p).is_ok();
        let mut x = self.x.clone();
        x.sort_unstable();
        if x.len() != f.k || x.windows(2).any(|w| w[0] == w[1]) || !x.iter().all(inside) {
            return false;
        }
        let img = f.image(&x);
        match f.rule {
            Rule::ErdosHajnal { .. } => {
                self.witness.len() == 1 && inside(&self.witness[0]) && img.contains(&self.witness[0])
            }
            Rule::Caro => self.witness == img && img.iter().all(inside),
        }
    }
}

fn validate(f: &SetMapping, set: &[usize]) -> Result<Vec<usize>> {
    let m = f.ground_size();
    let mut s = set.to_vec();
    s.sort_unstable();
    s.dedup();
    require(s.len() == set.len() && s.last().map_or(true, |&p| p < m), || {
        "point set must be distinct points of the ground set".into()
    })?;
    Ok(s)
}

/// Repeatedly deletes the points on a hyperplane `{coordinate i = v}` that
/// holds between 1 and `k` points, lowest `(i, v)` first. Returns survivors.
fn sparse_hyperplane_deletion(g: &Ground, k: usize, pts: &[usize]) -> Vec<usize> {
    let (side, dim) = (g.side, g.dim);
    let mut alive = pts.to_vec();
    let mut count = vec![0usize; dim * side];
    for &p in &alive {
        for i in 0..dim {
            count[i * side + g.coord(p, i)] += 1;
        }
    }
    while let Some(h) = count.iter().position(|&c| c >= 1 && c <= k) {
        let (i, v) = (h / side, h % side);
        alive.retain(|&p| {
            if g.coord(p, i) != v {
                return true;
            }
            for j in 0..dim {
                count[j * side + g.coord(p, j)] -= 1;
            }
            false
        });
    }
    alive
}

/// Finds `X ⊆ P` whose image meets `P`. Guaranteed when `|P| > k^2 n`.
pub fn eh_violator(f: &SetMapping, p: &[usize]) -> Result<Option<Violation>> {
    let Rule::ErdosHajnal { variant } = f.rule else {
        return Err(crate::Error::Precondition("eh_violator needs an Erdős–Hajnal mapping".into()));
    };
    let p = validate(f, p)?;
    let (g, k) = (f.ground, f.k);
    let survivors = sparse_hyperplane_deletion(&g, k, &p);
    if let Some(&apex) = survivors.first() {
        // apex is the lexicographically least survivor; each hyperplane
        // through it keeps more than k survivors
        let mut picks: Vec<usize> = Vec::with_capacity(k);
        for i in 0..k {
            let ci = g.coord(apex, i);
            let pick = survivors
                .iter()
                .copied()
                .find(|&q| q != apex && g.coord(q, i) == ci && !picks.contains(&q))
                .expect("hyperplane through a survivor holds more than k survivors");
            picks.push(pick);
        }
        if variant == EhVariant::Lexicographic {
            debug_assert!(picks.iter().all(|&q| q >= picks[0]));
        }
        let v = Violation {
            x: picks,
            witness: vec![apex],
            found: Found::Deletion,
        };
        debug_assert!(v.verify(f, &p));
        return Ok(Some(v));
    }
    Ok(scan_eh(f, &p))
}

fn scan_eh(f: &SetMapping, p: &[usize]) -> Option<Violation> {
    if binomial(p.len() as u64, f.k as u64) > EXHAUSTIVE_LIMIT {
        return None;
    }
    let mut out = None;
    for_each_subset(p, f.k, |x| {
        if out.is_some() {
            return;
        }
        if let Some(&w) = f.image(x).iter().find(|q| p.binary_search(q).is_ok()) {
            out = Some(Violation {
                x: x.to_vec(),
                witness: vec![w],
                found: Found::Scan,
            });
        }
    });
    out
}

/// Finds `X ⊆ Q` with `f(X) ⊆ Q`. Guaranteed when `|Q| >= 2m + 1` (plane) or
/// `|Q| >= 3m^2 + 1` (space).
pub fn caro_violator(f: &SetMapping, q: &[usize]) -> Result<Option<Violation>> {
    require(f.rule == Rule::Caro, || "caro_violator needs a Caro mapping".into())?;
    let q = validate(f, q)?;
    let found = if f.ground.dim == 2 {
        caro_plane(f, &q)
    } else {
        caro_space(f, &q)
    };
    if let Some(x) = found {
        let v = Violation {
            witness: f.image(&x),
            x,
            found: Found::Deletion,
        };
        debug_assert!(v.verify(f, &q));
        return Ok(Some(v));
    }
    Ok(scan_caro(f, &q))
}

/// Deletes the top point of every vertical and the rightmost point of every
/// horizontal line at once. A survivor `(x, y')` sits below some `(x, y)` and
/// left of some `(x', y')`, and that pair maps into `Q`.
fn caro_plane(f: &SetMapping, q: &[usize]) -> Option<Vec<usize>> {
    let g = &f.ground;
    let m = g.side;
    let mut top = vec![None::<usize>; m];
    let mut right = vec![None::<usize>; m];
    for &p in q {
        let (x, y) = (g.coord(p, 0), g.coord(p, 1));
        top[x] = Some(top[x].map_or(y, |t: usize| t.max(y)));
        right[y] = Some(right[y].map_or(x, |r: usize| r.max(x)));
    }
    let survivor = q.iter().copied().find(|&p| {
        let (x, y) = (g.coord(p, 0), g.coord(p, 1));
        top[x] != Some(y) && right[y] != Some(x)
    })?;
    let (x, y2) = (g.coord(survivor, 0), g.coord(survivor, 1));
    let a = g.encode(&[x, top[x]?]);
    let b = g.encode(&[right[y2]?, y2]);
    Some(vec![a, b])
}

/// Deletes the least-`x` point of every line parallel to the first axis and
/// the greatest-`y` point of every line parallel to the second. Two
/// survivors share `(x', y)`; the deleted extremes complete the pair.
fn caro_space(f: &SetMapping, q: &[usize]) -> Option<Vec<usize>> {
    let g = &f.ground;
    let m = g.side;
    let idx = |a: usize, b: usize| a * m + b;
    let mut low_x = vec![usize::MAX; m * m]; // by (y, z)
    let mut high_y = vec![None::<usize>; m * m]; // by (x, z)
    for &p in q {
        let (x, y, z) = (g.coord(p, 0), g.coord(p, 1), g.coord(p, 2));
        low_x[idx(y, z)] = low_x[idx(y, z)].min(x);
        high_y[idx(x, z)] = Some(high_y[idx(x, z)].map_or(y, |h| h.max(y)));
    }
    let mut first_z = vec![None::<usize>; m * m]; // by (x', y)
    for &p in q {
        let (x, y, z) = (g.coord(p, 0), g.coord(p, 1), g.coord(p, 2));
        if low_x[idx(y, z)] == x || high_y[idx(x, z)] == Some(y) {
            continue;
        }
        // q is sorted, so for fixed (x, y) the survivors come in increasing z
        match first_z[idx(x, y)] {
            None => first_z[idx(x, y)] = Some(z),
            Some(z0) => {
                let lo = g.encode(&[low_x[idx(y, z0)], y, z0]);
                let hi = g.encode(&[x, high_y[idx(x, z)]?, z]);
                return Some(vec![lo, hi]);
            }
        }
    }
    None
}

fn scan_caro(f: &SetMapping, q: &[usize]) -> Option<Violation> {
    if binomial(q.len() as u64, 2) > EXHAUSTIVE_LIMIT {
        return None;
    }
    let mut out = None;
    for_each_subset(q, 2, |x| {
        if out.is_some() {
            return;
        }
        let img = f.image(x);
        if img.iter().all(|p| q.binary_search(p).is_ok()) {
            out = Some(Violation {
                x: x.to_vec(),
                witness: img,
                found: Found::Scan,
            });
        }
    });
    out
}

/// The size above which a violation is guaranteed.
pub fn guarantee_threshold(f: &SetMapping) -> usize {
    let n = f.ground.side;
    match f.rule {
        Rule::ErdosHajnal { .. } => f.k * f.k * n,
        Rule::Caro if f.ground.dim == 2 => 2 * n,
        Rule::Caro => 3 * n * n,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::setmap::mapping::{caro_map, eh_map};
    use crate::rng::RngStream;
    use rand::seq::index::sample;

    #[test]
    fn empty_and_tiny_sets() {
        let f = eh_map(6, 2, EhVariant::FullFactorial).unwrap();
        assert!(eh_violator(&f, &[]).unwrap().is_none());
        let c = caro_map(3, 2).unwrap();
        assert!(caro_violator(&c, &[4]).unwrap().is_none());
    }

    #[test]
    fn eh_above_threshold_always_violates() {
        for variant in [EhVariant::FullFactorial, EhVariant::Lexicographic] {
            let f = eh_map(6, 2, variant).unwrap();
            let mut rng = RngStream::new(11);
            for _ in 0..300 {
                let p = sample(&mut rng, 36, 25).into_vec();
                let v = eh_violator(&f, &p).unwrap().expect("above k^2 n");
                assert!(v.verify(&f, &p));
                assert_eq!(v.found, Found::Deletion);
                // p_i shares coordinate i with the witness
                for (i, &pi) in v.x.iter().enumerate() {
                    assert_eq!(f.ground.coord(pi, i), f.ground.coord(v.witness[0], i));
                }
            }
        }
        let f = eh_map(4, 3, EhVariant::Lexicographic).unwrap();
        let mut rng = RngStream::new(3);
        for _ in 0..100 {
            let p = sample(&mut rng, 64, 37).into_vec();
            assert!(eh_violator(&f, &p).unwrap().unwrap().verify(&f, &p));
        }
    }

    #[test]
    fn caro_plane_all_sets_of_seven() {
        let f = caro_map(3, 2).unwrap();
        let pts: Vec<usize> = (0..9).collect();
        let mut n = 0;
        for_each_subset(&pts, 7, |q| {
            let v = caro_violator(&f, q).unwrap().unwrap();
            assert_eq!(v.found, Found::Deletion);
            assert!(v.verify(&f, q));
            n += 1;
        });
        assert_eq!(n, 36);
    }

    #[test]
    fn caro_space_above_threshold() {
        let f = caro_map(4, 3).unwrap();
        let mut rng = RngStream::new(5);
        for _ in 0..200 {
            let q = sample(&mut rng, 64, 49).into_vec();
            let v = caro_violator(&f, &q).unwrap().unwrap();
            assert_eq!(v.found, Found::Deletion);
            assert!(v.verify(&f, &q));
        }
    }

    #[test]
    fn verify_rejects_tampering() {
        let f = caro_map(3, 2).unwrap();
        let q: Vec<usize> = (0..7).collect();
        let mut v = caro_violator(&f, &q).unwrap().unwrap();
        assert!(!v.verify(&f, &q[..1]));
        v.witness[0] = 8;
        assert!(!v.verify(&f, &q));
    }
}
