use rand::Rng;
use serde::Serialize;

use crate::error::{guard, require, Result};
use crate::rng::RngStream;

pub const MAX_BEHREND_N: usize = 10_000_000;
/// Greedy completion and the quadratic oracle run up to this bound.
pub const EXACT_CHECK_N: usize = 100_000;
pub const MAX_ORACLE_N: usize = 40;

/// A 3-AP-free subset of `1..=n`, sorted.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ApFreeSet {
    pub n: usize,
    pub elements: Vec<usize>,
    /// Size of the shell before greedy completion.
    pub shell_size: usize,
    pub d: usize,
    pub j: usize,
}

/// Largest `d` with `(2d - 1)^j <= limit`.
fn max_digit(j: u32, limit: u128) -> usize {
    let mut d = 1usize;
    while ((2 * d + 1) as u128).checked_pow(j).is_some_and(|v| v <= limit) {
        d += 1;
    }
    d
}

/// Calls `f(value, norm)` for every vector of `{0..d-1}^j`, value in base `2d-1`.
fn for_each_vector(d: usize, j: usize, mut f: impl FnMut(usize, usize)) {
    let base = 2 * d - 1;
    let mut digits = vec![0usize; j];
    let (mut value, mut norm) = (0usize, 0usize);
    let pow: Vec<usize> = (0..j).map(|i| base.pow(i as u32)).collect();
    loop {
        f(value, norm);
        let mut i = 0;
        loop {
            if i == j {
                return;
            }
            norm -= digits[i] * digits[i];
            value -= digits[i] * pow[i];
            digits[i] += 1;
            if digits[i] < d {
                norm += digits[i] * digits[i];
                value += digits[i] * pow[i];
                break;
            }
            digits[i] = 0;
            i += 1;
        }
    }
}

/// The shell construction: vectors with digits below `d` on the most
/// populous sphere, read in base `2d - 1` (no carries, so a 3-AP of values
/// is a 3-AP of vectors, impossible on a sphere). `(d, j)` is grid-searched.
/// For `n <= EXACT_CHECK_N` the shell is then completed greedily.
pub fn behrend_set(n: usize) -> Result<ApFreeSet> {
    require(n >= 1, || "n must be >= 1".into())?;
    guard(n <= MAX_BEHREND_N, || format!("behrend_set envelope is n <= {MAX_BEHREND_N}, got {n}"))?;
    // values v + 1 with v <= ((2d-1)^j - 1) / 2 fit in 1..=n
    let limit = 2 * n as u128 - 1;
    // j = 1 shells are single points: start from {1}
    let mut best = (1usize, 1usize, 1usize, 0usize); // (size, d, j, norm)
    for j in 2..=usize::BITS - n.leading_zeros() {
        let d = max_digit(j, limit);
        let mut counts = vec![0usize; j as usize * (d - 1) * (d - 1) + 1];
        for_each_vector(d, j as usize, |_, s| counts[s] += 1);
        let (norm, &size) = counts.iter().enumerate().max_by_key(|&(s, &c)| (c, std::cmp::Reverse(s))).unwrap();
        if size > best.0 {
            best = (size, d, j as usize, norm);
        }
    }
    let (_, d, j, norm) = best;
    let mut elements = Vec::new();
    for_each_vector(d, j, |v, s| {
        if s == norm {
            elements.push(v + 1);
        }
    });
    elements.sort_unstable();
    let shell_size = elements.len();
    if n <= EXACT_CHECK_N {
        elements = greedy_complete(n, &elements);
    }
    debug_assert!(elements.last().is_none_or(|&x| x <= n));
    Ok(ApFreeSet {
        n,
        elements,
        shell_size,
        d,
        j,
    })
}

/// Scans `1..=n` and adds every value that closes no 3-AP.
pub fn greedy_complete(n: usize, seed: &[usize]) -> Vec<usize> {
    let mut member = vec![false; 2 * n + 1];
    let mut set: Vec<usize> = seed.to_vec();
    for &x in seed {
        member[x] = true;
    }
    for x in 1..=n {
        if member[x] {
            continue;
        }
        // x as an endpoint (y the middle) or as the middle
        let blocked = set.iter().any(|&y| (2 * y > x && member[2 * y - x]) || (2 * x > y && member[2 * x - y]));
        if !blocked {
            member[x] = true;
            set.push(x);
        }
    }
    set.sort_unstable();
    set
}

/// First 3-AP `(x, y, z)` with `x < y < z`, by scanning all pairs.
pub fn find_three_ap(set: &[usize]) -> Option<(usize, usize, usize)> {
    let max = set.iter().copied().max()?;
    let mut member = vec![false; max + 1];
    for &x in set {
        member[x] = true;
    }
    let mut s = set.to_vec();
    s.sort_unstable();
    for (i, &x) in s.iter().enumerate() {
        for &z in &s[i + 1..] {
            if (x + z) % 2 == 0 && member[(x + z) / 2] && (x + z) / 2 != x {
                return Some((x, (x + z) / 2, z));
            }
        }
    }
    None
}

/// Exact check when small, `samples` random pairs otherwise. Returns
/// whether the check was exhaustive.
pub fn check_ap_free(set: &[usize], samples: usize, rng: &mut RngStream) -> std::result::Result<bool, (usize, usize, usize)> {
    if set.len() <= EXACT_CHECK_N / 10 || set.iter().max().is_none_or(|&m| m <= EXACT_CHECK_N) {
        return find_three_ap(set).map_or(Ok(true), Err);
    }
    let max = *set.iter().max().unwrap();
    let mut member = vec![false; max + 1];
    for &x in set {
        member[x] = true;
    }
    for _ in 0..samples {
        let (a, b) = (set[rng.gen_range(0..set.len())], set[rng.gen_range(0..set.len())]);
        let (x, z) = (a.min(b), a.max(b));
        if x != z && (x + z) % 2 == 0 && member[(x + z) / 2] {
            return Err((x, (x + z) / 2, z));
        }
    }
    Ok(false)
}

/// Maximum 3-AP-free subset of `1..=n` by branch and bound.
pub fn max_ap_free(n: usize) -> Result<Vec<usize>> {
    guard(n <= MAX_ORACLE_N, || format!("oracle envelope is n <= {MAX_ORACLE_N}, got {n}"))?;
    fn go(x: usize, n: usize, cur: &mut Vec<usize>, member: &mut [bool], best: &mut Vec<usize>) {
        if cur.len() > best.len() {
            *best = cur.clone();
        }
        if x > n || cur.len() + (n - x + 1) <= best.len() {
            return;
        }
        // x is the largest so far: only as the top of an AP
        if !cur.iter().any(|&y| 2 * y > x && member[2 * y - x]) {
            cur.push(x);
            member[x] = true;
            go(x + 1, n, cur, member, best);
            member[x] = false;
            cur.pop();
        }
        go(x + 1, n, cur, member, best);
    }
    let mut best = Vec::new();
    go(1, n, &mut Vec::new(), &mut vec![false; n + 1], &mut best);
    Ok(best)
}
