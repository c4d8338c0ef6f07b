//! Binomial coefficients, k-subset enumeration and compact set keys.

/// `C(n, k)` saturating at `u128::MAX`.
pub fn binomial(n: u64, k: u64) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        // acc * (n - i) / (i + 1) stays integral at every step
        acc = match acc.checked_mul((n - i) as u128) {
            Some(v) => v / (i as u128 + 1),
            None => return u128::MAX,
        };
    }
    acc
}

/// `C(n, k)` as f64, for bound arithmetic on sizes too large for `u128`.
pub fn binomial_f64(n: f64, k: u32) -> f64 {
    if n < k as f64 {
        return 0.0;
    }
    (0..k).fold(1.0, |acc, i| acc * (n - i as f64) / (i as f64 + 1.0))
}

/// Lexicographic iterator over the `k`-subsets of `0..n`, yielded as sorted
/// index vectors.
pub struct Combinations {
    n: usize,
    idx: Vec<usize>,
    done: bool,
}

impl Combinations {
    pub fn new(n: usize, k: usize) -> Self {
        Combinations {
            n,
            idx: (0..k).collect(),
            done: k > n,
        }
    }
}

impl Iterator for Combinations {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        if self.done {
            return None;
        }
        let out = self.idx.clone();
        let k = self.idx.len();
        let mut i = k;
        loop {
            if i == 0 {
                self.done = true;
                break;
            }
            i -= 1;
            if self.idx[i] < self.n - k + i {
                self.idx[i] += 1;
                for j in i + 1..k {
                    self.idx[j] = self.idx[j - 1] + 1;
                }
                break;
            }
        }
        Some(out)
    }
}

/// Calls `f` on every `k`-subset of `items` in lexicographic order of
/// positions. Avoids allocating per subset.
pub fn for_each_subset<T: Copy>(items: &[T], k: usize, mut f: impl FnMut(&[T])) {
    let n = items.len();
    if k > n {
        return;
    }
    let mut idx: Vec<usize> = (0..k).collect();
    let mut buf: Vec<T> = idx.iter().map(|&i| items[i]).collect();
    loop {
        f(&buf);
        let mut i = k;
        loop {
            if i == 0 {
                return;
            }
            i -= 1;
            if idx[i] < n - k + i {
                idx[i] += 1;
                buf[i] = items[idx[i]];
                for j in i + 1..k {
                    idx[j] = idx[j - 1] + 1;
                    buf[j] = items[idx[j]];
                }
                break;
            }
        }
    }
}

/// The `rank`-th `k`-subset of `0..n` in lexicographic order.
pub fn unrank_combination(n: usize, k: usize, mut rank: u128) -> Vec<usize> {
    let mut out = Vec::with_capacity(k);
    let mut next = 0usize;
    for remaining in (1..=k).rev() {
        let mut v = next;
        loop {
            let c = binomial((n - v - 1) as u64, (remaining - 1) as u64);
            if rank < c {
                break;
            }
            rank -= c;
            v += 1;
        }
        out.push(v);
        next = v + 1;
    }
    out
}

/// A sorted vertex set of at most eight vertices, each `< 65536`, packed into
/// a single integer so it can key hash maps cheaply.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct SetKey(u128);

impl SetKey {
    pub const MAX_LEN: usize = 8;
    pub const MAX_VERTEX: usize = u16::MAX as usize - 1;

    /// `verts` must be sorted, distinct and short enough.
    pub fn from_sorted(verts: &[usize]) -> Self {
        debug_assert!(verts.len() <= Self::MAX_LEN);
        debug_assert!(verts.windows(2).all(|w| w[0] < w[1]));
        let mut key: u128 = 0;
        for &v in verts {
            debug_assert!(v <= Self::MAX_VERTEX);
            key = (key << 16) | (v as u128 + 1);
        }
        SetKey(key)
    }

    pub fn from_unsorted(verts: &[usize]) -> Self {
        let mut v = verts.to_vec();
        v.sort_unstable();
        Self::from_sorted(&v)
    }

    pub fn to_vec(self) -> Vec<usize> {
        let mut out = Vec::new();
        let mut k = self.0;
        while k != 0 {
            out.push((k & 0xffff) as usize - 1);
            k >>= 16;
        }
        out.reverse();
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn binomials() {
        assert_eq!(binomial(5, 2), 10);
        assert_eq!(binomial(20, 3), 1140);
        assert_eq!(binomial(3, 5), 0);
        assert_eq!(binomial(128, 3), 341_376);
        assert_eq!(binomial_f64(9.0, 2), 36.0);
    }

    #[test]
    fn combinations_lex_and_unrank_agree() {
        let all: Vec<_> = Combinations::new(6, 3).collect();
        assert_eq!(all.len(), 20);
        for (rank, c) in all.iter().enumerate() {
            assert_eq!(&unrank_combination(6, 3, rank as u128), c);
        }
        let mut seen = Vec::new();
        for_each_subset(&[10, 20, 30, 40], 2, |s| seen.push(s.to_vec()));
        assert_eq!(seen.len(), 6);
        assert_eq!(seen[0], vec![10, 20]);
        assert_eq!(seen[5], vec![30, 40]);
        assert_eq!(Combinations::new(3, 0).count(), 1);
    }

    #[test]
    fn set_key_round_trip() {
        let k = SetKey::from_unsorted(&[9, 0, 4]);
        assert_eq!(k.to_vec(), vec![0, 4, 9]);
        assert_ne!(SetKey::from_sorted(&[0, 1]), SetKey::from_sorted(&[1]));
    }
}
