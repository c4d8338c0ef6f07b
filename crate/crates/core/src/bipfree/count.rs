use rayon::prelude::*;

use crate::bitset::VertexSet;
use crate::combin::{binomial, for_each_subset};
use crate::error::{guard, require, Result};
use crate::graph::{Graph, KUniformHypergraph};

/// Largest pattern count the counters will enumerate.
pub const COUNT_LIMIT: f64 = 1e9;

fn factorial(k: usize) -> f64 {
    (1..=k).map(|i| i as f64).product()
}

/// Every copy of `K_{r,r}` in a graph with `m` edges contains an `r`-matching,
/// and each `r`-matching lies in at most `2^r` copies: `2^r C(m, r) <= 2 m^r`.
pub fn krr_count_bound(m: usize, r: usize) -> f64 {
    2.0 * (m as f64).powi(r as i32)
}

/// `(k!)^r C(m, r)` for `K^{(k)}_{r,...,r}` in a `k`-graph with `m` edges.
pub fn kkrr_count_bound(m: usize, k: usize, r: usize) -> f64 {
    factorial(k).powi(r as i32) * crate::combin::binomial_f64(m as f64, r as u32)
}

/// Visits every `r`-set `A` (sorted) with at least `r` common neighbours,
/// passing `A` and its common neighbourhood. Parallel over the least vertex.
fn for_each_rich_rset<F>(g: &Graph, r: usize, f: F)
where
    F: Fn(&[usize], &VertexSet) + Sync,
{
    fn extend<F: Fn(&[usize], &VertexSet)>(
        g: &Graph,
        r: usize,
        a: &mut Vec<usize>,
        common: &VertexSet,
        f: &F,
    ) {
        if a.len() == r {
            f(a, common);
            return;
        }
        let last = *a.last().unwrap();
        for v in last + 1..g.n() {
            let next = common.intersection(g.neighbors(v));
            if next.len() >= r {
                a.push(v);
                extend(g, r, a, &next, f);
                a.pop();
            }
        }
    }
    (0..g.n()).into_par_iter().for_each(|v| {
        let common = g.neighbors(v).clone();
        if common.len() >= r {
            extend(g, r, &mut vec![v], &common, &f);
        }
    });
}

/// Number of (unlabeled) copies of `K_{r,r}`. Each copy `{A, B}` is seen
/// from both sides, so the count is half of `sum_A C(|N(A)|, r)`.
pub fn count_krr(g: &Graph, r: usize) -> Result<u128> {
    require(r >= 1, || "r must be >= 1".into())?;
    let bound = krr_count_bound(g.m(), r);
    guard(bound <= COUNT_LIMIT, || {
        format!("2 m^r = {bound:.3e} exceeds the enumeration limit {COUNT_LIMIT:.0e}")
    })?;
    let total = std::sync::atomic::AtomicU64::new(0);
    for_each_rich_rset(g, r, |_, common| {
        let c = binomial(common.len() as u64, r as u64) as u64;
        total.fetch_add(c, std::sync::atomic::Ordering::Relaxed);
    });
    Ok(total.into_inner() as u128 / 2)
}

/// A copy of `K_{r,r}`: `a` is the side holding the least vertex.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct BicliqueCopy {
    pub a: Vec<usize>,
    pub b: Vec<usize>,
}

impl BicliqueCopy {
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.a
            .iter()
            .flat_map(move |&u| self.b.iter().map(move |&v| (u.min(v), u.max(v))))
    }

    /// Lexicographically smallest edge of the copy.
    pub fn min_edge(&self) -> (usize, usize) {
        self.edges().min().unwrap()
    }
}

/// All copies of `K_{r,r}`, sorted by `(a, b)`.
pub fn list_krr(g: &Graph, r: usize) -> Result<Vec<BicliqueCopy>> {
    count_krr(g, r)?;
    let out = std::sync::Mutex::new(Vec::new());
    for_each_rich_rset(g, r, |a, common| {
        let nb = common.to_vec();
        let mut local = Vec::new();
        for_each_subset(&nb, r, |b| {
            if a[0] < b[0] {
                local.push(BicliqueCopy {
                    a: a.to_vec(),
                    b: b.to_vec(),
                });
            }
        });
        out.lock().unwrap().extend(local);
    });
    let mut v = out.into_inner().unwrap();
    v.sort_unstable();
    Ok(v)
}

/// A copy of `K^{(k)}_{r,...,r}`: `parts[i]` sorted, parts ordered by their
/// least vertex.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct KPartiteCopy {
    pub parts: Vec<Vec<usize>>,
}

impl KPartiteCopy {
    /// All `r^k` transversal edges, each sorted.
    pub fn edges(&self) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new()];
        for part in &self.parts {
            out = out
                .into_iter()
                .flat_map(|t: Vec<usize>| {
                    part.iter().map(move |&v| {
                        let mut e = t.clone();
                        e.push(v);
                        e
                    })
                })
                .collect();
        }
        for e in &mut out {
            e.sort_unstable();
        }
        out
    }

    pub fn min_edge(&self) -> Vec<usize> {
        self.edges().into_iter().min().unwrap()
    }
}

/// Enumerates copies through their min-transversal: the edge formed by the
/// least vertex of each part. For every edge `T` (sorted) the other vertices
/// of part `i` must exceed `T[i]` and swap into `T` at slot `i`.
fn enumerate_kkrr<F: Fn(KPartiteCopy) + Sync>(h: &KUniformHypergraph, r: usize, f: F) {
    let k = h.k();
    h.edges().par_iter().for_each(|t| {
        let mut cands: Vec<Vec<usize>> = Vec::with_capacity(k);
        for i in 0..k {
            let mut c = Vec::new();
            for w in t[i] + 1..h.n() {
                if t.contains(&w) {
                    continue;
                }
                let mut e = t.clone();
                e[i] = w;
                if h.contains(&e) {
                    c.push(w);
                }
            }
            if c.len() < r - 1 {
                return;
            }
            cands.push(c);
        }
        let mut parts: Vec<Vec<usize>> = Vec::with_capacity(k);
        choose_parts(h, r, t, &cands, &mut parts, &f);
    });
}

fn choose_parts<F: Fn(KPartiteCopy)>(
    h: &KUniformHypergraph,
    r: usize,
    t: &[usize],
    cands: &[Vec<usize>],
    parts: &mut Vec<Vec<usize>>,
    f: &F,
) {
    let k = t.len();
    let i = parts.len();
    if i == k {
        f(KPartiteCopy {
            parts: parts.clone(),
        });
        return;
    }
    let used: Vec<usize> = parts.iter().flatten().copied().collect();
    let avail: Vec<usize> = cands[i].iter().copied().filter(|w| !used.contains(w)).collect();
    for_each_subset(&avail, r - 1, |rest| {
        let mut part = Vec::with_capacity(r);
        part.push(t[i]);
        part.extend_from_slice(rest);
        parts.push(part);
        // every transversal of the chosen parts, completed by the minima of
        // the parts still to come, must be an edge
        let partial = KPartiteCopy {
            parts: parts.iter().cloned().chain(t[i + 1..].iter().map(|&v| vec![v])).collect(),
        };
        if partial.edges().iter().all(|e| h.contains(e)) {
            choose_parts(h, r, t, cands, parts, f);
        }
        parts.pop();
    });
}

pub fn count_kkrr(h: &KUniformHypergraph, r: usize) -> Result<u128> {
    require(r >= 1, || "r must be >= 1".into())?;
    let bound = kkrr_count_bound(h.m(), h.k(), r);
    guard(bound <= COUNT_LIMIT, || {
        format!("(k!)^r C(m, r) = {bound:.3e} exceeds the enumeration limit {COUNT_LIMIT:.0e}")
    })?;
    let total = std::sync::atomic::AtomicU64::new(0);
    enumerate_kkrr(h, r, |_| {
        total.fetch_add(1, std::sync::atomic::Ordering::Relaxed);
    });
    Ok(total.into_inner() as u128)
}

pub fn list_kkrr(h: &KUniformHypergraph, r: usize) -> Result<Vec<KPartiteCopy>> {
    count_kkrr(h, r)?;
    let out = std::sync::Mutex::new(Vec::new());
    enumerate_kkrr(h, r, |c| out.lock().unwrap().push(c));
    let mut v = out.into_inner().unwrap();
    v.sort_unstable();
    Ok(v)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generate::{complete_kpartite, gnp};
    use crate::rng::RngStream;

    fn brute_c4(g: &Graph) -> u128 {
        // 4-cycles, each counted once
        let n = g.n();
        let mut c = 0u128;
        for a in 0..n {
            for b in a + 1..n {
                let common = g.neighbors(a).intersection_len(g.neighbors(b)) as u128;
                c += common * common.saturating_sub(1) / 2;
            }
        }
        c / 2
    }

    fn graph_as_2graph(g: &Graph) -> KUniformHypergraph {
        KUniformHypergraph::from_edges(g.n(), 2, g.edges().iter().map(|&(u, v)| vec![u, v])).unwrap()
    }

    #[test]
    fn small_bicliques() {
        let k22 = complete_kpartite(&[2, 2]).unwrap();
        assert_eq!(count_krr(&k22, 2).unwrap(), 1);
        let k33 = complete_kpartite(&[3, 3]).unwrap();
        assert_eq!(count_krr(&k33, 2).unwrap(), 9);
        assert_eq!(list_krr(&k33, 2).unwrap().len(), 9);
        assert_eq!(count_krr(&k33, 3).unwrap(), 1);
        assert_eq!(count_krr(&Graph::complete(4), 2).unwrap(), 3);
    }

    #[test]
    fn agrees_with_cycle_count_and_hypergraph_counter() {
        for seed in 0..8 {
            let mut rng = RngStream::new(seed);
            let g = gnp(18, 0.4, &mut rng);
            let c = count_krr(&g, 2).unwrap();
            assert_eq!(c, brute_c4(&g));
            assert_eq!(count_kkrr(&graph_as_2graph(&g), 2).unwrap(), c);
            assert!((c as f64) <= krr_count_bound(g.m(), 2));
            for copy in list_krr(&g, 2).unwrap() {
                assert!(copy.edges().all(|(u, v)| g.has_edge(u, v)));
            }
        }
    }

    #[test]
    fn three_partite_complete() {
        // K^{(3)}_{2,2,2} inside complete 3-partite with parts 2, 3, 4
        let mut edges = Vec::new();
        for a in 0..2 {
            for b in 2..5 {
                for c in 5..9 {
                    edges.push(vec![a, b, c]);
                }
            }
        }
        let h = KUniformHypergraph::from_edges(9, 3, edges).unwrap();
        assert_eq!(count_kkrr(&h, 2).unwrap(), 1 * 3 * 6);
        assert_eq!(count_kkrr(&h, 1).unwrap(), 24);
    }

    #[test]
    fn guard_names_the_estimate() {
        let g = Graph::complete(300);
        let err = count_krr(&g, 3).unwrap_err().to_string();
        assert!(err.contains("2 m^r"), "{err}");
    }
}
