use rand::Rng;
use serde::Serialize;

use crate::combin::{binomial, Combinations};
use crate::error::{guard, require, Error, Result};
use crate::graph::KUniformHypergraph;
use crate::rng::RngStream;
use crate::scalar::{self, Scalar};

/// A `k`-graph whose vertex set is split into consecutive blocks `U_1..U_k`
/// with every edge meeting each block exactly once.
#[derive(Clone, Debug)]
pub struct KPartiteGraph {
    sizes: Vec<usize>,
    hyper: KUniformHypergraph,
}

impl KPartiteGraph {
    pub fn new(sizes: Vec<usize>, hyper: KUniformHypergraph) -> Result<Self> {
        let k = sizes.len();
        if k != hyper.k() || sizes.iter().sum::<usize>() != hyper.n() {
            return Err(Error::InvalidGraph(format!(
                "parts {sizes:?} do not fit a {}-graph on {} vertices",
                hyper.k(),
                hyper.n()
            )));
        }
        let g = KPartiteGraph { sizes, hyper };
        for e in g.hyper.edges() {
            // sorted edge, so block indices must be 0..k in order
            if e.iter().enumerate().any(|(i, &v)| g.part_of(v) != i) {
                return Err(Error::InvalidGraph(format!("edge {e:?} is not a transversal")));
            }
        }
        Ok(g)
    }

    pub fn complete(sizes: &[usize]) -> Result<Self> {
        require(!sizes.is_empty() && sizes.iter().all(|&s| s >= 1), || {
            format!("part sizes {sizes:?} must be nonempty and >= 1")
        })?;
        let total: u128 = sizes.iter().map(|&s| s as u128).product();
        guard(total <= 10_000_000, || format!("{total} edges is too many"))?;
        let offsets = offsets(sizes);
        let mut edges = vec![Vec::new()];
        for (i, &s) in sizes.iter().enumerate() {
            let o = offsets[i];
            edges = edges
                .into_iter()
                .flat_map(|e: Vec<usize>| {
                    (0..s).map(move |j| {
                        let mut e = e.clone();
                        e.push(o + j);
                        e
                    })
                })
                .collect();
        }
        let n = sizes.iter().sum();
        Self::new(sizes.to_vec(), KUniformHypergraph::from_edges(n, sizes.len(), edges)?)
    }

    /// Parts of sizes `n^{r^{i-1}}`, `i = 1..k`.
    pub fn chain_sizes(k: usize, n: usize, r: usize) -> Vec<usize> {
        (0..k).map(|i| n.pow(r.pow(i as u32) as u32)).collect()
    }

    /// Keeps each edge independently with probability `p`.
    pub fn random_subgraph(&self, p: f64, rng: &mut RngStream) -> KPartiteGraph {
        KPartiteGraph {
            sizes: self.sizes.clone(),
            hyper: self.hyper.filter_edges(|_| rng.gen::<f64>() < p),
        }
    }

    pub fn sizes(&self) -> &[usize] {
        &self.sizes
    }

    pub fn hyper(&self) -> &KUniformHypergraph {
        &self.hyper
    }

    pub fn part_of(&self, v: usize) -> usize {
        let mut acc = 0;
        for (i, &s) in self.sizes.iter().enumerate() {
            acc += s;
            if v < acc {
                return i;
            }
        }
        self.sizes.len()
    }

    pub fn part(&self, i: usize) -> std::ops::Range<usize> {
        let o = offsets(&self.sizes)[i];
        o..o + self.sizes[i]
    }
}

fn offsets(sizes: &[usize]) -> Vec<usize> {
    sizes
        .iter()
        .scan(0, |acc, &s| {
            let o = *acc;
            *acc += s;
            Some(o)
        })
        .collect()
}

/// Copies of `K^{(k)}_{r,...,r}` in a `k`-partite `k`-graph. Every copy puts
/// one part inside each block, so the count is `sum_S C(d(S), r)` over
/// choices `S` of `r`-sets in the first `k - 1` blocks, `d(S)` counting the
/// last-block vertices completing every transversal of `S`.
pub fn count_kpartite(g: &KPartiteGraph, r: usize) -> Result<u128> {
    let k = g.sizes.len();
    require(k >= 2 && r >= 1, || "need k >= 2 and r >= 1".into())?;
    let choices: u128 = g.sizes[..k - 1]
        .iter()
        .map(|&s| binomial(s as u64, r as u64))
        .product();
    guard(choices <= 10_000_000, || format!("{choices} part choices exceed the enumeration limit"))?;
    let subsets: Vec<Vec<Vec<usize>>> = (0..k - 1)
        .map(|i| {
            let base = g.part(i).start;
            Combinations::new(g.sizes[i], r)
                .map(|c| c.into_iter().map(|j| base + j).collect())
                .collect()
        })
        .collect();
    let last = g.part(k - 1);
    let mut total = 0u128;
    let mut idx = vec![0usize; k - 1];
    if subsets.iter().any(|s| s.is_empty()) {
        return Ok(0);
    }
    loop {
        let chosen: Vec<&Vec<usize>> = (0..k - 1).map(|i| &subsets[i][idx[i]]).collect();
        let transversals = chosen.iter().fold(vec![Vec::new()], |acc, part| {
            acc.into_iter()
                .flat_map(|t: Vec<usize>| {
                    part.iter().map(move |&v| {
                        let mut t = t.clone();
                        t.push(v);
                        t
                    })
                })
                .collect()
        });
        let d = last
            .clone()
            .filter(|&x| {
                transversals.iter().all(|t| {
                    let mut e = t.clone();
                    e.push(x);
                    g.hyper.contains(&e)
                })
            })
            .count();
        total += binomial(d as u64, r as u64);
        // odometer
        let mut i = 0;
        loop {
            if i == k - 1 {
                return Ok(total);
            }
            idx[i] += 1;
            if idx[i] < subsets[i].len() {
                break;
            }
            idx[i] = 0;
            i += 1;
        }
    }
}

/// `a = e(G) / prod_{i>=2} |U_i|` and the lower bound
/// `C(a - k + 1, r) prod_{i<=k-1} C(|U_i|, r)` with the convex binomial.
pub fn kpartite_bound<T: Scalar>(edges: usize, sizes: &[usize], r: usize) -> (T, T) {
    let k = sizes.len();
    let denom = sizes[1..].iter().fold(T::one(), |acc, &s| acc * T::from_count(s));
    let a = T::from_count(edges) / denom;
    let shifted = a.clone() - T::from_count(k - 1);
    let head = sizes[..k - 1]
        .iter()
        .fold(T::one(), |acc, &s| acc * scalar::binomial::<T>(s, r));
    let bound = scalar::extended_binomial(&shifted, r as u32) * head;
    (a, bound)
}

#[derive(Clone, Debug, Serialize)]
pub struct KPartiteCheck {
    pub count: u128,
    pub a: f64,
    pub bound: f64,
    pub pass: bool,
}

/// Exact copy count against the lower bound, compared in exact arithmetic.
pub fn kpartite_count_check(g: &KPartiteGraph, r: usize) -> Result<KPartiteCheck> {
    let count = count_kpartite(g, r)?;
    let (a, bound): (crate::Exact, crate::Exact) = kpartite_bound(g.hyper.m(), &g.sizes, r);
    let exact_count = crate::Exact::from_integer(count.into());
    Ok(KPartiteCheck {
        count,
        a: a.to_real(),
        bound: bound.to_real(),
        pass: exact_count >= bound,
    })
}
