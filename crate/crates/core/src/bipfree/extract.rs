use std::collections::HashSet;

use rand::Rng;

use super::count::{count_kkrr, count_krr, list_kkrr, list_krr};
use crate::combin::SetKey;
use crate::error::{require, Error, Result};
use crate::graph::{Graph, KUniformHypergraph};
use crate::rng::RngStream;

pub const DEFAULT_RETRY_CAP: usize = 1000;

/// A pattern-free subgraph together with the guarantee it was held to.
#[derive(Clone, Debug)]
pub struct Extraction<G> {
    pub subgraph: G,
    pub trials_used: usize,
    pub target: usize,
    pub probability: f64,
    /// Input was already pattern-free and was returned as is.
    pub short_circuit: bool,
}

/// Smallest `t >= 0` with `(c t)^a >= m^b`, i.e. `t = ceil(m^{b/a} / c)`.
pub fn ceil_scaled_root(m: usize, b: u32, a: u32, c: u64) -> usize {
    let lhs = |t: u64| -> Option<u128> { (c as u128 * t as u128).checked_pow(a) };
    let rhs = (m as u128).checked_pow(b);
    let approx = ((m as f64).powf(b as f64 / a as f64) / c as f64).ceil() as u64;
    match rhs {
        Some(rhs) => {
            let mut t = approx.saturating_sub(2);
            while lhs(t).map_or(false, |v| v < rhs) {
                t += 1;
            }
            t as usize
        }
        None => approx as usize,
    }
}

/// `ceil(m^{r/(r+1)} / 4)`.
pub fn graph_target(m: usize, r: usize) -> usize {
    ceil_scaled_root(m, r as u32, r as u32 + 1, 4)
}

/// `q = (r^k - 1) / (r - 1)`, the number of vertices of the part-size chain.
pub fn q_of(k: usize, r: usize) -> usize {
    (0..k).map(|i| r.pow(i as u32)).sum()
}

/// `ceil(m^{(q-1)/q} / (2 k!))`.
pub fn hyper_target(m: usize, k: usize, r: usize) -> usize {
    let q = q_of(k, r) as u32;
    let fact: u64 = (1..=k as u64).product();
    ceil_scaled_root(m, q - 1, q, 2 * fact)
}

/// Keeps each edge with probability `p`, then deletes the smallest edge of
/// every copy still intact, in copy order.
fn sample_then_delete_graph(g: &Graph, r: usize, p: f64, rng: &mut RngStream) -> Result<Graph> {
    let sample = g.filter_edges(|_, _| rng.gen::<f64>() < p);
    let mut removed: HashSet<(usize, usize)> = HashSet::new();
    for copy in list_krr(&sample, r)? {
        if copy.edges().all(|e| !removed.contains(&e)) {
            removed.insert(copy.min_edge());
        }
    }
    Ok(sample.filter_edges(|u, v| !removed.contains(&(u, v))))
}

/// Las Vegas extraction of a `K_{r,r}`-free subgraph with at least
/// `ceil(m^{r/(r+1)} / 4)` edges.
pub fn extract_free(
    g: &Graph,
    r: usize,
    rng: &mut RngStream,
    retry_cap: usize,
) -> Result<Extraction<Graph>> {
    require(r >= 2, || format!("pattern K_{{r,r}} needs r >= 2, got {r}"))?;
    let m = g.m();
    let target = graph_target(m, r);
    let p = 0.5 * (m as f64).powf(-1.0 / (r as f64 + 1.0));
    if count_krr(g, r)? == 0 {
        return Ok(Extraction {
            subgraph: g.clone(),
            trials_used: 0,
            target,
            probability: p,
            short_circuit: true,
        });
    }
    require(m >= 2, || "need at least two edges".into())?;
    let mut best = 0;
    for trial in 1..=retry_cap {
        let mut stream = rng.fork();
        let h = sample_then_delete_graph(g, r, p, &mut stream)?;
        if h.m() >= target {
            if count_krr(&h, r)? != 0 {
                return Err(Error::Precondition("extraction left a copy behind".into()));
            }
            return Ok(Extraction {
                subgraph: h,
                trials_used: trial,
                target,
                probability: p,
                short_circuit: false,
            });
        }
        best = best.max(h.m());
    }
    Err(Error::RetryCap {
        cap: retry_cap,
        report: format!("best pattern-free subgraph has {best} edges, target {target}"),
    })
}

/// Hypergraph analogue: `K^{(k)}_{r,...,r}`-free with at least
/// `ceil(m^{(q-1)/q} / (2 k!))` edges, sampling at `p = m^{-1/q} / k!`.
pub fn extract_free_hyper(
    h: &KUniformHypergraph,
    r: usize,
    rng: &mut RngStream,
    retry_cap: usize,
) -> Result<Extraction<KUniformHypergraph>> {
    require(r >= 2, || format!("pattern needs r >= 2, got {r}"))?;
    let (m, k) = (h.m(), h.k());
    let target = hyper_target(m, k, r);
    let fact: f64 = (1..=k).map(|i| i as f64).product();
    let p = (m as f64).powf(-1.0 / q_of(k, r) as f64) / fact;
    if count_kkrr(h, r)? == 0 {
        return Ok(Extraction {
            subgraph: h.clone(),
            trials_used: 0,
            target,
            probability: p,
            short_circuit: true,
        });
    }
    require(m >= 2, || "need at least two edges".into())?;
    let mut best = 0;
    for trial in 1..=retry_cap {
        let mut stream = rng.fork();
        let sample = h.filter_edges(|_| stream.gen::<f64>() < p);
        let mut removed: HashSet<SetKey> = HashSet::new();
        for copy in list_kkrr(&sample, r)? {
            let edges = copy.edges();
            if edges.iter().all(|e| !removed.contains(&SetKey::from_sorted(e))) {
                removed.insert(SetKey::from_sorted(&copy.min_edge()));
            }
        }
        let out = sample.filter_edges(|e| !removed.contains(&SetKey::from_sorted(e)));
        if out.m() >= target {
            if count_kkrr(&out, r)? != 0 {
                return Err(Error::Precondition("extraction left a copy behind".into()));
            }
            return Ok(Extraction {
                subgraph: out,
                trials_used: trial,
                target,
                probability: p,
                short_circuit: false,
            });
        }
        best = best.max(out.m());
    }
    Err(Error::RetryCap {
        cap: retry_cap,
        report: format!("best pattern-free subgraph has {best} edges, target {target}"),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generate::{complete_kpartite, gnp};

    #[test]
    fn targets() {
        assert_eq!(graph_target(9, 2), 2);
        assert_eq!(graph_target(100, 2), 6);
        assert_eq!(graph_target(64, 2), 4);
        assert_eq!(graph_target(1, 2), 1);
        assert_eq!(q_of(3, 2), 7);
        // 128^{6/7} / 12 = 64 / 12
        assert_eq!(hyper_target(128, 3, 2), 6);
    }

    #[test]
    fn short_circuit_on_free_input() {
        let g = Graph::from_edges(2, [(0, 1)]).unwrap();
        let e = extract_free(&g, 2, &mut RngStream::new(0), 10).unwrap();
        assert!(e.short_circuit);
        assert_eq!(e.subgraph, g);
    }

    #[test]
    fn k33_and_random() {
        let k33 = complete_kpartite(&[3, 3]).unwrap();
        let mut rng = RngStream::new(4);
        let e = extract_free(&k33, 2, &mut rng, DEFAULT_RETRY_CAP).unwrap();
        assert!(e.subgraph.m() >= 2);
        assert_eq!(count_krr(&e.subgraph, 2).unwrap(), 0);
        assert!(e.subgraph.edges().iter().all(|&(u, v)| k33.has_edge(u, v)));
        let g = gnp(60, 0.5, &mut rng);
        let e = extract_free(&g, 2, &mut rng, DEFAULT_RETRY_CAP).unwrap();
        assert!(e.subgraph.m() >= graph_target(g.m(), 2));
        assert_eq!(count_krr(&e.subgraph, 2).unwrap(), 0);
    }

    #[test]
    fn hypergraph_extraction() {
        let mut edges = Vec::new();
        for a in 0..2 {
            for b in 2..6 {
                for c in 6..22 {
                    edges.push(vec![a, b, c]);
                }
            }
        }
        let h = KUniformHypergraph::from_edges(22, 3, edges).unwrap();
        let e = extract_free_hyper(&h, 2, &mut RngStream::new(9), DEFAULT_RETRY_CAP).unwrap();
        assert!(e.subgraph.m() >= e.target);
        assert_eq!(count_kkrr(&e.subgraph, 2).unwrap(), 0);
    }
}
