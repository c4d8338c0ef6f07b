use serde::Serialize;

use super::drc::{drc_draw, DrcParams};
use super::hyper::{DownClosedHypergraph, TargetHypergraph};
use super::resample::{resample_embed, DEFAULT_ROUND_CAP};
use crate::coloring::EdgeColoring;
use crate::error::{require, Error, Result};
use crate::graph::{BipartiteGraph, Graph};
use crate::partition::random_equitable_bipartition;
use crate::rng::RngStream;

/// Outer attempts of the pipeline after the bipartition is fixed.
pub const PIPELINE_ATTEMPTS: usize = 32;

/// Target over the left side of `h` (edges = right neighbourhoods, merged
/// as sets) and the down-closed hypergraph over indices into `u` whose top
/// level is the `k`-sets with at least `n` common neighbours in `g`.
#[derive(Clone, Debug)]
pub struct AuxPair {
    pub target: TargetHypergraph,
    pub host: DownClosedHypergraph,
    pub k: usize,
}

pub fn build_aux_pair(h: &BipartiteGraph, u: &[usize], g: &Graph, n: usize) -> Result<AuxPair> {
    let k = (0..h.right_len()).map(|w| h.right_neighbors(w).len()).max().unwrap_or(0).max(1);
    let target = TargetHypergraph::new(
        h.left_len(),
        (0..h.right_len()).map(|w| h.right_neighbors(w).to_vec()).filter(|e| !e.is_empty()),
    )?;
    let host = DownClosedHypergraph::from_top_fn(u.len(), k, |s| {
        let verts: Vec<usize> = s.iter().map(|&i| u[i]).collect();
        g.common_neighbors(&verts).len() >= n
    })?;
    Ok(AuxPair { target, host, k })
}

#[derive(Clone, Debug, Serialize)]
pub struct PipelineOutcome {
    pub color: u8,
    /// `map[v]` for `v` indexed as in `h.to_graph()` (left side first).
    pub map: Vec<usize>,
    /// The right side of `h` was the one embedded through the hypergraph.
    pub transposed: bool,
    pub eps: f64,
    pub b: f64,
    pub k: usize,
    pub max_degree: usize,
    pub u_size: usize,
    pub drc_attempts: usize,
    pub embed_rounds: usize,
    pub attempts: usize,
}

/// Injective and every edge of `h` lands on an edge of colour `color`.
pub fn verify_monochromatic(coloring: &EdgeColoring, h: &BipartiteGraph, map: &[usize], color: u8) -> bool {
    let l = h.left_len();
    if map.len() != l + h.right_len() || map.iter().any(|&x| x >= coloring.graph().n()) {
        return false;
    }
    let mut sorted = map.to_vec();
    sorted.sort_unstable();
    if sorted.windows(2).any(|w| w[0] == w[1]) {
        return false;
    }
    h.edges()
        .iter()
        .all(|&(a, b)| coloring.color(map[a], map[l + b]) == Some(color))
}

fn side_degrees(h: &BipartiteGraph) -> (usize, usize) {
    let delta = (0..h.left_len()).map(|a| h.left_neighbors(a).len()).max().unwrap_or(0);
    let k = (0..h.right_len()).map(|b| h.right_neighbors(b).len()).max().unwrap_or(0);
    (delta.max(1), k.max(1))
}

/// `Delta^{1/k} 2^k`, the side-dependent factor of the required order.
fn cost(h: &BipartiteGraph) -> f64 {
    let (delta, k) = side_degrees(h);
    (delta as f64).powf(1.0 / k as f64) * (k as f64).exp2()
}

/// Monochromatic copy of the bipartite `h` in a 2-colouring of a complete
/// graph: majority colour, equitable bipartition, dependent random choice,
/// resampling embedding of one side, greedy placement of the other.
pub fn bip_ramsey_pipeline(
    coloring: &EdgeColoring,
    h: &BipartiteGraph,
    rng: &mut RngStream,
    retry_cap: usize,
) -> Result<PipelineOutcome> {
    let n_big = coloring.graph().n();
    require(coloring.r() == 2, || format!("expected 2 colours, got {}", coloring.r()))?;
    require(coloring.graph().m() == n_big * n_big.saturating_sub(1) / 2, || {
        "colouring must be of a complete graph".into()
    })?;
    let nh = h.left_len() + h.right_len();
    require(nh <= n_big, || format!("H has {nh} vertices but K_N has {n_big}"))?;
    let color = coloring.majority_color();
    let g = coloring.color_class(color);

    let flipped = h.transposed();
    let transposed = cost(&flipped) < cost(h);
    let hh = if transposed { &flipped } else { h };
    let (max_degree, k) = side_degrees(hh);
    let room = hh.right_len().max(1);

    let part = random_equitable_bipartition(&g, rng, retry_cap).map_err(|e| e.in_stage("bipartition"))?;
    let cross = &part.cross;
    let cross_graph = cross.to_graph();
    let side = cross.left_len();
    let eps: f64 = cross.density();
    let params = DrcParams {
        eps,
        k,
        b: eps.powi(k as i32) * side as f64 / room as f64,
        n: room,
    };

    let mut last = Error::Precondition("no attempt made".into());
    for attempt in 1..=PIPELINE_ATTEMPTS {
        let drc = drc_draw(cross, k, room, params.size_bound(side), params.bad_fraction_bound(), rng, retry_cap)
            .map_err(|e| e.in_stage("drc"))?;
        let aux = build_aux_pair(hh, &drc.u, &cross_graph, room).map_err(|e| e.in_stage("aux"))?;
        let emb = match resample_embed(&aux.target, &aux.host, rng, DEFAULT_ROUND_CAP) {
            Ok(e) => e,
            Err(e) => {
                last = e.in_stage("embed");
                continue;
            }
        };
        let left_img: Vec<usize> = emb.map.iter().map(|&i| drc.u[i]).collect();
        let mut used = vec![false; cross.right_len()];
        let mut right_img = Vec::with_capacity(hh.right_len());
        for w in 0..hh.right_len() {
            let nb = hh.right_neighbors(w).to_vec();
            let pick = if nb.is_empty() {
                (0..cross.right_len()).find(|&x| !used[x])
            } else {
                let mut common = cross.left_neighbors(left_img[nb[0]]).clone();
                for &a in &nb[1..] {
                    common.intersect_with(cross.left_neighbors(left_img[a]));
                }
                common.iter().find(|&x| !used[x])
            };
            match pick {
                Some(x) => {
                    used[x] = true;
                    right_img.push(x);
                }
                None => break,
            }
        }
        if right_img.len() < hh.right_len() {
            last = Error::Precondition(format!("vertex {} of the second side has no free image", right_img.len()))
                .in_stage("place");
            continue;
        }
        let left_host: Vec<usize> = left_img.iter().map(|&i| part.left[i]).collect();
        let right_host: Vec<usize> = right_img.iter().map(|&j| part.right[j]).collect();
        let map = if transposed {
            [right_host, left_host].concat()
        } else {
            [left_host, right_host].concat()
        };
        if !verify_monochromatic(coloring, h, &map, color) {
            return Err(Error::Precondition("copy failed re-verification".into()).in_stage("verify"));
        }
        return Ok(PipelineOutcome {
            color,
            map,
            transposed,
            eps,
            b: params.b,
            k,
            max_degree,
            u_size: drc.u.len(),
            drc_attempts: drc.attempts,
            embed_rounds: emb.rounds,
            attempts: attempt,
        });
    }
    Err(last)
}

/// Random 2-colouring of `K_n`.
pub fn random_two_coloring(n: usize, rng: &mut RngStream) -> EdgeColoring {
    use rand::Rng;
    EdgeColoring::from_fn(Graph::complete(n), 2, |_, _| rng.gen_range(0..2)).expect("two colours fit")
}

/// Graph on both sides of a bipartite `g` split by a proper 2-colouring,
/// the first class on the left. Fails on non-bipartite input.
pub fn split_bipartite(g: &Graph) -> Result<BipartiteGraph> {
    let mut side = vec![None::<bool>; g.n()];
    for s in 0..g.n() {
        if side[s].is_some() {
            continue;
        }
        side[s] = Some(false);
        let mut stack = vec![s];
        while let Some(v) = stack.pop() {
            let sv = side[v].unwrap();
            for w in g.neighbors(v).iter() {
                match side[w] {
                    None => {
                        side[w] = Some(!sv);
                        stack.push(w);
                    }
                    Some(sw) if sw == sv => return Err(Error::InvalidGraph("graph is not bipartite".into())),
                    _ => {}
                }
            }
        }
    }
    let left: Vec<usize> = (0..g.n()).filter(|&v| side[v] == Some(false)).collect();
    let right: Vec<usize> = (0..g.n()).filter(|&v| side[v] == Some(true)).collect();
    Ok(BipartiteGraph::from_fn(left.len(), right.len(), |i, j| g.has_edge(left[i], right[j])))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generate::hypercube;

    #[test]
    fn aux_pair_shapes() {
        let matching = BipartiteGraph::from_edges(3, 3, [(0, 0), (1, 1), (2, 2)]).unwrap();
        let aux = build_aux_pair(&matching, &[0, 1], &Graph::complete(4), 1).unwrap();
        assert!(aux.target.edges().iter().all(|e| e.len() == 1));

        let q3 = split_bipartite(&hypercube(3).unwrap()).unwrap();
        assert_eq!((q3.left_len(), q3.right_len()), (4, 4));
        let g = Graph::complete(12);
        let u: Vec<usize> = (0..6).collect();
        let aux = build_aux_pair(&q3, &u, &g, 12 - 3).unwrap();
        assert_eq!(aux.target.n(), 4);
        assert!(aux.target.edges().iter().all(|e| e.len() == 3));
        assert_eq!(aux.target.max_degree(), 3);
        assert_eq!(aux.host.missing_top(), 0);
    }

    #[test]
    fn single_edge_in_every_coloring_of_k3() {
        let edge = BipartiteGraph::complete(1, 1);
        for bits in 0..8u8 {
            let c = EdgeColoring::from_fn(Graph::complete(3), 2, |u, v| (bits >> (u + v - 1)) & 1).unwrap();
            let out = bip_ramsey_pipeline(&c, &edge, &mut RngStream::new(bits as u64), 100).unwrap();
            assert!(verify_monochromatic(&c, &edge, &out.map, out.color));
        }
    }

    #[test]
    fn c4_against_half_clique() {
        let n = 48;
        let c = EdgeColoring::from_fn(Graph::complete(n), 2, |u, v| u8::from(!(u < n / 2 && v < n / 2))).unwrap();
        let c4 = BipartiteGraph::complete(2, 2);
        let out = bip_ramsey_pipeline(&c, &c4, &mut RngStream::new(1), 1000).unwrap();
        assert_eq!(out.color, c.majority_color());
        assert!(verify_monochromatic(&c, &c4, &out.map, out.color));
    }

    #[test]
    fn cube_in_random_colorings() {
        let q3 = split_bipartite(&hypercube(3).unwrap()).unwrap();
        for seed in 0..3 {
            let mut rng = RngStream::new(seed);
            let c = random_two_coloring(512, &mut rng);
            let out = bip_ramsey_pipeline(&c, &q3, &mut rng, 1000).unwrap();
            assert!(verify_monochromatic(&c, &q3, &out.map, out.color));
        }
    }
}
