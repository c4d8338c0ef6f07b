use rand::Rng;
use serde::Serialize;

use super::hyper::{DownClosedHypergraph, TargetHypergraph};
use crate::error::{require, Error, Result};
use crate::rng::RngStream;

pub const DEFAULT_ROUND_CAP: usize = 10_000;

/// A bad event of the random map.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub enum BadEvent {
    /// `f(u) = f(v)`
    Collision(usize, usize),
    /// Edge `e` lands injectively on a non-member.
    Edge(usize),
}

#[derive(Clone, Debug, Serialize)]
pub struct EmbeddingResult {
    pub map: Vec<usize>,
    pub rounds: usize,
    pub in_regime: bool,
}

/// `N >= 16 n` and `delta <= 2^{-8kn/N} / (4 k Delta)`.
pub fn lemma_regime(target: &TargetHypergraph, host: &DownClosedHypergraph) -> bool {
    let (n, big_n) = (target.n() as f64, host.n() as f64);
    let k = target.k().max(1) as f64;
    let delta_max = target.max_degree().max(1) as f64;
    let bound = (-8.0 * k * n / big_n).exp2() / (4.0 * k * delta_max);
    big_n >= 16.0 * n && host.delta() <= bound
}

fn first_violation(target: &TargetHypergraph, host: &DownClosedHypergraph, map: &[usize]) -> Option<BadEvent> {
    let n = map.len();
    for u in 0..n {
        for v in u + 1..n {
            if map[u] == map[v] {
                return Some(BadEvent::Collision(u, v));
            }
        }
    }
    violated_edges(target, host, map).next().map(BadEvent::Edge)
}

fn violated_edges<'a>(
    target: &'a TargetHypergraph,
    host: &'a DownClosedHypergraph,
    map: &'a [usize],
) -> impl Iterator<Item = usize> + 'a {
    target.edges().iter().enumerate().filter_map(move |(i, e)| {
        let mut img: Vec<usize> = e.iter().map(|&v| map[v]).collect();
        img.sort_unstable();
        img.dedup();
        (img.len() == e.len() && !host.contains(&img)).then_some(i)
    })
}

/// Injective and every edge maps onto a member.
pub fn verify_embedding(target: &TargetHypergraph, host: &DownClosedHypergraph, map: &[usize]) -> bool {
    if map.len() != target.n() || map.iter().any(|&x| x >= host.n()) {
        return false;
    }
    let mut seen = vec![false; host.n()];
    for &x in map {
        if std::mem::replace(&mut seen[x], true) {
            return false;
        }
    }
    target
        .edges()
        .iter()
        .all(|e| host.contains(&e.iter().map(|&v| map[v]).collect::<Vec<_>>()))
}

/// Uniform random map, then repeatedly redraws the variables of the
/// lowest-index violated event (collisions before edges) until none is left.
pub fn resample_embed(
    target: &TargetHypergraph,
    host: &DownClosedHypergraph,
    rng: &mut RngStream,
    round_cap: usize,
) -> Result<EmbeddingResult> {
    require(target.n() <= host.n(), || {
        format!("{} target vertices cannot map injectively into {}", target.n(), host.n())
    })?;
    require(target.k() <= host.k(), || format!("target edge size {} exceeds {}", target.k(), host.k()))?;
    let big_n = host.n();
    let mut map: Vec<usize> = (0..target.n()).map(|_| rng.gen_range(0..big_n)).collect();
    for round in 0..=round_cap {
        let Some(event) = first_violation(target, host, &map) else {
            debug_assert!(verify_embedding(target, host, &map));
            if !verify_embedding(target, host, &map) {
                return Err(Error::Precondition("embedding failed re-verification".into()));
            }
            return Ok(EmbeddingResult {
                map,
                rounds: round,
                in_regime: lemma_regime(target, host),
            });
        };
        if round == round_cap {
            break;
        }
        match event {
            BadEvent::Collision(u, v) => {
                map[u] = rng.gen_range(0..big_n);
                map[v] = rng.gen_range(0..big_n);
            }
            BadEvent::Edge(i) => {
                for &v in &target.edges()[i] {
                    map[v] = rng.gen_range(0..big_n);
                }
            }
        }
    }
    let mut events = Vec::new();
    for u in 0..map.len() {
        for v in u + 1..map.len() {
            if map[u] == map[v] {
                events.push(BadEvent::Collision(u, v));
            }
        }
    }
    events.extend(violated_edges(target, host, &map).map(BadEvent::Edge));
    Err(Error::RetryCap {
        cap: round_cap,
        report: format!("still violated: {events:?}"),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::embed::hyper::random_dense_dch;
    use crate::generate::hypercube;

    #[test]
    fn single_edge_into_complete() {
        let t = TargetHypergraph::new(2, [vec![0, 1]]).unwrap();
        let g = DownClosedHypergraph::complete(32, 2).unwrap();
        let e = resample_embed(&t, &g, &mut RngStream::new(0), 10).unwrap();
        assert_ne!(e.map[0], e.map[1]);
    }

    #[test]
    fn pigeonhole_failure() {
        let t = TargetHypergraph::new(5, [vec![0]]).unwrap();
        let g = DownClosedHypergraph::complete(4, 1).unwrap();
        assert!(matches!(
            resample_embed(&t, &g, &mut RngStream::new(0), 10),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn cube_in_regime() {
        let t = TargetHypergraph::neighborhoods(&hypercube(3).unwrap());
        for seed in 0..10 {
            let mut rng = RngStream::new(seed);
            let g = random_dense_dch(128, 3, 0.009, &mut rng).unwrap();
            let e = resample_embed(&t, &g, &mut rng, DEFAULT_ROUND_CAP).unwrap();
            assert!(e.in_regime);
            assert!(verify_embedding(&t, &g, &e.map));
        }
    }

    #[test]
    fn cap_reports_violations() {
        // no 2-set is a member, so the edge event can never clear
        let g = DownClosedHypergraph::from_top_fn(6, 2, |_| false).unwrap();
        let t = TargetHypergraph::new(2, [vec![0, 1]]).unwrap();
        match resample_embed(&t, &g, &mut RngStream::new(1), 50) {
            Err(Error::RetryCap { cap: 50, report }) => assert!(report.contains("Edge(0)") || report.contains("Collision")),
            other => panic!("{other:?}"),
        }
    }
}
