use serde::Serialize;

use super::filter::{cover_partition, degree_filter, FilterMode};
use super::ktt::{find_ktt, KttSearch};
use super::seq::{verify_sequence, WeakSequence};
use crate::error::{require, Error, Result};
use crate::graph::{BipartiteGraph, Graph};
use crate::partition::random_equitable_bipartition;
use crate::preset::Envelopes;
use crate::rng::RngStream;

/// Parameters and derived quantities; which regimes hold is computed.
#[derive(Clone, Debug, Serialize)]
pub struct SeqParams {
    pub n: usize,
    pub p: f64,
    pub r: usize,
    pub t: usize,
    /// `(1 - p/2)^r`
    pub rho: f64,
    /// `p n / 16 r`
    pub part_floor: f64,
    /// `e^{-p r^2 / 8}`
    pub delta_bound: f64,
    pub regimes: [bool; 3],
}

impl SeqParams {
    pub fn new(n: usize, p: f64, r: usize, t: usize) -> Self {
        let (nf, rf, tf) = (n as f64, r as f64, t as f64);
        let ln = nf.ln();
        let r1 = p >= nf.powf(-1.0 / 3.0)
            && rf <= 2.0 / p.sqrt()
            && 32.0 / (p * rf * rf) > 1.0
            && tf <= ln / (4.0 * (32.0 / (p * rf * rf)).ln());
        let r2 = p >= nf.powf(-0.2)
            && 4.0 / p.sqrt() <= rf
            && rf <= (ln / p).sqrt()
            && tf <= (p * rf * rf / 8.0).exp() * ln / 16.0;
        let r3 = rf >= 4.0 * (ln / p).sqrt() && tf <= (p * nf / (64.0 * ln.sqrt())).min(nf / (2.0 * rf));
        SeqParams {
            n,
            p,
            r,
            t,
            rho: (1.0 - p / 2.0).powi(r as i32),
            part_floor: p * nf / (16.0 * rf),
            delta_bound: (-p * rf * rf / 8.0).exp(),
            regimes: [r1, r2, r3],
        }
    }

    pub fn in_regime(&self) -> bool {
        self.regimes.iter().any(|&b| b)
    }
}

/// `floor(e^{p r^2 / 8} ln n / 16)`, at least 1.
pub fn regime2_t(n: usize, p: f64, r: usize) -> usize {
    let v = (p * (r * r) as f64 / 8.0).exp() * (n as f64).ln() / 16.0;
    (v.floor() as usize).max(1)
}

#[derive(Clone, Debug, Serialize)]
pub struct StageCheck {
    pub stage: &'static str,
    pub measured: f64,
    pub bound: f64,
    pub holds: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct SequenceStats {
    /// 1 when `p <= 3/r`, else 2.
    pub case: u8,
    pub checks: Vec<StageCheck>,
    pub parts_first: usize,
    pub leftover_first: usize,
    pub kept_b: usize,
    pub s_size: usize,
    pub h: usize,
    pub t_density: f64,
    pub ktt_nodes: u64,
}

/// The bicomplete sequence found inside a bipartite graph, as left and
/// right vertex sets of `b`.
#[derive(Clone, Debug, Serialize)]
pub struct BipartiteSequence {
    pub s: Vec<Vec<usize>>,
    pub t: Vec<Vec<usize>>,
    pub stats: SequenceStats,
}

/// Everything after the equitable bipartition: filter, cover partition,
/// auxiliary graph, second filter and partition, then `K_{t,t}` in `T`.
/// Sets `S_i` come from the left side, `T_j` from the right.
pub fn sequence_in_bipartite(
    b: &BipartiteGraph,
    p: f64,
    r: usize,
    t: usize,
    env: &Envelopes,
    rng: &mut RngStream,
    retry_cap: usize,
) -> Result<BipartiteSequence> {
    require(r >= 1 && t >= 1, || "r and t must be >= 1".into())?;
    require(p > 0.0 && p <= 1.0, || format!("p = {p} outside (0, 1]"))?;
    let mut checks = Vec::new();
    let mut check = |stage, measured: f64, bound: f64, holds: bool| {
        checks.push(StageCheck {
            stage,
            measured,
            bound,
            holds,
        })
    };

    let f1 = degree_filter(b, FilterMode::Sparse(p)).map_err(|e| e.in_stage("filter"))?;
    check("filter_size", f1.kept.len() as f64, f1.size_bound, true);
    let kept = f1.kept;
    require(!kept.is_empty(), || "first filter kept nothing".into()).map_err(|e| e.in_stage("filter"))?;
    let left: Vec<usize> = (0..b.left_len()).collect();
    let b1 = b.induced(&left, &kept);

    let cover = cover_partition(&b1, r, p / 2.0, rng, retry_cap).map_err(|e| e.in_stage("partition"))?;
    let rho = (1.0 - p / 2.0).powi(r as i32);
    check("partition_fraction", cover.fraction, rho, true);
    let parts = cover.parts;
    let d = parts.len();

    // X: left = kept vertices of B, right = parts, i ~ b if A_i reaches b
    let reach: Vec<crate::bitset::VertexSet> = parts
        .iter()
        .map(|a| {
            let mut s = b1.left_neighbors(a[0]).clone();
            for &u in &a[1..] {
                s.union_with(b1.left_neighbors(u));
            }
            s
        })
        .collect();
    let x = BipartiteGraph::from_fn(kept.len(), d, |bi, i| reach[i].contains(bi));
    let x_density: f64 = x.density();
    check("x_density", x_density, 1.0 - rho, x_density + 1e-12 >= 1.0 - rho);

    let case = if p <= 3.0 / r as f64 { 1 } else { 2 };
    let (f2, p2) = if case == 1 {
        let pr = p * r as f64;
        (degree_filter(&x, FilterMode::Sparse(pr / 4.0)), pr / 8.0)
    } else {
        (degree_filter(&x, FilterMode::Dense(rho)), 1.0 - 2.0 * rho)
    };
    let f2 = f2.map_err(|e| e.in_stage("second_filter"))?;
    check("second_filter_size", f2.kept.len() as f64, f2.size_bound, true);
    let s_idx = f2.kept;

    // partition the kept B vertices against S
    let xs = x.induced(&(0..kept.len()).collect::<Vec<_>>(), &s_idx);
    let cover2 = cover_partition(&xs, r, p2, rng, retry_cap).map_err(|e| e.in_stage("second_partition"))?;
    check("second_partition_fraction", cover2.fraction, cover2.bound, true);
    let bparts: Vec<Vec<usize>> = cover2
        .parts
        .iter()
        .map(|bp| bp.iter().map(|&i| kept[i]).collect())
        .collect();

    // T: S x [h], edge if A_i has an edge to B_j
    let tgraph = BipartiteGraph::from_fn(s_idx.len(), bparts.len(), |si, j| {
        bparts[j].iter().any(|&v| reach[s_idx[si]].contains(kept.binary_search(&v).unwrap()))
    });
    let t_density: f64 = tgraph.density();
    let delta_bound = (-p * (r * r) as f64 / 8.0).exp();
    check("t_delta", 1.0 - t_density, delta_bound, 1.0 - t_density <= delta_bound + 1e-12);

    let search = find_ktt(&tgraph, t, env.ktt_max_t, env.ktt_node_budget).map_err(|e| e.in_stage("ktt"))?;
    let (ls, rs, nodes) = match search {
        KttSearch::Found { left, right, nodes } => (left, right, nodes),
        KttSearch::NotFound { exhaustive, nodes } => {
            return Err(Error::Precondition(format!(
                "no K_{{{t},{t}}} in T ({} x {}, density {t_density:.4}, exhaustive {exhaustive}, {nodes} nodes)",
                tgraph.left_len(),
                tgraph.right_len()
            ))
            .in_stage("ktt"))
        }
    };
    let s_sets: Vec<Vec<usize>> = ls.iter().map(|&si| parts[s_idx[si]].clone()).collect();
    let t_sets: Vec<Vec<usize>> = rs.iter().map(|&j| bparts[j].clone()).collect();
    Ok(BipartiteSequence {
        s: s_sets,
        t: t_sets,
        stats: SequenceStats {
            case,
            checks,
            parts_first: d,
            leftover_first: cover.leftover.len(),
            kept_b: kept.len(),
            s_size: s_idx.len(),
            h: bparts.len(),
            t_density,
            ktt_nodes: nodes,
        },
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct SequenceOutcome {
    pub sequence: WeakSequence,
    pub params: SeqParams,
    pub cross_density: f64,
    pub bipartition_attempts: usize,
    pub stats: SequenceStats,
}

/// Weakly bi-complete `r`-sequence of order `t` in `g`.
pub fn weak_sequence_pipeline(
    g: &Graph,
    r: usize,
    t: usize,
    env: &Envelopes,
    rng: &mut RngStream,
    retry_cap: usize,
) -> Result<SequenceOutcome> {
    let p: f64 = g.density();
    let params = SeqParams::new(g.n(), p, r, t);
    require(2 * r * t <= g.n(), || format!("2rt = {} exceeds n = {}", 2 * r * t, g.n()))?;
    let part = random_equitable_bipartition(g, rng, retry_cap).map_err(|e| e.in_stage("bipartition"))?;
    let found = sequence_in_bipartite(&part.cross, p, r, t, env, rng, retry_cap)?;
    let map_left = |a: &Vec<usize>| {
        let mut v: Vec<usize> = a.iter().map(|&i| part.left[i]).collect();
        v.sort_unstable();
        v
    };
    let map_right = |a: &Vec<usize>| {
        let mut v: Vec<usize> = a.iter().map(|&j| part.right[j]).collect();
        v.sort_unstable();
        v
    };
    let sequence = WeakSequence::bicomplete(
        r,
        found.s.iter().map(map_left).collect(),
        found.t.iter().map(map_right).collect(),
    );
    if let Err(v) = verify_sequence(g, &sequence) {
        return Err(Error::Precondition(format!("witness failed verification: {v}")).in_stage("verify"));
    }
    Ok(SequenceOutcome {
        sequence,
        params,
        cross_density: part.cross.density(),
        bipartition_attempts: part.attempts,
        stats: found.stats,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generate::gnp;
    use crate::preset::Preset;

    #[test]
    fn regime_arithmetic() {
        // regime 2 needs 4 p^{-1/2} <= r <= sqrt(ln n / p): empty at p = 1/2, n = 2000
        let s = SeqParams::new(2000, 0.5, 4, 1);
        assert!(!s.regimes[1]);
        assert_eq!(regime2_t(2000, 0.5, 4), 1);
        assert!((s.rho - 0.75f64.powi(4)).abs() < 1e-15);
        assert!((s.delta_bound - (-1.0f64).exp()).abs() < 1e-15);
        assert!(SeqParams::new(1_000_000_000, 0.5, 6, 1).regimes[1]);
    }

    #[test]
    fn complete_graph_succeeds() {
        let env = Preset::desk().envelopes;
        let g = Graph::complete(40);
        let out = weak_sequence_pipeline(&g, 2, 5, &env, &mut RngStream::new(0), 100).unwrap();
        assert_eq!(out.sequence.order(), 5);
        assert!(out.stats.checks.iter().all(|c| c.holds));
    }

    #[test]
    fn random_graph_witness_verifies_and_pads() {
        let env = Preset::desk().envelopes;
        let mut rng = RngStream::new(3);
        let g = gnp(400, 0.5, &mut rng);
        let out = weak_sequence_pipeline(&g, 3, 4, &env, &mut rng, 1000).unwrap();
        assert!(verify_sequence(&g, &out.sequence).is_ok());
        assert!(verify_sequence(&g, &out.sequence.to_complete()).is_ok());
        let padded = out.sequence.pad(g.n(), 400 / 8).unwrap();
        assert!(verify_sequence(&g, &padded).is_ok());
    }

    #[test]
    fn case_two_branch() {
        let env = Preset::desk().envelopes;
        let mut rng = RngStream::new(5);
        let g = gnp(300, 0.8, &mut rng);
        let out = weak_sequence_pipeline(&g, 6, 3, &env, &mut rng, 1000).unwrap();
        assert_eq!(out.stats.case, 2);
        assert!(verify_sequence(&g, &out.sequence).is_ok());
    }
}
