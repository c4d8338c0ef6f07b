use std::fmt;

use rand::seq::SliceRandom;
use rayon::prelude::*;
use serde::Serialize;

use super::pipeline::{sequence_in_bipartite, SequenceStats};
use crate::bitset::VertexSet;
use crate::error::{guard, require, Error, Result};
use crate::graph::{BipartiteGraph, Graph};
use crate::preset::{Envelopes, WeakseqConstants};
use crate::rng::RngStream;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MinorModel {
    pub branch_sets: Vec<Vec<usize>>,
    pub size_cap: usize,
    /// Asserted only when present.
    pub diameter_cap: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum MinorViolation {
    Empty { set: usize },
    OutOfRange { vertex: usize },
    Shared { vertex: usize },
    Disconnected { set: usize },
    NoEdge { first: usize, second: usize },
    TooLarge { set: usize, len: usize },
    Diameter { set: usize, diameter: usize },
}

impl fmt::Display for MinorViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MinorViolation::Empty { set } => write!(f, "branch set {set} is empty"),
            MinorViolation::OutOfRange { vertex } => write!(f, "vertex {vertex} out of range"),
            MinorViolation::Shared { vertex } => write!(f, "vertex {vertex} in two branch sets"),
            MinorViolation::Disconnected { set } => write!(f, "branch set {set} is not connected"),
            MinorViolation::NoEdge { first, second } => write!(f, "no edge between branch sets {first} and {second}"),
            MinorViolation::TooLarge { set, len } => write!(f, "branch set {set} has {len} vertices"),
            MinorViolation::Diameter { set, diameter } => write!(f, "branch set {set} has diameter {diameter}"),
        }
    }
}

fn as_set(g: &Graph, b: &[usize]) -> VertexSet {
    VertexSet::from_iter_with_capacity(g.n(), b.iter().copied())
}

/// Induced diameter, `None` when disconnected.
fn induced_diameter(g: &Graph, b: &VertexSet) -> Option<usize> {
    let mut diam = 0;
    for v in b.iter() {
        let dist = g.distances_within(v, b);
        for u in b.iter() {
            diam = diam.max(dist[u]?);
        }
    }
    Some(diam)
}

fn joined(g: &Graph, a: &[usize], b: &VertexSet) -> bool {
    a.iter().any(|&u| !g.neighbors(u).is_disjoint(b))
}

pub fn verify_minor(g: &Graph, m: &MinorModel) -> std::result::Result<(), MinorViolation> {
    let mut seen = VertexSet::new(g.n());
    for (i, b) in m.branch_sets.iter().enumerate() {
        if b.is_empty() {
            return Err(MinorViolation::Empty { set: i });
        }
        for &v in b {
            if v >= g.n() {
                return Err(MinorViolation::OutOfRange { vertex: v });
            }
            if !seen.insert(v) {
                return Err(MinorViolation::Shared { vertex: v });
            }
        }
        if b.len() > m.size_cap {
            return Err(MinorViolation::TooLarge { set: i, len: b.len() });
        }
    }
    let sets: Vec<VertexSet> = m.branch_sets.iter().map(|b| as_set(g, b)).collect();
    for (i, s) in sets.iter().enumerate() {
        if !g.is_connected_within(s) {
            return Err(MinorViolation::Disconnected { set: i });
        }
        if let Some(cap) = m.diameter_cap {
            let d = induced_diameter(g, s).expect("connected");
            if d > cap {
                return Err(MinorViolation::Diameter { set: i, diameter: d });
            }
        }
    }
    for i in 0..sets.len() {
        for j in i + 1..sets.len() {
            if !joined(g, &m.branch_sets[i], &sets[j]) {
                return Err(MinorViolation::NoEdge { first: i, second: j });
            }
        }
    }
    Ok(())
}

/// A 4-edge path `x - v1 - u - v2 - y` with `x, y, u` on the left of `H`.
pub type FourPath = [usize; 5];

/// Internally disjoint 4-edge paths from `x` to `y` whose middle vertex
/// avoids `blocked`, extracted greedily; stops at `want`.
pub fn greedy_paths(h: &BipartiteGraph, x: usize, y: usize, blocked: &VertexSet, want: usize) -> Vec<FourPath> {
    let mut used_right = VertexSet::new(h.right_len());
    let mut out = Vec::new();
    for u in 0..h.left_len() {
        if out.len() >= want {
            break;
        }
        if u == x || u == y || blocked.contains(u) {
            continue;
        }
        let mut a = h.left_neighbors(x).intersection(h.left_neighbors(u));
        a.difference_with(&used_right);
        let mut b = h.left_neighbors(y).intersection(h.left_neighbors(u));
        b.difference_with(&used_right);
        let Some(v1) = a.first() else { continue };
        // prefer a v2 distinct from v1; fall back to another v1
        let pick = b.iter().find(|&v| v != v1).map(|v2| (v1, v2)).or_else(|| {
            let v2 = b.first()?;
            a.iter().find(|&v| v != v2).map(|v1| (v1, v2))
        });
        if let Some((v1, v2)) = pick {
            used_right.insert(v1);
            used_right.insert(v2);
            out.push([x, v1, u, v2, y]);
        }
    }
    out
}

fn check_path_system(h: &BipartiteGraph, x: usize, y: usize, blocked: &VertexSet, paths: &[FourPath]) -> bool {
    let mut right = VertexSet::new(h.right_len());
    let mut mid = VertexSet::new(h.left_len());
    paths.iter().all(|p| {
        p[0] == x
            && p[4] == y
            && p[1] != p[3]
            && !blocked.contains(p[2])
            && p[2] != x
            && p[2] != y
            && h.has_edge(p[0], p[1])
            && h.has_edge(p[2], p[1])
            && h.has_edge(p[2], p[3])
            && h.has_edge(p[4], p[3])
            && right.insert(p[1])
            && right.insert(p[3])
            && mid.insert(p[2])
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct PathsDrc {
    /// Left vertices of `H`, sorted.
    pub x: Vec<usize>,
    pub density: f64,
    pub size_floor: usize,
    pub path_budget: usize,
    /// Fewest certified paths over all pairs.
    pub min_paths: usize,
    pub attempts: usize,
}

/// Left set `X` of `H` where every pair is joined by `path_budget`
/// internally disjoint 4-edge paths whose middle vertices lie outside `X`.
/// Built greedily in random order up to `max_size`, then every pair is
/// re-certified against the final `X` and violators are dropped.
pub fn paths_drc(
    h: &BipartiteGraph,
    consts: &WeakseqConstants,
    max_size: Option<usize>,
    rng: &mut RngStream,
    retry_cap: usize,
) -> Result<PathsDrc> {
    let n = h.left_len() + h.right_len();
    require(h.m() > 0, || "host has no edges".into())?;
    let p: f64 = h.density();
    require(p * p * n as f64 >= consts.drc_guard, || {
        format!("p^2 n = {:.3} below the guard {}", p * p * n as f64, consts.drc_guard)
    })?;
    let floor = ((p * n as f64 / consts.drc_size_divisor).ceil() as usize).max(2);
    let budget = ((consts.drc_path_coeff * p.powi(consts.drc_path_exponent) * n as f64).ceil() as usize).max(1);
    let cap = max_size.unwrap_or(h.left_len() / 2).max(floor).min(h.left_len());
    require(floor <= h.left_len(), || format!("size floor {floor} exceeds |U| = {}", h.left_len()))?;

    let mut order: Vec<usize> = (0..h.left_len()).collect();
    let mut best = 0;
    for attempt in 1..=retry_cap {
        order.shuffle(rng);
        let mut x: Vec<usize> = Vec::new();
        let mut blocked = VertexSet::new(h.left_len());
        for &c in &order {
            if x.len() >= cap {
                break;
            }
            blocked.insert(c);
            let ok = x.par_iter().all(|&y| greedy_paths(h, c, y, &blocked, budget).len() >= budget);
            if ok {
                x.push(c);
            } else {
                blocked.remove(c);
            }
        }
        // later insertions block middles used by earlier pairs: re-certify
        loop {
            let pairs: Vec<(usize, usize)> = (0..x.len())
                .flat_map(|i| (i + 1..x.len()).map(move |j| (i, j)))
                .collect();
            let counts: Vec<usize> = pairs
                .par_iter()
                .map(|&(i, j)| {
                    let ps = greedy_paths(h, x[i], x[j], &blocked, budget);
                    assert!(check_path_system(h, x[i], x[j], &blocked, &ps));
                    ps.len()
                })
                .collect();
            let bad = pairs.iter().zip(&counts).find(|(_, &c)| c < budget);
            match bad {
                Some((&(_, j), _)) => {
                    blocked.remove(x[j]);
                    x.remove(j);
                }
                None => {
                    let min_paths = counts.iter().copied().min().unwrap_or(budget);
                    if x.len() >= floor {
                        x.sort_unstable();
                        return Ok(PathsDrc {
                            x,
                            density: p,
                            size_floor: floor,
                            path_budget: budget,
                            min_paths,
                            attempts: attempt,
                        });
                    }
                    break;
                }
            }
        }
        best = best.max(x.len());
    }
    Err(Error::RetryCap {
        cap: retry_cap,
        report: format!("largest certified set {best} below floor {floor} (budget {budget} paths)"),
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct MinorStats {
    pub cleaned_n: usize,
    pub h_sides: usize,
    pub x_size: usize,
    pub x_prime: usize,
    pub z_size: usize,
    pub y_size: usize,
    pub drc: [PathsDrcSummary; 2],
    pub sequence: SequenceStats,
    pub connect_paths: usize,
    pub pruned: usize,
    pub in_regime: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct PathsDrcSummary {
    pub size: usize,
    pub floor: usize,
    pub budget: usize,
    pub min_paths: usize,
}

impl From<&PathsDrc> for PathsDrcSummary {
    fn from(d: &PathsDrc) -> Self {
        PathsDrcSummary {
            size: d.x.len(),
            floor: d.size_floor,
            budget: d.path_budget,
            min_paths: d.min_paths,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct MinorOutcome {
    pub model: MinorModel,
    pub stats: MinorStats,
}

/// `p >= n^{-1/8}` and `24 p^{-1/2} <= r <= sqrt(ln n / p) / 2`.
pub fn minor_regime(n: usize, p: f64, r: usize) -> bool {
    let (nf, rf) = (n as f64, r as f64);
    p >= nf.powf(-0.125) && 24.0 / p.sqrt() <= rf && rf <= 0.5 * (nf.ln() / p).sqrt()
}

/// Repeatedly deletes vertices of degree below `threshold`.
fn degree_cleanup(g: &Graph, threshold: f64) -> Vec<usize> {
    let mut alive = VertexSet::full(g.n());
    let mut deg: Vec<usize> = (0..g.n()).map(|v| g.degree(v)).collect();
    let mut stack: Vec<usize> = (0..g.n()).filter(|&v| (deg[v] as f64) < threshold).collect();
    for &v in &stack {
        alive.remove(v);
    }
    while let Some(v) = stack.pop() {
        for u in g.neighbors(v).iter() {
            if alive.contains(u) {
                deg[u] -= 1;
                if (deg[u] as f64) < threshold {
                    alive.remove(u);
                    stack.push(u);
                }
            }
        }
    }
    alive.to_vec()
}

/// Lexicographically first `a - v1 - v2 - v3 - b` with fresh internal vertices.
fn first_four_path(g: &Graph, a: usize, b: usize, used: &VertexSet) -> Option<[usize; 3]> {
    let fresh = |v: usize| v != a && v != b && !used.contains(v);
    for v1 in g.neighbors(a).iter().filter(|&v| fresh(v)) {
        for v2 in g.neighbors(v1).iter().filter(|&v| fresh(v)) {
            let mut ends = g.neighbors(v2).intersection(g.neighbors(b));
            ends.difference_with(used);
            if let Some(v3) = ends.iter().find(|&v| fresh(v) && v != v1) {
                return Some([v1, v2, v3]);
            }
        }
    }
    None
}

fn branch_ok(g: &Graph, sets: &[Vec<usize>], i: usize, diameter_cap: Option<usize>) -> bool {
    let s = as_set(g, &sets[i]);
    if sets[i].is_empty() || !g.is_connected_within(&s) {
        return false;
    }
    if let Some(cap) = diameter_cap {
        if induced_diameter(g, &s).is_none_or(|d| d > cap) {
            return false;
        }
    }
    (0..sets.len()).filter(|&j| j != i).all(|j| joined(g, &sets[j], &s))
}

/// Drops vertices, largest first, while the model stays valid.
fn prune(g: &Graph, sets: &mut [Vec<usize>], diameter_cap: Option<usize>) -> usize {
    let mut dropped = 0;
    for i in 0..sets.len() {
        let mut k = sets[i].len();
        while k > 0 {
            k -= 1;
            if sets[i].len() == 1 {
                break;
            }
            let v = sets[i].remove(k);
            if branch_ok(g, sets, i, diameter_cap) {
                dropped += 1;
            } else {
                sets[i].insert(k, v);
            }
        }
    }
    dropped
}

/// Equitable random split of `g` with both parts of equal size, retried
/// until the cross graph has enough edges and minimum degree.
fn dense_bipartite(
    g: &Graph,
    min_edges: f64,
    min_degree: f64,
    rng: &mut RngStream,
    retry_cap: usize,
) -> Result<(Vec<usize>, Vec<usize>, BipartiteGraph)> {
    let mut order: Vec<usize> = (0..g.n()).collect();
    let half = g.n() / 2;
    require(half >= 1, || "too few vertices after cleanup".into())?;
    let mut best = (0usize, 0usize);
    for _ in 0..retry_cap {
        order.shuffle(rng);
        let mut left = order[..half].to_vec();
        let mut right = order[half..2 * half].to_vec();
        left.sort_unstable();
        right.sort_unstable();
        let h = BipartiteGraph::from_fn(half, half, |i, j| g.has_edge(left[i], right[j]));
        let min_deg = (0..half)
            .map(|i| h.left_neighbors(i).len().min(h.right_neighbors(i).len()))
            .min()
            .unwrap_or(0);
        if h.m() as f64 >= min_edges && min_deg as f64 >= min_degree {
            return Ok((left, right, h));
        }
        best = best.max((h.m(), min_deg));
    }
    Err(Error::RetryCap {
        cap: retry_cap,
        report: format!(
            "best split had {} edges (need {min_edges:.1}) and min degree {} (need {min_degree:.1})",
            best.0, best.1
        ),
    })
}

/// `K_t`-minor with branch sets of size at most `size_cap_factor * r`:
/// degree cleanup, dense bipartite subgraph, paths-DRC twice, a weakly
/// bi-complete sequence between the two certified sets, then each set is
/// tied together with fresh 4-edge paths.
pub fn minor_pipeline(
    g: &Graph,
    r: usize,
    t: usize,
    consts: &WeakseqConstants,
    env: &Envelopes,
    rng: &mut RngStream,
    retry_cap: usize,
) -> Result<MinorOutcome> {
    require(r >= 1 && t >= 1, || "r and t must be >= 1".into())?;
    guard(t <= env.ktt_max_t, || format!("t = {t} beyond the K_{{t,t}} envelope"))?;
    let n = g.n();
    let p: f64 = g.density();
    require(p > 0.0, || "graph has no edges".into())?;
    let pn = p * n as f64;

    let alive = degree_cleanup(g, consts.cleanup_degree * pn);
    let g1 = g.induced(&alive);
    let v = g1.n();
    let (left, right, h) = dense_bipartite(
        &g1,
        consts.bip_edge_fraction * pn * n as f64,
        consts.bip_min_degree * pn,
        rng,
        retry_cap,
    )
    .map_err(|e| e.in_stage("bipartite"))?;

    let x_prime_len = (pn / consts.xprime_divisor).ceil() as usize;
    let drc1 = paths_drc(&h, consts, Some(x_prime_len), rng, retry_cap).map_err(|e| e.in_stage("paths_drc"))?;
    require(drc1.x.len() >= x_prime_len.min(h.left_len()), || {
        format!("paths-DRC set {} smaller than |X'| = {x_prime_len}", drc1.x.len())
    })
    .map_err(|e| e.in_stage("paths_drc"))?;
    let mut x_prime = drc1.x.clone();
    x_prime.shuffle(rng);
    x_prime.truncate(x_prime_len);
    x_prime.sort_unstable();

    // Z: right vertices with many neighbours in X'
    let z_threshold = consts.z_degree * pn / v as f64 * x_prime.len() as f64;
    let xp_set = VertexSet::from_iter_with_capacity(h.left_len(), x_prime.iter().copied());
    let z: Vec<usize> = (0..h.right_len())
        .filter(|&j| h.right_neighbors(j).intersection_len(&xp_set) as f64 >= z_threshold)
        .collect();
    require(z.len() >= x_prime.len(), || format!("|Z| = {} below |X'| = {}", z.len(), x_prime.len()))
        .map_err(|e| e.in_stage("z"))?;
    let mut z_prime = z.clone();
    let mut hp = None;
    for _ in 0..retry_cap {
        z_prime.shuffle(rng);
        let mut zp = z_prime[..x_prime.len()].to_vec();
        zp.sort_unstable();
        // H' with Z' on the left
        let cand = h.induced(&x_prime, &zp).transposed();
        if cand.density::<f64>() >= consts.zprime_density * p {
            hp = Some((zp, cand));
            break;
        }
    }
    let (z_prime, hp) = hp
        .ok_or_else(|| Error::RetryCap {
            cap: retry_cap,
            report: "no dense enough Z'".into(),
        })
        .map_err(|e| e.in_stage("z"))?;

    let drc2 = paths_drc(&hp, consts, None, rng, retry_cap).map_err(|e| e.in_stage("paths_drc_second"))?;
    let y: Vec<usize> = drc2.x.iter().map(|&i| z_prime[i]).collect();

    // W: |Y| vertices of X' dense to Y
    let w_threshold = consts.w_density * pn / v as f64;
    let mut w_pool = x_prime.clone();
    let mut found = None;
    for _ in 0..retry_cap {
        w_pool.shuffle(rng);
        let mut w = w_pool[..y.len()].to_vec();
        w.sort_unstable();
        let b = h.induced(&w, &y);
        if b.density::<f64>() >= w_threshold {
            found = Some((w, b));
            break;
        }
    }
    let (w, b) = found
        .ok_or_else(|| Error::RetryCap {
            cap: retry_cap,
            report: "no dense enough W".into(),
        })
        .map_err(|e| e.in_stage("w"))?;

    let seq = sequence_in_bipartite(&b, b.density(), r, t, env, rng, retry_cap)?;
    let to_g = |side: &[usize], idx: &[usize], a: &[usize]| -> Vec<usize> {
        a.iter().map(|&i| alive[side[idx[i]]]).collect()
    };
    let s_sets: Vec<Vec<usize>> = seq.s.iter().map(|a| to_g(&left, &w, a)).collect();
    let t_sets: Vec<Vec<usize>> = seq.t.iter().map(|a| to_g(&right, &y, a)).collect();

    let mut used = VertexSet::new(n);
    for v in s_sets.iter().chain(&t_sets).flatten() {
        used.insert(*v);
    }
    let mut connect_paths = 0;
    let mut branch_sets = Vec::with_capacity(t);
    for (i, (s, tt)) in s_sets.iter().zip(&t_sets).enumerate() {
        let (ha, hb) = if consts.diameter_rule {
            s.iter()
                .flat_map(|&a| tt.iter().map(move |&b| (a, b)))
                .find(|&(a, b)| g.has_edge(a, b))
                .ok_or_else(|| Error::Precondition(format!("S_{i} and T_{i} not joined")).in_stage("connect"))?
        } else {
            (s[0], tt[0])
        };
        let mut set = Vec::new();
        for (hub, part) in [(ha, s), (hb, tt)] {
            set.push(hub);
            for &c in part.iter().filter(|&&c| c != hub) {
                let path = first_four_path(g, hub, c, &used).ok_or_else(|| {
                    Error::Precondition(format!("no fresh 4-edge path from {hub} to {c}")).in_stage("connect")
                })?;
                for q in path {
                    used.insert(q);
                }
                set.extend(path);
                set.push(c);
                connect_paths += 1;
            }
        }
        set.sort_unstable();
        branch_sets.push(set);
    }

    let diameter_cap = consts.diameter_rule.then_some(consts.diameter_cap);
    let pruned = if consts.prune {
        prune(g, &mut branch_sets, diameter_cap)
    } else {
        0
    };
    let model = MinorModel {
        branch_sets,
        size_cap: consts.size_cap_factor * r,
        diameter_cap,
    };
    if let Err(e) = verify_minor(g, &model) {
        return Err(Error::Precondition(format!("model failed verification: {e}")).in_stage("verify"));
    }
    Ok(MinorOutcome {
        model,
        stats: MinorStats {
            cleaned_n: v,
            h_sides: h.left_len(),
            x_size: drc1.x.len(),
            x_prime: x_prime.len(),
            z_size: z.len(),
            y_size: y.len(),
            drc: [(&drc1).into(), (&drc2).into()],
            sequence: seq.stats,
            connect_paths,
            pruned,
            in_regime: minor_regime(n, p, r),
        },
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generate::{gnp, random_bipartite};
    use crate::preset::Preset;

    #[test]
    fn verify_minor_examples() {
        let k4 = Graph::complete(4);
        let ok = MinorModel {
            branch_sets: vec![vec![0], vec![1], vec![2], vec![3]],
            size_cap: 1,
            diameter_cap: Some(0),
        };
        assert!(verify_minor(&k4, &ok).is_ok());
        let touching = MinorModel {
            branch_sets: vec![vec![0, 1], vec![1, 2]],
            size_cap: 8,
            diameter_cap: None,
        };
        assert_eq!(verify_minor(&k4, &touching), Err(MinorViolation::Shared { vertex: 1 }));
        // path 0-1-2-3: {0,2} is disconnected
        let p4 = Graph::from_edges(4, [(0, 1), (1, 2), (2, 3)]).unwrap();
        let bad = MinorModel {
            branch_sets: vec![vec![0, 2], vec![1]],
            size_cap: 8,
            diameter_cap: None,
        };
        assert_eq!(verify_minor(&p4, &bad), Err(MinorViolation::Disconnected { set: 0 }));
        let far = MinorModel {
            branch_sets: vec![vec![0, 1, 2, 3]],
            size_cap: 8,
            diameter_cap: Some(2),
        };
        assert_eq!(verify_minor(&p4, &far), Err(MinorViolation::Diameter { set: 0, diameter: 3 }));
    }

    #[test]
    fn paths_drc_complete_and_guard() {
        let consts = Preset::paper().weakseq;
        let k = BipartiteGraph::complete(60, 60);
        assert!(paths_drc(&k, &consts, None, &mut RngStream::new(0), 10).is_err());
        let desk = Preset::desk().weakseq;
        let out = paths_drc(&k, &desk, None, &mut RngStream::new(0), 10).unwrap();
        assert_eq!(out.x.len(), 30);
        assert!(out.min_paths >= out.path_budget);
    }

    #[test]
    fn paths_drc_random_paper_constants() {
        // p^2 n >= 1600 needs n >= 2500 at p = 0.8
        let consts = Preset::paper().weakseq;
        let mut rng = RngStream::new(2);
        let h = random_bipartite(1250, 1250, 0.8, &mut rng);
        let out = paths_drc(&h, &consts, Some(60), &mut rng, 10).unwrap();
        assert!(out.x.len() >= out.size_floor);
        let blocked = VertexSet::from_iter_with_capacity(1250, out.x.iter().copied());
        let ps = greedy_paths(&h, out.x[0], out.x[1], &blocked, out.path_budget);
        assert!(check_path_system(&h, out.x[0], out.x[1], &blocked, &ps));
    }

    #[test]
    fn complete_graph_gives_single_vertices() {
        let p = Preset::desk();
        let g = Graph::complete(40);
        let out = minor_pipeline(&g, 1, 4, &p.weakseq, &p.envelopes, &mut RngStream::new(1), 100).unwrap();
        assert!(out.model.branch_sets.iter().all(|b| b.len() == 1));
        assert!(verify_minor(&g, &out.model).is_ok());
    }

    #[test]
    fn desk_scenario_minor() {
        let p = Preset::desk();
        let sc = &p.scenario;
        let mut rng = RngStream::new(9);
        let g = gnp(sc.n, sc.p, &mut rng);
        let out = minor_pipeline(&g, sc.r, sc.t, &p.weakseq, &p.envelopes, &mut rng, 1000).unwrap();
        assert_eq!(out.model.branch_sets.len(), sc.t);
        assert!(verify_minor(&g, &out.model).is_ok());
    }
}
