use exlab_core::bipfree::{
    contains_biclique, count_krr, extract_free, kpartite_count_check, krr_count_bound, tight_instance,
    zarankiewicz_oracle, KPartiteGraph, MAX_ORACLE_LEFT, MAX_ORACLE_RIGHT,
};
use serde_json::json;

use super::{flag, pre, GraphSource, Operation, TrialOutput};
use crate::error::{invalid, LabResult};
use crate::params::Params;

pub const OPS: &[&str] = &["extract", "count", "zarankiewicz", "kpartite"];

pub const RATIO: &str = "size/floor ratio";

pub fn resolve(op: &str, p: &mut Params) -> LabResult<Operation> {
    match op {
        "extract" => {
            let source = GraphSource::from_params(p, 40)?;
            let r = p.at_least("r", 2, 2)?;
            let cap = p.at_least("retry_cap", 1000, 1)?;
            Ok(Operation::new(true, Some(RATIO), move |rng| {
                let g = source.draw(rng);
                let ex = extract_free(&g, r, rng, cap)?;
                let h = &ex.subgraph;
                let inside = h.edges().iter().all(|&(u, v)| g.has_edge(u, v));
                let free = count_krr(h, r)? == 0;
                let big = h.m() >= ex.target;
                Ok(TrialOutput::new(inside && free && big, inside && free, h.edges())
                    .stat("m", g.m() as f64)
                    .stat("size", h.m() as f64)
                    .stat("floor", ex.target as f64)
                    .stat(RATIO, h.m() as f64 / ex.target.max(1) as f64)
                    .stat("trials_used", ex.trials_used as f64))
            }))
        }
        "count" => {
            let source = GraphSource::from_params(p, 30)?;
            let r = p.at_least("r", 2, 1)?;
            Ok(Operation::new(true, Some("count/bound"), move |rng| {
                let g = source.draw(rng);
                let count = count_krr(&g, r)?;
                let bound = krr_count_bound(g.m(), r);
                let ok = count as f64 <= bound;
                Ok(TrialOutput::new(ok, true, json!({ "count": count.to_string() }))
                    .stat("m", g.m() as f64)
                    .stat("count", count as f64)
                    .stat("bound", bound)
                    .stat("count/bound", if bound > 0.0 { count as f64 / bound } else { 0.0 }))
            }))
        }
        "zarankiewicz" => {
            let r = p.at_least("r", 2, 2)?;
            let s = p.at_least("s", 2, 2)?;
            let m = p.at_least("m", 64, 1)?;
            let budget = p.u64("budget", u64::MAX)?;
            let inst = pre(tight_instance(r, s, m))?;
            let (nl, nr) = (inst.graph.left_len(), inst.graph.right_len());
            if nl > MAX_ORACLE_LEFT || nr > MAX_ORACLE_RIGHT {
                return invalid(format!(
                    "oracle envelope is {MAX_ORACLE_LEFT} x {MAX_ORACLE_RIGHT}, instance is {nl} x {nr}"
                ));
            }
            Ok(Operation::new(false, Some("value"), move |_| {
                let z = zarankiewicz_oracle(&inst.graph, r, s, budget)?;
                let holds = !contains_biclique(&z.witness, r, s) && z.witness.m() == z.lower && z.lower <= z.upper;
                Ok(TrialOutput::new(z.is_exact(), holds, z.witness.edges())
                    .stat("value", z.lower as f64)
                    .stat("upper", z.upper as f64)
                    .stat("bound", inst.upper_bound() as f64)
                    .stat("within_bound", flag(z.lower <= inst.upper_bound()))
                    .stat("nodes", z.nodes as f64))
            }))
        }
        _ => {
            let k = p.at_least("k", 2, 2)?;
            let n = p.at_least("n", 2, 1)?;
            let r = p.at_least("r", 2, 1)?;
            let keep = p.prob("p", 0.5)?;
            let base = pre(KPartiteGraph::complete(&KPartiteGraph::chain_sizes(k, n, r)))?;
            Ok(Operation::new(true, Some("count"), move |rng| {
                let g = base.random_subgraph(keep, rng);
                let c = kpartite_count_check(&g, r)?;
                Ok(TrialOutput::new(c.pass, true, json!({ "edges": g.hyper().edges(), "count": c.count.to_string() }))
                    .stat("edges", g.hyper().m() as f64)
                    .stat("count", c.count as f64)
                    .stat("bound", c.bound))
            }))
        }
    }
}
