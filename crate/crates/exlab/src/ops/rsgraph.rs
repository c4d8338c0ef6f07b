use std::sync::Arc;

use exlab_core::rsgraph::{
    arrow_check, behrend_set, bipartite_double, check_ap_free, find_induced_matching, greedy_decompose, max_degree,
    rs_from_behrend, verify_falsifying, verify_rs, ArrowMode, ArrowVerdict, Decomposition, MatchingSearch,
    RsDecomposition, DEFAULT_MATCHING_BUDGET, MAX_BEHREND_N,
};
use exlab_core::Graph;
use serde_json::json;

use super::{flag, pre, read_text, Operation, TrialOutput};
use crate::error::{invalid, LabResult};
use crate::params::Params;

pub const OPS: &[&str] = &["behrend", "construct", "double", "decompose", "arrow"];

/// Host graph for decompose and arrow, with its RS decomposition when it
/// came from the construction.
fn host(p: &mut Params) -> LabResult<(Arc<Graph>, Option<Arc<RsDecomposition>>)> {
    match p.choice("graph", &["complete", "behrend", "file"])?.as_str() {
        "complete" => Ok((Arc::new(Graph::complete(p.at_least("v", 4, 1)?)), None)),
        "behrend" => {
            let c = pre(rs_from_behrend(p.at_least("N", 40, 15)?, p.opt_usize("chunk")?))?;
            Ok((Arc::new(c.decomposition.graph.clone()), Some(Arc::new(c.decomposition))))
        }
        _ => {
            let Some(path) = p.opt_str("input")? else {
                return invalid("graph=file needs input=<path>");
            };
            Ok((Arc::new(pre(exlab_core::io::parse_graph(&read_text(&path)?))?), None))
        }
    }
}

fn rs_stats(out: TrialOutput, d: &RsDecomposition) -> TrialOutput {
    out.stat("n", d.n() as f64)
        .stat("t", d.t() as f64)
        .stat("vertices", d.graph.n() as f64)
        .stat("edges", d.graph.m() as f64)
}

pub fn resolve(op: &str, p: &mut Params) -> LabResult<Operation> {
    match op {
        "behrend" => {
            let n = p.at_least("N", 1000, 1)?;
            if n > MAX_BEHREND_N {
                return invalid(format!("N must be <= {MAX_BEHREND_N}, got {n}"));
            }
            let samples = p.usize("samples", 100_000)?;
            Ok(Operation::new(true, Some("size"), move |rng| {
                let s = behrend_set(n)?;
                let check = check_ap_free(&s.elements, samples, rng);
                Ok(TrialOutput::new(check.is_ok(), check.is_ok(), &s.elements)
                    .stat("size", s.elements.len() as f64)
                    .stat("shell_size", s.shell_size as f64)
                    .stat("d", s.d as f64)
                    .stat("j", s.j as f64)
                    .stat("exact_check", flag(check == Ok(true))))
            }))
        }
        "construct" | "double" => {
            let n = p.at_least("N", 3000, 15)?;
            let chunk = p.opt_usize("chunk")?;
            let double = op == "double";
            Ok(Operation::new(true, Some("t"), move |_| {
                let c = rs_from_behrend(n, chunk)?;
                let mut ok = verify_rs(&c.decomposition).is_ok();
                let d = if double {
                    let d = bipartite_double(&c.decomposition);
                    ok &= verify_rs(&d).is_ok();
                    d
                } else {
                    c.decomposition
                };
                Ok(rs_stats(TrialOutput::new(ok, ok, &d), &d).stat("dropped", c.dropped as f64))
            }))
        }
        "decompose" => {
            let (g, _) = host(p)?;
            let n = p.at_least("n", 2, 1)?;
            let t = p.at_least("t", 1, 1)?;
            let budget = p.u64("budget", DEFAULT_MATCHING_BUDGET)?;
            Ok(Operation::new(false, Some("extracted"), move |_| {
                Ok(match greedy_decompose(&g, n, t, budget)? {
                    Decomposition::Rs(d) => {
                        let ok = verify_rs(&d).is_ok();
                        rs_stats(TrialOutput::new(ok, ok, &d), &d)
                            .stat("extracted", d.t() as f64)
                            .stat("falsified", 0.0)
                    }
                    Decomposition::Falsified { coloring, extracted } => {
                        let degree_ok = max_degree(g.n(), &coloring.red) == coloring.red_max_degree
                            && coloring.red_max_degree < t;
                        let blue_free = matches!(
                            find_induced_matching(&g, &coloring.blue, n, u64::MAX),
                            MatchingSearch::NotFound { exhaustive: true, .. }
                        );
                        let ok = degree_ok && blue_free && verify_falsifying(&g, &coloring.red, t, n);
                        TrialOutput::new(ok, ok, &coloring)
                            .stat("extracted", extracted as f64)
                            .stat("falsified", 1.0)
                            .stat("red_max_degree", coloring.red_max_degree as f64)
                    }
                    Decomposition::Unknown { extracted, reason } => {
                        TrialOutput::new(false, true, json!({ "reason": reason })).stat("extracted", extracted.len() as f64)
                    }
                })
            }))
        }
        _ => {
            let (g, rs) = host(p)?;
            let n = p.at_least("n", 2, 1)?;
            let t = p.at_least("t", 2, 1)?;
            let mode = match p.choice("mode", &["exhaustive", "theorem"])?.as_str() {
                "exhaustive" => ArrowMode::Exhaustive,
                _ => ArrowMode::Theorem,
            };
            Ok(Operation::new(false, Some("arrows"), move |_| {
                let inst = arrow_check(&g, t, n, mode, rs.as_deref())?;
                let (success, holds, arrows) = match &inst.verdict {
                    ArrowVerdict::Arrows { .. } | ArrowVerdict::ArrowsByTheorem { .. } => (true, true, 1.0),
                    ArrowVerdict::Falsified { red } => {
                        let ok = verify_falsifying(&g, red, t, n);
                        (ok, ok, 0.0)
                    }
                    ArrowVerdict::Unknown { .. } => (false, true, 0.0),
                };
                Ok(TrialOutput::new(success, holds, &inst).stat("arrows", arrows).stat("edges", g.m() as f64))
            }))
        }
    }
}
