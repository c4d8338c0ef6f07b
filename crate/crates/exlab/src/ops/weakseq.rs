use exlab_core::generate::gnp;
use exlab_core::preset::Preset;
use exlab_core::weakseq::{
    max_weakly_complete_order, minor_pipeline, regime2_t, verify_minor, verify_sequence, weak_sequence_pipeline,
};
use serde_json::json;

use super::{flag, Operation, TrialOutput};
use crate::error::{invalid, LabResult};
use crate::params::Params;

pub const OPS: &[&str] = &["pipeline", "minor", "oracle"];

pub fn resolve(op: &str, p: &mut Params, preset: &Preset) -> LabResult<Operation> {
    let env = preset.envelopes.clone();
    let cap = p.at_least("retry_cap", 1000, 1)?;
    match op {
        "pipeline" => {
            let n = p.at_least("n", 2000, 2)?;
            let prob = p.prob("p", 0.5)?;
            let r = p.at_least("r", 4, 1)?;
            let t = p.at_least("t", regime2_t(n, prob, r), 1)?;
            Ok(Operation::new(false, Some("h"), move |rng| {
                let g = gnp(n, prob, rng);
                let out = weak_sequence_pipeline(&g, r, t, &env, rng, cap)?;
                let verified = verify_sequence(&g, &out.sequence).is_ok();
                let held = out.stats.checks.iter().filter(|c| c.holds).count();
                let all = held == out.stats.checks.len();
                Ok(TrialOutput::new(verified && all, verified && all, &out.sequence)
                    .stat("case", out.stats.case)
                    .stat("checks", out.stats.checks.len() as f64)
                    .stat("checks_held", held as f64)
                    .stat("s_size", out.stats.s_size as f64)
                    .stat("h", out.stats.h as f64)
                    .stat("kept_b", out.stats.kept_b as f64)
                    .stat("t_density", out.stats.t_density)
                    .stat("cross_density", out.cross_density)
                    .stat("ktt_nodes", out.stats.ktt_nodes as f64))
            }))
        }
        "minor" => {
            let sc = &preset.scenario;
            let n = p.at_least("n", sc.n, 2)?;
            let prob = p.prob("p", sc.p)?;
            let r = p.at_least("r", sc.r, 1)?;
            let t = p.at_least("t", sc.t, 1)?;
            let consts = preset.weakseq.clone();
            Ok(Operation::new(false, Some("max_branch"), move |rng| {
                let g = gnp(n, prob, rng);
                let out = minor_pipeline(&g, r, t, &consts, &env, rng, cap)?;
                let m = &out.model;
                let ok = verify_minor(&g, m).is_ok() && m.branch_sets.iter().all(|b| b.len() <= m.size_cap);
                let max = m.branch_sets.iter().map(Vec::len).max().unwrap_or(0);
                Ok(TrialOutput::new(ok, ok, m)
                    .stat("branch_sets", m.branch_sets.len() as f64)
                    .stat("max_branch", max as f64)
                    .stat("size_cap", m.size_cap as f64)
                    .stat("in_regime", flag(out.stats.in_regime))
                    .stat("pruned", out.stats.pruned as f64))
            }))
        }
        _ => {
            let n = p.at_least("n", 10, 1)?;
            if n > env.oracle_max_n {
                return invalid(format!("oracle envelope is n <= {}, got {n}", env.oracle_max_n));
            }
            let prob = p.prob("p", 0.5)?;
            let r = p.at_least("r", 2, 1)?;
            Ok(Operation::new(false, Some("order"), move |rng| {
                let g = gnp(n, prob, rng);
                let (order, seq) = max_weakly_complete_order(&g, r, env.oracle_max_n)?;
                let ok = seq.s.len() == order && (order == 0 || verify_sequence(&g, &seq).is_ok());
                Ok(TrialOutput::new(ok, ok, json!({ "order": order, "sequence": seq })).stat("order", order as f64))
            }))
        }
    }
}
