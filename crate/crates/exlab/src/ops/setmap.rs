use exlab_core::setmap::{
    caro_map, eh_map, free_set_oracle, guarantee_threshold, is_free, violate, EhVariant, FreeMode, Found, Rule,
    SetMapping, MAX_ORACLE_GROUND,
};
use rand::seq::index::sample;
use serde_json::json;

use super::{flag, pre, Operation, TrialOutput};
use crate::error::{invalid, LabResult};
use crate::params::Params;

pub const OPS: &[&str] = &["violate", "oracle"];

fn mapping(p: &mut Params) -> LabResult<SetMapping> {
    match p.choice("map", &["eh", "caro"])?.as_str() {
        "eh" => {
            let n = p.at_least("n", 6, 2)?;
            let k = p.at_least("k", 2, 2)?;
            let variant = match p.choice("variant", &["full", "lex"])?.as_str() {
                "full" => EhVariant::FullFactorial,
                _ => EhVariant::Lexicographic,
            };
            pre(eh_map(n, k, variant))
        }
        _ => {
            let m = p.at_least("m", 3, 2)?;
            let dim = p.at_least("dim", 2, 2)?;
            pre(caro_map(m, dim))
        }
    }
}

pub fn resolve(op: &str, p: &mut Params) -> LabResult<Operation> {
    let f = mapping(p)?;
    let threshold = guarantee_threshold(&f);
    let ground = f.ground_size();
    match op {
        "violate" => {
            let size = p.usize("size", threshold + 1)?;
            if size > ground {
                return invalid(format!("size {size} exceeds the {ground} ground points"));
            }
            Ok(Operation::new(size > threshold, Some("found"), move |rng| {
                let mut set = sample(rng, ground, size).into_vec();
                set.sort_unstable();
                let out = violate(&f, &set)?;
                let found = out.violation.is_some();
                let deletion = out.violation.as_ref().is_some_and(|v| v.found == Found::Deletion);
                Ok(TrialOutput::new(found && out.verified, !found || out.verified, &out)
                    .stat("size", size as f64)
                    .stat("found", flag(found))
                    .stat("deletion", flag(deletion)))
            }))
        }
        _ => {
            if ground > MAX_ORACLE_GROUND {
                return invalid(format!("oracle envelope is {MAX_ORACLE_GROUND} ground points, got {ground}"));
            }
            let budget = p.u64("budget", 10_000_000)?;
            let mode = match f.rule {
                Rule::Caro => FreeMode::NotSubset,
                Rule::ErdosHajnal { .. } => FreeMode::Disjoint,
            };
            Ok(Operation::new(false, Some("lower"), move |_| {
                let b = free_set_oracle(&f, mode, budget)?;
                let holds = is_free(&f, mode, &b.witness) && b.lower <= threshold;
                Ok(TrialOutput::new(b.is_exact(), holds, json!({ "lower": b.lower, "upper": b.upper, "witness": b.witness }))
                    .stat("lower", b.lower as f64)
                    .stat("upper", b.upper as f64)
                    .stat("threshold", threshold as f64)
                    .stat("nodes", b.nodes as f64))
            }))
        }
    }
}
