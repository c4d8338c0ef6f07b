use exlab_core::embed::{
    bip_ramsey_pipeline, lemma_regime, random_dense_dch, random_two_coloring, resample_embed, split_bipartite,
    verify_embedding, verify_monochromatic, TargetHypergraph,
};
use exlab_core::generate::hypercube;

use super::{flag, pre, Operation, TrialOutput};
use crate::error::{invalid, LabResult};
use crate::params::Params;

pub const OPS: &[&str] = &["resample", "ramsey"];

pub fn resolve(op: &str, p: &mut Params) -> LabResult<Operation> {
    let d = p.at_least("d", 3, 1)?;
    if d > 10 {
        return invalid(format!("cube dimension {d} > 10"));
    }
    let cube = pre(hypercube(d as u32))?;
    match op {
        "resample" => {
            let big_n = p.usize("N", 128)?;
            let delta = p.prob("delta", 0.009)?;
            let cap = p.at_least("round_cap", 10_000, 1)?;
            let target = TargetHypergraph::neighborhoods(&cube);
            if big_n < target.n() {
                return invalid(format!("host needs at least {} vertices, got {big_n}", target.n()));
            }
            Ok(Operation::new(false, Some("rounds"), move |rng| {
                let host = random_dense_dch(big_n, target.k(), delta, rng)?;
                let regime = lemma_regime(&target, &host);
                let e = resample_embed(&target, &host, rng, cap)?;
                let ok = verify_embedding(&target, &host, &e.map);
                Ok(TrialOutput::new(ok, ok, &e.map)
                    .stat("rounds", e.rounds as f64)
                    .stat("in_regime", flag(regime))
                    .stat("missing_top", host.missing_top() as f64))
            }))
        }
        _ => {
            let big_n = p.usize("N", 512)?;
            let cap = p.at_least("retry_cap", 1000, 1)?;
            let h = pre(split_bipartite(&cube))?;
            if big_n < cube.n() {
                return invalid(format!("K_N needs N >= {}, got {big_n}", cube.n()));
            }
            Ok(Operation::new(false, Some("attempts"), move |rng| {
                let c = random_two_coloring(big_n, rng);
                let out = bip_ramsey_pipeline(&c, &h, rng, cap)?;
                let ok = verify_monochromatic(&c, &h, &out.map, out.color);
                Ok(TrialOutput::new(ok, ok, &out)
                    .stat("color", out.color)
                    .stat("u_size", out.u_size as f64)
                    .stat("attempts", out.attempts as f64)
                    .stat("embed_rounds", out.embed_rounds as f64))
            }))
        }
    }
}
