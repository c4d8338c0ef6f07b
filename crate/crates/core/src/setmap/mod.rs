//! Set mappings `f : C(M, k) -> C(M, l)` on grids, the deletion arguments
//! that find a violating `k`-set inside every large point set, and a
//! branch-and-bound oracle for the largest free set.

mod mapping;
mod oracle;
mod violator;

pub use mapping::{caro_map, eh_map, EhVariant, Ground, Rule, SetMapping};
pub use oracle::{free_set_oracle, is_free, FreeMode, FreeSetBound, MAX_ORACLE_GROUND};
pub use violator::{caro_violator, eh_violator, guarantee_threshold, Found, Violation};

use rand::seq::index::sample;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{require, Result};
use crate::rng::RngStream;

/// Outcome of one sampled point set.
#[derive(Clone, Debug, Serialize)]
pub struct SampleOutcome {
    pub set: Vec<usize>,
    pub violation: Option<Violation>,
    pub verified: bool,
}

/// Runs the matching violator on one point set and re-verifies the answer.
pub fn violate(f: &SetMapping, set: &[usize]) -> Result<SampleOutcome> {
    let violation = match f.rule {
        Rule::ErdosHajnal { .. } => eh_violator(f, set)?,
        Rule::Caro => caro_violator(f, set)?,
    };
    let verified = violation.as_ref().map_or(false, |v| v.verify(f, set));
    Ok(SampleOutcome {
        set: set.to_vec(),
        violation,
        verified,
    })
}

/// Samples `trials` uniform point sets of the given size, trial `i` drawing
/// from stream `(seed, i)`, and runs [`violate`] on each in parallel.
pub fn sample_violations(
    f: &SetMapping,
    size: usize,
    trials: usize,
    seed: u64,
) -> Result<Vec<SampleOutcome>> {
    let m = f.ground_size();
    require(size <= m, || format!("cannot sample {size} of {m} points"))?;
    (0..trials)
        .into_par_iter()
        .map(|i| {
            let mut rng = RngStream::for_trial(seed, i as u64);
            let mut set = sample(&mut rng, m, size).into_vec();
            set.sort_unstable();
            violate(f, &set)
        })
        .collect()
}
