use std::collections::BTreeMap;
use std::path::Path;
use std::time::Instant;

use exlab_core::rng::RNG_ALGORITHM;
use exlab_core::RngStream;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::Value;
use sha2::{Digest, Sha256};

use crate::error::{LabError, LabResult};
use crate::ops::Operation;
use crate::spec::ExperimentSpec;

pub const SCHEMA_VERSION: u32 = 1;
pub const THREADS_ENV: &str = "EXLAB_THREADS";

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RngInfo {
    pub algorithm: String,
    pub seed: u64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TrialOutcome {
    pub index: u64,
    pub success: bool,
    /// Every hard postcondition held.
    pub holds: bool,
    /// sha256 of the canonical JSON witness.
    pub digest: String,
    pub stats: BTreeMap<String, f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Summary {
    pub mean: f64,
    pub min: f64,
    pub max: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Aggregate {
    pub trials: usize,
    pub successes: usize,
    pub success_rate: f64,
    pub all_hold: bool,
    pub key_stat: Option<String>,
    pub stats: BTreeMap<String, Summary>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExperimentRecord {
    pub schema_version: u32,
    pub spec: ExperimentSpec,
    pub rng: RngInfo,
    pub trials: Vec<TrialOutcome>,
    pub aggregate: Aggregate,
    pub wall_clock_ms: u64,
}

impl ExperimentRecord {
    /// Exit status of the run: 0 iff every hard postcondition held.
    pub fn exit_code(&self) -> i32 {
        if self.aggregate.all_hold {
            0
        } else {
            1
        }
    }

    /// The per-trial part, which replays byte for byte.
    pub fn outcome_bytes(&self) -> Vec<u8> {
        serde_json::to_vec(&self.trials).expect("outcomes serialize")
    }
}

pub fn digest(witness: &Value) -> String {
    let bytes = serde_json::to_vec(witness).expect("json values serialize");
    hex::encode(Sha256::digest(&bytes))
}

fn run_trial(op: &Operation, seed: u64, index: u64) -> TrialOutcome {
    let mut rng = RngStream::for_trial(seed, index);
    match op.run(&mut rng) {
        Ok(out) => TrialOutcome {
            index,
            success: out.success,
            holds: out.holds && (out.success || !op.guaranteed),
            digest: digest(&out.witness),
            stats: out.stats,
            error: None,
        },
        Err(e) => TrialOutcome {
            index,
            success: false,
            holds: !op.guaranteed,
            digest: digest(&Value::Null),
            stats: BTreeMap::new(),
            error: Some(e.to_string()),
        },
    }
}

fn aggregate(trials: &[TrialOutcome], key_stat: Option<&str>) -> Aggregate {
    let mut columns: BTreeMap<String, Vec<f64>> = BTreeMap::new();
    for t in trials {
        for (k, &v) in &t.stats {
            columns.entry(k.clone()).or_default().push(v);
        }
    }
    let stats = columns
        .into_iter()
        .map(|(k, vs)| {
            let s = Summary {
                mean: vs.iter().sum::<f64>() / vs.len() as f64,
                min: vs.iter().copied().fold(f64::INFINITY, f64::min),
                max: vs.iter().copied().fold(f64::NEG_INFINITY, f64::max),
            };
            (k, s)
        })
        .collect();
    let successes = trials.iter().filter(|t| t.success).count();
    Aggregate {
        trials: trials.len(),
        successes,
        success_rate: successes as f64 / trials.len().max(1) as f64,
        all_hold: trials.iter().all(|t| t.holds),
        key_stat: key_stat.map(str::to_string),
        stats,
    }
}

fn pool() -> LabResult<rayon::ThreadPool> {
    let mut b = rayon::ThreadPoolBuilder::new();
    if let Ok(v) = std::env::var(THREADS_ENV) {
        let n: usize = v
            .trim()
            .parse()
            .ok()
            .filter(|&n| n >= 1)
            .ok_or_else(|| LabError::Validation(format!("{THREADS_ENV} must be a positive integer, got {v:?}")))?;
        b = b.num_threads(n);
    }
    b.build().map_err(|e| LabError::Validation(format!("thread pool: {e}")))
}

/// Validates, then runs every trial on the pool. Trial `i` draws from
/// stream `(seed, i)`, so outcomes do not depend on scheduling.
pub fn run(spec: &ExperimentSpec) -> LabResult<ExperimentRecord> {
    let (spec, resolved) = spec.validate()?;
    let start = Instant::now();
    let trials: Vec<TrialOutcome> = pool()?.install(|| {
        (0..spec.trials as u64)
            .into_par_iter()
            .map(|i| run_trial(&resolved.op, spec.seed, i))
            .collect()
    });
    let aggregate = aggregate(&trials, resolved.op.key_stat);
    Ok(ExperimentRecord {
        schema_version: SCHEMA_VERSION,
        rng: RngInfo {
            algorithm: RNG_ALGORITHM.to_string(),
            seed: spec.seed,
        },
        spec,
        trials,
        aggregate,
        wall_clock_ms: start.elapsed().as_millis() as u64,
    })
}

/// Re-runs a record's spec.
pub fn replay(record: &ExperimentRecord) -> LabResult<ExperimentRecord> {
    run(&record.spec)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum RecordFormat {
    Json,
    Csv,
}

fn io_err(path: &Path) -> impl FnOnce(std::io::Error) -> LabError + '_ {
    move |source| LabError::Io {
        path: path.display().to_string(),
        source,
    }
}

pub fn record_json(record: &ExperimentRecord) -> String {
    serde_json::to_string_pretty(record).expect("records serialize")
}

/// One row per trial; stat columns are the union over trials.
pub fn record_csv(record: &ExperimentRecord) -> LabResult<String> {
    let keys: std::collections::BTreeSet<&String> = record.trials.iter().flat_map(|t| t.stats.keys()).collect();
    let mut w = csv::Writer::from_writer(Vec::new());
    let mut header = vec!["index", "success", "holds", "digest", "error"];
    header.extend(keys.iter().map(|k| k.as_str()));
    w.write_record(&header)?;
    for t in &record.trials {
        let mut row = vec![
            t.index.to_string(),
            t.success.to_string(),
            t.holds.to_string(),
            t.digest.clone(),
            t.error.clone().unwrap_or_default(),
        ];
        row.extend(keys.iter().map(|k| t.stats.get(*k).map(|v| v.to_string()).unwrap_or_default()));
        w.write_record(&row)?;
    }
    let bytes = w.into_inner().map_err(|e| LabError::Validation(e.to_string()))?;
    Ok(String::from_utf8(bytes).expect("csv is utf-8"))
}

pub fn write_record(record: &ExperimentRecord, path: &Path, format: RecordFormat) -> LabResult<()> {
    let text = match format {
        RecordFormat::Json => record_json(record),
        RecordFormat::Csv => record_csv(record)?,
    };
    std::fs::write(path, text).map_err(io_err(path))
}

pub fn read_record(path: &Path) -> LabResult<ExperimentRecord> {
    let text = std::fs::read_to_string(path).map_err(io_err(path))?;
    serde_json::from_str(&text).map_err(|e| LabError::Record {
        path: path.display().to_string(),
        message: e.to_string(),
    })
}
