//! Per-module operations. Resolving validates the parameters and yields a
//! closure that runs one trial from its own random stream.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use exlab_core::preset::Preset;
use exlab_core::RngStream;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::{invalid, LabResult};
use crate::params::{ParamMap, Params};

mod bipfree;
mod embed;
mod removal;
mod rsgraph;
mod setmap;
mod weakseq;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Module {
    Setmap,
    Bipfree,
    Embed,
    Weakseq,
    Rsgraph,
    Removal,
}

impl Module {
    pub const ALL: [Module; 6] = [
        Module::Setmap,
        Module::Bipfree,
        Module::Embed,
        Module::Weakseq,
        Module::Rsgraph,
        Module::Removal,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Module::Setmap => "setmap",
            Module::Bipfree => "bipfree",
            Module::Embed => "embed",
            Module::Weakseq => "weakseq",
            Module::Rsgraph => "rsgraph",
            Module::Removal => "removal",
        }
    }

    pub fn ops(self) -> &'static [&'static str] {
        match self {
            Module::Setmap => setmap::OPS,
            Module::Bipfree => bipfree::OPS,
            Module::Embed => embed::OPS,
            Module::Weakseq => weakseq::OPS,
            Module::Rsgraph => rsgraph::OPS,
            Module::Removal => removal::OPS,
        }
    }
}

impl fmt::Display for Module {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Module {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        Module::ALL
            .into_iter()
            .find(|m| m.name() == s)
            .ok_or_else(|| format!("unknown module {s:?}"))
    }
}

/// What one trial produced. `holds` is false only when an output failed
/// its own re-verification.
#[derive(Clone, Debug)]
pub struct TrialOutput {
    pub success: bool,
    pub holds: bool,
    pub witness: Value,
    pub stats: BTreeMap<String, f64>,
}

impl TrialOutput {
    pub fn new(success: bool, holds: bool, witness: impl Serialize) -> Self {
        TrialOutput {
            success,
            holds,
            witness: serde_json::to_value(witness).unwrap_or(Value::Null),
            stats: BTreeMap::new(),
        }
    }

    pub fn stat(mut self, key: &str, value: impl Into<f64>) -> Self {
        self.stats.insert(key.to_string(), value.into());
        self
    }
}

type TrialFn = dyn Fn(&mut RngStream) -> exlab_core::Result<TrialOutput> + Send + Sync;

pub struct Operation {
    /// Not succeeding breaks a hard postcondition.
    pub guaranteed: bool,
    /// Statistic the report summarises.
    pub key_stat: Option<&'static str>,
    trial: Box<TrialFn>,
}

impl Operation {
    pub fn new(
        guaranteed: bool,
        key_stat: Option<&'static str>,
        trial: impl Fn(&mut RngStream) -> exlab_core::Result<TrialOutput> + Send + Sync + 'static,
    ) -> Self {
        Operation {
            guaranteed,
            key_stat,
            trial: Box::new(trial),
        }
    }

    pub fn run(&self, rng: &mut RngStream) -> exlab_core::Result<TrialOutput> {
        (self.trial)(rng)
    }
}

pub struct Resolved {
    pub params: ParamMap,
    pub op: Operation,
}

/// Validates `params` against the operation's preconditions.
pub fn resolve(module: Module, op: &str, params: ParamMap, preset: &Preset) -> LabResult<Resolved> {
    if !module.ops().contains(&op) {
        return invalid(format!("{module} has no op {op:?} (expected one of {:?})", module.ops()));
    }
    let mut p = Params::new(params);
    let op = match module {
        Module::Setmap => setmap::resolve(op, &mut p)?,
        Module::Bipfree => bipfree::resolve(op, &mut p)?,
        Module::Embed => embed::resolve(op, &mut p)?,
        Module::Weakseq => weakseq::resolve(op, &mut p, preset)?,
        Module::Rsgraph => rsgraph::resolve(op, &mut p)?,
        Module::Removal => removal::resolve(op, &mut p)?,
    };
    Ok(Resolved {
        params: p.finish()?,
        op,
    })
}

pub(crate) fn flag(b: bool) -> f64 {
    if b {
        1.0
    } else {
        0.0
    }
}

pub(crate) fn read_text(path: &str) -> LabResult<String> {
    std::fs::read_to_string(path).map_err(|source| crate::error::LabError::Io {
        path: path.to_string(),
        source,
    })
}

/// Core precondition failures found while resolving count as validation.
pub(crate) fn pre<T>(r: exlab_core::Result<T>) -> LabResult<T> {
    r.map_err(|e| crate::error::LabError::Validation(e.to_string()))
}

/// Input graph of a trial: read once from a file, or drawn per trial.
pub(crate) enum GraphSource {
    Fixed(std::sync::Arc<exlab_core::Graph>),
    Gnp { n: usize, p: f64 },
}

impl GraphSource {
    /// `graph = gnp | file | kbip`, with `n, p`, `input`, or `a, b`.
    pub(crate) fn from_params(p: &mut Params, n: usize) -> LabResult<Self> {
        match p.choice("graph", &["gnp", "file", "kbip"])?.as_str() {
            "gnp" => Ok(GraphSource::Gnp {
                n: p.at_least("n", n, 1)?,
                p: p.prob("p", 0.5)?,
            }),
            "file" => {
                let Some(path) = p.opt_str("input")? else {
                    return invalid("graph=file needs input=<path>");
                };
                let g = pre(exlab_core::io::parse_graph(&read_text(&path)?))?;
                Ok(GraphSource::Fixed(g.into()))
            }
            _ => {
                let a = p.at_least("a", 10, 1)?;
                let b = p.at_least("b", 10, 1)?;
                Ok(GraphSource::Fixed(exlab_core::BipartiteGraph::complete(a, b).to_graph().into()))
            }
        }
    }

    pub(crate) fn draw(&self, rng: &mut RngStream) -> std::sync::Arc<exlab_core::Graph> {
        match self {
            GraphSource::Fixed(g) => g.clone(),
            GraphSource::Gnp { n, p } => exlab_core::generate::gnp(*n, *p, rng).into(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn module_names_round_trip() {
        for m in Module::ALL {
            assert_eq!(m.name().parse::<Module>().unwrap(), m);
            assert_eq!(serde_json::to_value(m).unwrap(), Value::from(m.name()));
        }
        assert!("graphs".parse::<Module>().is_err());
    }

    #[test]
    fn trials_are_deterministic_per_stream() {
        let preset = Preset::desk();
        let r = resolve(Module::Bipfree, "extract", ParamMap::new(), &preset).unwrap();
        let a = r.op.run(&mut RngStream::for_trial(1, 3)).unwrap();
        let b = r.op.run(&mut RngStream::for_trial(1, 3)).unwrap();
        assert_eq!(a.witness, b.witness);
        assert!(a.success && a.holds && a.stats["size/floor ratio"] >= 1.0);
    }
}
