use std::path::PathBuf;

use exlab_core::preset::Preset;
use serde::{Deserialize, Serialize};

use crate::error::{invalid, LabError, LabResult};
use crate::ops::{resolve, Module, Resolved};
use crate::params::ParamMap;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExperimentSpec {
    pub module: Module,
    pub op: String,
    #[serde(default)]
    pub params: ParamMap,
    pub seed: u64,
    pub trials: usize,
    #[serde(default)]
    pub out: Option<PathBuf>,
    /// `paper`, `desk`, or a path to a preset TOML file.
    pub preset: String,
}

impl ExperimentSpec {
    pub fn new(module: Module, op: &str) -> Self {
        ExperimentSpec {
            module,
            op: op.to_string(),
            params: ParamMap::new(),
            seed: 0,
            trials: 1,
            out: None,
            preset: "desk".into(),
        }
    }

    pub fn param(mut self, key: &str, value: impl Into<serde_json::Value>) -> Self {
        self.params.insert(key.to_string(), value.into());
        self
    }

    pub fn seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn trials(mut self, trials: usize) -> Self {
        self.trials = trials;
        self
    }

    pub fn load_preset(&self) -> LabResult<Preset> {
        match self.preset.as_str() {
            "paper" | "desk" => Ok(Preset::by_name(&self.preset)?),
            path => {
                let text = std::fs::read_to_string(path).map_err(|source| LabError::Io {
                    path: path.to_string(),
                    source,
                })?;
                Ok(Preset::from_toml(&text)?)
            }
        }
    }

    /// Checks everything that can be checked without running a trial and
    /// fills in defaults.
    pub fn validate(&self) -> LabResult<(ExperimentSpec, Resolved)> {
        if self.trials == 0 {
            return invalid("trials must be >= 1");
        }
        let preset = self.load_preset()?;
        let resolved = resolve(self.module, &self.op, self.params.clone(), &preset)?;
        let spec = ExperimentSpec {
            params: resolved.params.clone(),
            ..self.clone()
        };
        Ok((spec, resolved))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn validate_fills_defaults() {
        let (spec, _) = ExperimentSpec::new(Module::Rsgraph, "construct").validate().unwrap();
        assert_eq!(spec.params["N"], serde_json::json!(3000));
        let (spec, _) = ExperimentSpec::new(Module::Weakseq, "minor").validate().unwrap();
        let desk = Preset::desk().scenario;
        assert_eq!(spec.params["n"], serde_json::json!(desk.n));
    }

    #[test]
    fn preset_by_name_or_path() {
        let path = concat!(env!("CARGO_MANIFEST_DIR"), "/../../presets/desk.toml");
        let mut spec = ExperimentSpec::new(Module::Weakseq, "minor");
        spec.preset = path.into();
        assert_eq!(spec.load_preset().unwrap(), Preset::desk());
        spec.preset = "nope.toml".into();
        assert!(matches!(spec.validate(), Err(LabError::Io { .. })));
    }

    #[test]
    fn every_op_resolves_with_defaults() {
        for m in Module::ALL {
            for op in m.ops() {
                let spec = ExperimentSpec::new(m, op);
                assert!(spec.validate().is_ok(), "{m} {op}: {:?}", spec.validate().err());
            }
        }
        assert!(ExperimentSpec::new(Module::Embed, "nope").validate().is_err());
        assert!(ExperimentSpec::new(Module::Setmap, "violate").param("bogus", 1).validate().is_err());
    }
}
