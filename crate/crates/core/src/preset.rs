//! Named constant sets. `paper` reproduces the constants of the proofs,
//! `desk` scales them so every stage does real work at desk scale.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

const PAPER: &str = include_str!("../../../presets/paper.toml");
const DESK: &str = include_str!("../../../presets/desk.toml");

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WeakseqConstants {
    /// Vertices of degree below `cleanup_degree * p n` are deleted.
    pub cleanup_degree: f64,
    pub bip_edge_fraction: f64,
    pub bip_min_degree: f64,
    /// Paths-DRC needs `p^2 n >= drc_guard`.
    pub drc_guard: f64,
    pub drc_size_divisor: f64,
    pub drc_path_coeff: f64,
    pub drc_path_exponent: i32,
    pub xprime_divisor: f64,
    pub z_degree: f64,
    pub zprime_density: f64,
    pub w_density: f64,
    pub size_cap_factor: usize,
    pub diameter_rule: bool,
    pub diameter_cap: usize,
    /// Drop branch-set vertices the model does not need.
    pub prune: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Envelopes {
    pub ktt_max_t: usize,
    pub ktt_node_budget: u64,
    pub oracle_max_n: usize,
}

/// Default instance for the minor experiment.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Scenario {
    pub n: usize,
    pub p: f64,
    pub r: usize,
    pub t: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Preset {
    pub name: String,
    pub weakseq: WeakseqConstants,
    pub envelopes: Envelopes,
    pub scenario: Scenario,
}

impl Preset {
    pub fn from_toml(text: &str) -> Result<Self> {
        toml::from_str(text).map_err(|e| Error::Config(e.to_string()))
    }

    pub fn paper() -> Self {
        Self::from_toml(PAPER).expect("bundled paper preset parses")
    }

    pub fn desk() -> Self {
        Self::from_toml(DESK).expect("bundled desk preset parses")
    }

    pub fn by_name(name: &str) -> Result<Self> {
        match name {
            "paper" => Ok(Self::paper()),
            "desk" => Ok(Self::desk()),
            other => Err(Error::Config(format!("unknown preset {other:?} (expected paper or desk)"))),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bundled_presets_parse() {
        let paper = Preset::paper();
        assert_eq!(paper.weakseq.drc_guard, 1600.0);
        assert_eq!(paper.weakseq.xprime_divisor, 400.0);
        assert_eq!(Preset::by_name("desk").unwrap().name, "desk");
        assert!(Preset::by_name("lab").is_err());
    }

    #[test]
    fn unknown_keys_rejected() {
        let text = DESK.replace("prune = true", "prune = true\nsurprise = 1");
        assert!(Preset::from_toml(&text).is_err());
    }
}
