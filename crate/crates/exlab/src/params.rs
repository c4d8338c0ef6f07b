//! Typed access to a spec's parameter map. Every lookup records the value
//! actually used, defaults included, so the resolved map can be echoed.

use std::collections::{BTreeMap, BTreeSet};

use serde_json::Value;

use crate::error::{invalid, LabResult};

pub type ParamMap = BTreeMap<String, Value>;

pub struct Params {
    given: ParamMap,
    used: BTreeSet<String>,
    resolved: ParamMap,
}

impl Params {
    pub fn new(given: ParamMap) -> Self {
        Params {
            given,
            used: BTreeSet::new(),
            resolved: ParamMap::new(),
        }
    }

    pub fn has(&self, key: &str) -> bool {
        self.given.contains_key(key)
    }

    fn take(&mut self, key: &str) -> Option<Value> {
        self.used.insert(key.to_string());
        self.given.get(key).cloned()
    }

    fn record(&mut self, key: &str, v: Value) {
        self.resolved.insert(key.to_string(), v);
    }

    pub fn opt_u64(&mut self, key: &str) -> LabResult<Option<u64>> {
        let v = match self.take(key) {
            None | Some(Value::Null) => return Ok(None),
            Some(v) => v,
        };
        let n = match &v {
            Value::Number(n) => n.as_u64(),
            Value::String(s) => s.trim().parse().ok(),
            _ => None,
        };
        match n {
            Some(n) => {
                self.record(key, Value::from(n));
                Ok(Some(n))
            }
            None => invalid(format!("{key} must be a non-negative integer, got {v}")),
        }
    }

    pub fn opt_usize(&mut self, key: &str) -> LabResult<Option<usize>> {
        Ok(self.opt_u64(key)?.map(|n| n as usize))
    }

    pub fn usize(&mut self, key: &str, default: usize) -> LabResult<usize> {
        let n = self.opt_usize(key)?.unwrap_or(default);
        self.record(key, Value::from(n));
        Ok(n)
    }

    pub fn u64(&mut self, key: &str, default: u64) -> LabResult<u64> {
        let n = self.opt_u64(key)?.unwrap_or(default);
        self.record(key, Value::from(n));
        Ok(n)
    }

    /// Integer at least `min`.
    pub fn at_least(&mut self, key: &str, default: usize, min: usize) -> LabResult<usize> {
        let n = self.usize(key, default)?;
        if n < min {
            return invalid(format!("{key} must be >= {min}, got {n}"));
        }
        Ok(n)
    }

    pub fn opt_f64(&mut self, key: &str) -> LabResult<Option<f64>> {
        let v = match self.take(key) {
            None | Some(Value::Null) => return Ok(None),
            Some(v) => v,
        };
        let x = match &v {
            Value::Number(n) => n.as_f64(),
            Value::String(s) => s.trim().parse().ok(),
            _ => None,
        };
        match x {
            Some(x) if x.is_finite() => {
                self.record(key, Value::from(x));
                Ok(Some(x))
            }
            _ => invalid(format!("{key} must be a finite number, got {v}")),
        }
    }

    pub fn f64(&mut self, key: &str, default: f64) -> LabResult<f64> {
        let x = self.opt_f64(key)?.unwrap_or(default);
        self.record(key, Value::from(x));
        Ok(x)
    }

    /// A probability in `[0, 1]`.
    pub fn prob(&mut self, key: &str, default: f64) -> LabResult<f64> {
        let x = self.f64(key, default)?;
        if !(0.0..=1.0).contains(&x) {
            return invalid(format!("{key} must lie in [0, 1], got {x}"));
        }
        Ok(x)
    }

    pub fn opt_str(&mut self, key: &str) -> LabResult<Option<String>> {
        match self.take(key) {
            None | Some(Value::Null) => Ok(None),
            Some(Value::String(s)) => {
                self.record(key, Value::from(s.clone()));
                Ok(Some(s))
            }
            Some(v) => invalid(format!("{key} must be a string, got {v}")),
        }
    }

    /// One of `choices`, the first being the default.
    pub fn choice(&mut self, key: &str, choices: &[&str]) -> LabResult<String> {
        let s = self.opt_str(key)?.unwrap_or_else(|| choices[0].to_string());
        if !choices.contains(&s.as_str()) {
            return invalid(format!("{key} must be one of {choices:?}, got {s:?}"));
        }
        self.record(key, Value::from(s.clone()));
        Ok(s)
    }

    /// Fails on keys no lookup asked for, then returns the resolved map.
    pub fn finish(self) -> LabResult<ParamMap> {
        let unknown: Vec<_> = self.given.keys().filter(|k| !self.used.contains(*k)).cloned().collect();
        if !unknown.is_empty() {
            return invalid(format!("unknown parameter(s) {unknown:?}"));
        }
        Ok(self.resolved)
    }
}

/// `k=v` pairs joined by commas, keys in order.
pub fn compact(params: &ParamMap) -> String {
    params
        .iter()
        .map(|(k, v)| match v {
            Value::String(s) => format!("{k}={s}"),
            v => format!("{k}={v}"),
        })
        .collect::<Vec<_>>()
        .join(",")
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    fn map(v: Value) -> ParamMap {
        serde_json::from_value(v).unwrap()
    }

    #[test]
    fn defaults_are_recorded() {
        let mut p = Params::new(map(json!({"n": 6})));
        assert_eq!(p.usize("n", 3).unwrap(), 6);
        assert_eq!(p.usize("k", 2).unwrap(), 2);
        assert_eq!(compact(&p.finish().unwrap()), "k=2,n=6");
    }

    #[test]
    fn rejects_bad_values_and_unknown_keys() {
        let mut p = Params::new(map(json!({"r": 0, "p": 1.5, "extra": 1})));
        assert!(p.at_least("r", 2, 1).is_err());
        assert!(p.prob("p", 0.5).is_err());
        assert!(p.finish().is_err());
        let mut p = Params::new(map(json!({"n": "12", "mode": "x"})));
        assert_eq!(p.usize("n", 0).unwrap(), 12);
        assert!(p.choice("mode", &["a", "b"]).is_err());
    }
}
