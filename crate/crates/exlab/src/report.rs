//! Summary tables over saved records.

use std::path::{Path, PathBuf};

use serde::Serialize;
use serde_json::Value;

use crate::error::{LabError, LabResult};
use crate::params::compact;
use crate::record::{ExperimentRecord, SCHEMA_VERSION};

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ReportRow {
    pub module: String,
    pub op: String,
    pub params: String,
    pub trials: usize,
    pub success_rate: Option<f64>,
    pub key_stat: String,
    pub key_mean: Option<f64>,
    pub key_min: Option<f64>,
    /// Non-empty when the record could not be summarised as is.
    pub flag: String,
    pub path: PathBuf,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum ReportFormat {
    Json,
    Csv,
    Md,
}

fn row(path: &Path) -> LabResult<ReportRow> {
    let bad = |message: String| LabError::Record {
        path: path.display().to_string(),
        message,
    };
    let text = std::fs::read_to_string(path).map_err(|source| LabError::Io {
        path: path.display().to_string(),
        source,
    })?;
    let value: Value = serde_json::from_str(&text).map_err(|e| bad(e.to_string()))?;
    let version = value.get("schema_version").and_then(Value::as_u64);
    if version != Some(SCHEMA_VERSION as u64) {
        let spec = value.get("spec");
        let field = |k: &str| spec.and_then(|s| s.get(k)).and_then(Value::as_str).unwrap_or("?").to_string();
        let found = version.map_or("missing".to_string(), |v| v.to_string());
        return Ok(ReportRow {
            module: field("module"),
            op: field("op"),
            params: String::new(),
            trials: 0,
            success_rate: None,
            key_stat: String::new(),
            key_mean: None,
            key_min: None,
            flag: format!("schema version {found}, expected {SCHEMA_VERSION}"),
            path: path.to_path_buf(),
        });
    }
    let rec: ExperimentRecord = serde_json::from_value(value).map_err(|e| bad(e.to_string()))?;
    let agg = &rec.aggregate;
    let key = agg.key_stat.clone().unwrap_or_default();
    let summary = agg.stats.get(&key);
    Ok(ReportRow {
        module: rec.spec.module.to_string(),
        op: rec.spec.op.clone(),
        params: compact(&rec.spec.params),
        trials: agg.trials,
        success_rate: Some(agg.success_rate),
        key_stat: key,
        key_mean: summary.map(|s| s.mean),
        key_min: summary.map(|s| s.min),
        flag: if agg.all_hold { String::new() } else { "postcondition failed".into() },
        path: path.to_path_buf(),
    })
}

/// One row per record, sorted by module then op.
pub fn report(paths: &[PathBuf]) -> LabResult<Vec<ReportRow>> {
    let mut rows = paths.iter().map(|p| row(p)).collect::<LabResult<Vec<_>>>()?;
    rows.sort_by(|a, b| (&a.module, &a.op, &a.path).cmp(&(&b.module, &b.op, &b.path)));
    Ok(rows)
}

fn num(x: Option<f64>) -> String {
    x.map(|v| format!("{v:.4}")).unwrap_or_default()
}

const HEADER: [&str; 10] = [
    "module",
    "op",
    "params",
    "trials",
    "success_rate",
    "key_stat",
    "key_mean",
    "key_min",
    "flag",
    "path",
];

fn cells(r: &ReportRow) -> [String; 10] {
    [
        r.module.clone(),
        r.op.clone(),
        r.params.clone(),
        r.trials.to_string(),
        num(r.success_rate),
        r.key_stat.clone(),
        num(r.key_mean),
        num(r.key_min),
        r.flag.clone(),
        r.path.display().to_string(),
    ]
}

pub fn render(rows: &[ReportRow], format: ReportFormat) -> LabResult<String> {
    Ok(match format {
        ReportFormat::Json => serde_json::to_string_pretty(rows)?,
        ReportFormat::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record(HEADER)?;
            for r in rows {
                w.write_record(cells(r))?;
            }
            String::from_utf8(w.into_inner().map_err(|e| LabError::Validation(e.to_string()))?)
                .expect("csv is utf-8")
        }
        ReportFormat::Md => {
            let mut out = format!("| {} |\n|{}\n", HEADER.join(" | "), "---|".repeat(HEADER.len()));
            for r in rows {
                let cs = cells(r).map(|c| c.replace('|', "\\|"));
                out.push_str(&format!("| {} |\n", cs.join(" | ")));
            }
            out
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::record::{run, write_record, RecordFormat};
    use crate::{ExperimentSpec, Module};

    #[test]
    fn rows_sorted_and_mismatch_flagged() {
        let dir = std::env::temp_dir().join(format!("exlab-report-{}", std::process::id()));
        std::fs::create_dir_all(&dir).unwrap();
        let specs = [
            ExperimentSpec::new(Module::Setmap, "violate"),
            ExperimentSpec::new(Module::Bipfree, "extract").trials(3),
            ExperimentSpec::new(Module::Bipfree, "count"),
        ];
        let mut paths = Vec::new();
        for (i, s) in specs.iter().enumerate() {
            let p = dir.join(format!("{i}.json"));
            write_record(&run(s).unwrap(), &p, RecordFormat::Json).unwrap();
            paths.push(p);
        }
        let old = dir.join("old.json");
        std::fs::write(&old, r#"{"schema_version": 0, "spec": {"module": "removal", "op": "grid"}}"#).unwrap();
        paths.push(old);
        let rows = report(&paths).unwrap();
        let order: Vec<_> = rows.iter().map(|r| (r.module.as_str(), r.op.as_str())).collect();
        assert_eq!(order, [("bipfree", "count"), ("bipfree", "extract"), ("removal", "grid"), ("setmap", "violate")]);
        assert_eq!(rows[2].flag, "schema version 0, expected 1");
        assert!(rows[1].key_stat == "size/floor ratio" && rows[1].key_min.unwrap() >= 1.0);
        let md = render(&rows, ReportFormat::Md).unwrap();
        assert_eq!(md.lines().count(), 6);
        let csv = render(&rows[..1], ReportFormat::Csv).unwrap();
        assert_eq!(csv.lines().count(), 2);
        std::fs::write(dir.join("junk.json"), "not json").unwrap();
        assert!(report(&[dir.join("junk.json")]).is_err());
        std::fs::remove_dir_all(&dir).unwrap();
    }
}
