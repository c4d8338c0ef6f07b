//! Experiment runner for `exlab-core`: validated specs, parallel trials,
//! replayable records and summary reports.

pub mod error;
pub mod ops;
pub mod params;
pub mod record;
pub mod report;
pub mod spec;

pub use error::{LabError, LabResult};
pub use ops::Module;
pub use record::{replay, run, ExperimentRecord, RecordFormat, TrialOutcome, SCHEMA_VERSION};
pub use report::{render, report, ReportFormat, ReportRow};
pub use spec::ExperimentSpec;
