use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid graph: {0}")]
    InvalidGraph(String),

    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    /// An input exceeds a fixed resource envelope.
    #[error("resource guard: {0}")]
    ResourceGuard(String),

    #[error("precondition failed: {0}")]
    Precondition(String),

    /// A Las Vegas loop ran out of attempts. `report` summarizes the best
    /// attempt seen.
    #[error("retry cap {cap} exhausted: {report}")]
    RetryCap { cap: usize, report: String },

    #[error("invalid configuration: {0}")]
    Config(String),

    /// Failure inside a named stage of a multi-stage pipeline.
    #[error("stage {stage}: {source}")]
    Stage {
        stage: &'static str,
        #[source]
        source: Box<Error>,
    },
}

impl Error {
    pub fn in_stage(self, stage: &'static str) -> Error {
        Error::Stage {
            stage,
            source: Box::new(self),
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn guard(cond: bool, msg: impl FnOnce() -> String) -> Result<()> {
    if cond {
        Ok(())
    } else {
        Err(Error::ResourceGuard(msg()))
    }
}

pub(crate) fn require(cond: bool, msg: impl FnOnce() -> String) -> Result<()> {
    if cond {
        Ok(())
    } else {
        Err(Error::Precondition(msg()))
    }
}
