use thiserror::Error;

/// Errors shared by every module of the engine.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("not expandable: denominator has zero constant term")]
    NotExpandable,
    #[error("exp undefined in truncation: nonzero constant term")]
    ExpUndefined,
    #[error("series is not a PBW series: negative rank {value} in degree {degree}")]
    NotPbw { degree: usize, value: String },
    #[error("not a cycle: {0}")]
    NotCycle(String),
    #[error("resource budget exceeded: {0}")]
    Budget(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("prime fields disagree: {0}")]
    PrimeDisagreement(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn invalid<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Invalid(msg.into()))
}
