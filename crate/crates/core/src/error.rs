use thiserror::Error;

/// Errors produced by the model.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// Scenario text could not be parsed.
    #[error("parse error at `{path}`: {message}")]
    Parse { path: String, message: String },

    /// A parameter violates its documented range.
    #[error("invalid value for `{key}`: {message}")]
    Validation { key: String, message: String },

    /// Argument outside the mathematical domain of an operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// The plant produces nothing, so per-kg quantities are undefined.
    #[error("annual hydrogen output is zero")]
    ZeroOutput,

    /// IRR is undefined for a series without a sign change.
    #[error("no sign change in cash flows; IRR undefined")]
    NoSignChange,

    /// A bracketing solver could not find a sign change in its interval.
    #[error("no root in [{lo}, {hi}]: {detail}")]
    Bracket { lo: f64, hi: f64, detail: String },

    /// Iteration cap reached before convergence.
    #[error("solver did not converge; last bracket [{lo}, {hi}]")]
    NonConvergence { lo: f64, hi: f64 },

    /// Two pathways never reach the same effective cost in the searched range.
    #[error("no switchover between {a} and {b} in [{lo}, {hi}] USD/ton; {dominant} is cheaper throughout")]
    NoCrossing {
        a: String,
        b: String,
        lo: f64,
        hi: f64,
        dominant: String,
    },

    /// Sweep or tornado key does not resolve to a numeric scenario field.
    #[error("unknown parameter `{0}`")]
    UnknownParameter(String),

    /// Metric not defined for the requested pathway/parameter combination.
    #[error("metric mismatch: {0}")]
    Mismatch(String),

    /// Figure not produced by the model.
    #[error("unsupported figure `{id}`: {reason}")]
    UnsupportedFigure { id: String, reason: String },

    /// Chain search was given no candidates.
    #[error("empty candidate set")]
    EmptyCandidates,

    #[error("csv output failed: {0}")]
    Csv(String),
}

impl Error {
    pub(crate) fn validation(key: impl Into<String>, message: impl Into<String>) -> Self {
        Error::Validation {
            key: key.into(),
            message: message.into(),
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
