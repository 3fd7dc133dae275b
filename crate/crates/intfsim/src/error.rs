//! Error type shared across the crate.

use thiserror::Error;

/// Errors produced by simulation, prediction and reporting code.
#[derive(Debug, Error)]
pub enum Error {
    /// A parameter is outside its documented domain.
    #[error("invalid parameter `{name}`: {reason}")]
    InvalidParameter { name: &'static str, reason: String },

    /// An interference trace is too short for the requested operation.
    #[error("trace too short: need at least {need} samples, got {got}")]
    TraceTooShort { need: usize, got: usize },

    /// Warm-up samples cannot span a state space (empty or all identical).
    #[error("degenerate warm-up trace: {reason}")]
    DegenerateWarmup { reason: String },

    /// Resource allocation is impossible (zero predicted SINR).
    #[error("allocation infeasible: predicted SINR is zero")]
    InfeasibleAllocation,

    /// A configuration file or value failed validation. `path` names the key.
    #[error("config error at `{path}`: {reason}")]
    Config { path: String, reason: String },

    #[error("I/O error: {0}")]
    Io(#[from] std::io::Error),

    #[error("JSON error: {0}")]
    Json(#[from] serde_json::Error),

    #[error("CSV error: {0}")]
    Csv(#[from] csv::Error),
}

impl Error {
    /// Shorthand for [`Error::InvalidParameter`].
    pub fn invalid(name: &'static str, reason: impl Into<String>) -> Self {
        Error::InvalidParameter {
            name,
            reason: reason.into(),
        }
    }

    /// Shorthand for [`Error::Config`].
    pub fn config(path: impl Into<String>, reason: impl Into<String>) -> Self {
        Error::Config {
            path: path.into(),
            reason: reason.into(),
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
