use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("invalid value for `{field}`: {reason}")]
    InvalidField { field: String, reason: String },

    #[error("unknown variable `{0}`")]
    UnknownVariable(String),

    #[error("dimension mismatch: expected {expected} entries, got {got}")]
    Dimension { expected: usize, got: usize },

    #[error("system is infeasible")]
    Infeasible,

    #[error("objective is unbounded on the region")]
    Unbounded,

    /// The bound is only valid for `a12 <= 1` and `c1 >= c2`.
    #[error("regime violation: {0}")]
    Regime(String),

    #[error("conditions not met: {}", .0.join("; "))]
    Precondition(Vec<String>),

    #[error("objective is not finite at x = {x}")]
    NonFinite { x: f64 },

    #[error("config error: {0}")]
    Config(String),

    #[error("i/o error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(err: std::io::Error) -> Self {
        Error::Io(err.to_string())
    }
}

impl From<serde_json::Error> for Error {
    fn from(err: serde_json::Error) -> Self {
        Error::Config(err.to_string())
    }
}

impl From<csv::Error> for Error {
    fn from(err: csv::Error) -> Self {
        Error::Io(err.to_string())
    }
}
