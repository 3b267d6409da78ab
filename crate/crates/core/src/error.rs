use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    /// An argument lies outside the domain of a closed-form model.
    #[error("domain error: {0}")]
    Domain(String),

    /// Bus utilization reached or exceeded 1; no steady state exists.
    #[error("bus saturated: utilization {rho} >= 1")]
    Saturated { rho: f64 },

    /// TSVs would need more than the whole layer.
    #[error("TSV area fraction {fraction} exceeds the layer area")]
    GeometricImpossibility { fraction: f64 },

    #[error("hotspot overlap index undefined: stack has zero total power")]
    UndefinedIndex,

    #[error("sweep would evaluate {count} points, above the cap of {cap}")]
    SweepTooLarge { count: usize, cap: usize },

    /// Inconsistent or unsupported configuration. `path` names the offending
    /// field, e.g. `cache[1].line_size`.
    #[error("{path}: {reason}")]
    Config { path: String, reason: String },

    #[error("parse error: {0}")]
    Parse(String),

    #[error("schema error at {path}: {reason}")]
    Schema { path: String, reason: String },

    #[error("I/O error: {0}")]
    Io(String),
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub(crate) fn config(path: impl Into<String>, reason: impl Into<String>) -> Self {
        Error::Config {
            path: path.into(),
            reason: reason.into(),
        }
    }

    /// Prefix the field path of a configuration error, leaving other errors
    /// untouched.
    pub(crate) fn at(self, prefix: &str) -> Self {
        match self {
            Error::Config { path, reason } => {
                let path = if path.is_empty() {
                    prefix.to_string()
                } else if path.starts_with('[') {
                    format!("{prefix}{path}")
                } else {
                    format!("{prefix}.{path}")
                };
                Error::Config { path, reason }
            }
            Error::Domain(reason) => Error::Config {
                path: prefix.to_string(),
                reason,
            },
            other => other,
        }
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
