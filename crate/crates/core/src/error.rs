use thiserror::Error;

/// Errors raised by the library.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// An argument lies outside the domain of the function.
    #[error("{op}: argument out of domain ({detail})")]
    Domain { op: &'static str, detail: String },

    /// The operation is only defined for a specific number of relays.
    #[error("{op}: requires {expected} relays, configuration has {actual}")]
    Dimension {
        op: &'static str,
        expected: usize,
        actual: usize,
    },

    /// A configuration value is missing, malformed or out of range.
    #[error("invalid configuration: {0}")]
    Config(String),

    /// The integrator could not certify the requested accuracy.
    #[error("quadrature error estimate {achieved:e} exceeds tolerance {target:e}")]
    ToleranceNotMet { target: f64, achieved: f64 },

    /// Bracketing for the tradeoff weight failed.
    #[error("bracketing failed: {0}")]
    Bracket(String),

    /// The requested energy target cannot be reached by the policy.
    #[error("energy target {target} outside feasible range [{lo}, {hi})")]
    Infeasible { target: f64, lo: f64, hi: f64 },
}

impl Error {
    pub(crate) fn domain(op: &'static str, detail: impl Into<String>) -> Self {
        Error::Domain {
            op,
            detail: detail.into(),
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
