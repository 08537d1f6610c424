use thiserror::Error;

/// Errors raised anywhere in the library.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    /// An argument lies outside the mathematical domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),
    /// The request exceeds a configured resource budget.
    #[error("budget exceeded: {0}")]
    Budget(String),
    /// A constant symbol could not be resolved to a numeric value.
    #[error("unresolved constant symbol `{0}`")]
    Unresolved(String),
    /// A numerical fit did not reach its tolerance.
    #[error("fit residual {residual} above tolerance {tolerance}: {context}")]
    FitResidual {
        context: String,
        residual: String,
        tolerance: String,
    },
    /// Cancellation or amplification left too few reliable digits.
    #[error("precision exhausted: about {estimated_digits} reliable digits remain ({context})")]
    Precision {
        context: String,
        estimated_digits: i64,
    },
    /// A numerical procedure failed to converge.
    #[error("no convergence: {0}")]
    Convergence(String),
    /// An identity that should hold exactly did not.
    #[error("verification failed: {0}")]
    Verification(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Domain(msg.into()))
}
