use thiserror::Error;

/// Errors raised by the algebra kernel, the Gröbner engine and the pipelines.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("ring context mismatch: {0}")]
    ContextMismatch(String),

    #[error("coefficient mode mismatch: cannot combine {0} with {1}")]
    ModeMismatch(String, String),

    #[error("exponent length mismatch: {0} vs {1}")]
    LengthMismatch(usize, usize),

    #[error("weights must be positive, got {0}")]
    NonPositiveWeight(i64),

    #[error("parse error at column {column}: {message}")]
    Parse { column: usize, message: String },

    #[error("line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("{what} exceeded cap of {cap}")]
    ResourceCap { what: String, cap: usize },

    #[error("input is positive-dimensional (dimension {0}); a zero-dimensional ideal is required")]
    PositiveDimensional(i64),

    #[error("ideal is not primary to the maximal ideal at the origin")]
    NotMPrimary,

    #[error("division by zero")]
    DivisionByZero,

    #[error("internal error: {0}")]
    Internal(String),

    #[error("unsupported input: {0}")]
    Unsupported(String),

    #[error("not verified as a reduction within cap r_max = {0}")]
    NotAReduction(usize),

    #[error("sampling failed: {0}")]
    Sampling(String),

    #[error("no nonzerodivisor found after {0} attempts")]
    NoNonzerodivisor(usize),

    #[error("exponent escalation disagreement at N = {0}")]
    EscalationDisagreement(usize),

    #[error("hypothesis violation: {0}")]
    HypothesisViolation(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    /// Failures that are certified refusals (a cap was hit), as opposed to bad input.
    pub fn is_cap(&self) -> bool {
        matches!(
            self,
            Error::ResourceCap { .. }
                | Error::NotAReduction(_)
                | Error::Sampling(_)
                | Error::EscalationDisagreement(_)
        )
    }
}
