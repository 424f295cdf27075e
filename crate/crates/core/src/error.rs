use alloc::string::String;

/// Errors raised by the numerical kernels and the constructions built on them.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("numerical failure: {msg} (residual {residual:e})")]
    NumericalFailure { msg: String, residual: f64 },

    /// No remaining candidate keeps the node determinant away from zero.
    #[error("span deficiency at selection step {step}")]
    SpanDeficiency { step: usize },

    #[error("infeasible: {msg} (residual {residual:e})")]
    Infeasible { msg: String, residual: f64 },

    #[error("precondition violated: {0}")]
    PreconditionViolation(String),

    #[error("size cap exceeded: {what} = {value} > {cap}")]
    CapExceeded {
        what: &'static str,
        value: usize,
        cap: usize,
    },

    #[error("unsupported: {0}")]
    Unsupported(String),
}

pub type Result<T> = core::result::Result<T, Error>;

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidArgument(msg.into())
    }
}
