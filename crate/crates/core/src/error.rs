use thiserror::Error;

/// Errors surfaced by the verification kernel. `InternalInvariant` marks a
/// state that exact arithmetic should make unreachable; callers translate it
/// to a distinct process exit code.
#[derive(Debug, Error)]
pub enum KernelError {
    #[error("division by zero")]
    DivisionByZero,

    #[error("value has a pole at q = 1 and lies outside the localization")]
    NotInLocalization,

    #[error("parse error: {0}")]
    Parse(String),

    #[error("invalid configuration: {0}")]
    Config(String),

    #[error("pivot entry is not invertible during Gauss decomposition: {0}")]
    PivotNotInvertible(String),

    #[error("internal invariant violated: {0}")]
    InternalInvariant(String),
}

impl KernelError {
    pub fn internal(msg: impl Into<String>) -> Self {
        KernelError::InternalInvariant(msg.into())
    }

    pub fn config(msg: impl Into<String>) -> Self {
        KernelError::Config(msg.into())
    }
}
