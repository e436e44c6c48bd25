use thiserror::Error;

/// Errors raised by the engine.
///
/// `Invariant` signals that an identity the engine asserts internally (an
/// integrality, a table agreement, an exact division) did not hold. It never
/// depends on user input; when it fires there is a bug.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),
    #[error("usage error: {0}")]
    Usage(String),
    #[error("group not finite within cap of {cap} elements")]
    CapExceeded { cap: usize },
    #[error("invariant violation: {0}")]
    Invariant(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("unknown preset `{0}`")]
    UnknownPreset(String),
}

pub type Result<T> = std::result::Result<T, Error>;
