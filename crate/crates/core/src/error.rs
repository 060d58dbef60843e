use thiserror::Error;

/// Everything the engine can refuse to do.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),

    /// The local-factor precision needed for an exact answer exceeds the configured cap.
    #[error("certification failed: {0}")]
    CertificationFailed(String),

    #[error("Brauer class is not of exponent dividing 2")]
    NotExponentTwo,

    #[error("not a Weil polynomial: {0}")]
    NotWeil(String),

    #[error("inconsistent input: {0}")]
    InconsistentInput(String),

    #[error("internal inconsistency: {0}")]
    InternalInconsistency(String),

    #[error("oracle disagreement: {0}")]
    OracleDisagreement(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn invalid<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::InvalidInput(msg.into()))
}

pub(crate) fn internal<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::InternalInconsistency(msg.into()))
}
