use thiserror::Error;

use crate::cycle::CertifyError;
use crate::numerics::NumericsError;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid configuration: {0}")]
    Config(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error(transparent)]
    Numerics(#[from] NumericsError),
    #[error("denominator reached {bits} bits (cap {cap})")]
    DenominatorCap { bits: u64, cap: u64 },
    #[error(transparent)]
    Certify(#[from] CertifyError),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
