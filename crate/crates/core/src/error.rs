use thiserror::Error;

use crate::arith::Nat;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),

    /// An operation was called on a value outside its domain, e.g. the Fano
    /// index of a weight tuple that is not well-formed.
    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("group order {r} exceeds the brute-force cost cap {cap}")]
    CostCapExceeded { r: Nat, cap: Nat },

    #[error("coordinate point {point} (weight {weight}) is undecided: order exceeds the cost cap and no certificate was supplied")]
    Undecided { point: usize, weight: Nat },

    #[error("certificate for coordinate point {point} failed its checks")]
    CertificateRejected { point: usize },
}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidInput(msg.into())
    }

    pub(crate) fn precondition(msg: impl Into<String>) -> Self {
        Error::Precondition(msg.into())
    }

    /// Process exit code used by the command-line tool for this error.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::InvalidInput(_) | Error::Precondition(_) => 1,
            Error::CostCapExceeded { .. } | Error::Undecided { .. } => 2,
            Error::CertificateRejected { .. } => 3,
        }
    }
}
