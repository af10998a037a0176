use thiserror::Error;

/// Errors produced by ring construction, lifting and enumeration.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("gcd(0, 0) is undefined")]
    UndefinedGcd,

    #[error("domain error: {0}")]
    Domain(String),

    #[error("not invertible: {0}")]
    NonInvertible(String),

    #[error("characteristic exceeds bound {bound}")]
    CharacteristicOverflow { bound: u64 },

    #[error("{what} has size {size}, above the cap of {cap}")]
    SizeExceeded { what: String, size: String, cap: u128 },

    #[error("group order {order} is divisible by the characteristic {p}; the group algebra is not semisimple")]
    NonSemisimple { order: u64, p: u64 },

    #[error("element is not nilpotent within {cap} steps")]
    NotNil { cap: u32 },

    #[error("lift failed: {0}")]
    LiftFailed(String),

    #[error("combine failed: {0}")]
    CombineFailed(String),

    #[error("certification failed: {0}")]
    CertificationFailed(String),

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("parse error at {pos}: {message}")]
    Parse { pos: usize, message: String },

    #[error("verification failed: {0}")]
    Verification(String),
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub(crate) fn size(what: impl Into<String>, size: impl ToString, cap: u128) -> Self {
        Error::SizeExceeded {
            what: what.into(),
            size: size.to_string(),
            cap,
        }
    }

    /// Process exit code used by the command-line front end.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Parse { .. } => 2,
            Error::SizeExceeded { .. } => 3,
            Error::LiftFailed(_)
            | Error::CombineFailed(_)
            | Error::CertificationFailed(_)
            | Error::Verification(_) => 5,
            _ => 4,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
