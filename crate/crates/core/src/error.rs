use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid ring descriptor `{descriptor}`: {reason}")]
    InvalidDescriptor { descriptor: String, reason: String },

    #[error("{0} is not prime")]
    NotPrime(u64),

    #[error("modulus must be at least 2, got {0}")]
    ModulusTooSmall(u64),

    #[error("exponent must be at least 1, got {0}")]
    ExponentTooSmall(u32),

    #[error("dual extension of a dual ring is not supported")]
    NestedDual,

    #[error("size cap exceeded: {what} needs {needed}, cap is {cap}")]
    SizeCap {
        what: String,
        needed: u128,
        cap: u128,
    },

    #[error("parse error at position {pos}: {msg}")]
    Parse { pos: usize, msg: String },

    #[error("ring mismatch: {left} vs {right}")]
    RingMismatch { left: String, right: String },

    #[error("{0} is not a field")]
    NotAField(String),

    #[error("value at index {index} is not a unit")]
    NotUnit { index: usize },

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("unsupported: {0}")]
    Unsupported(String),
}

impl Error {
    pub(crate) fn size_cap(what: impl Into<String>, needed: u128, cap: u128) -> Self {
        Error::SizeCap {
            what: what.into(),
            needed,
            cap,
        }
    }

    pub(crate) fn parse(pos: usize, msg: impl Into<String>) -> Self {
        Error::Parse {
            pos,
            msg: msg.into(),
        }
    }
}
