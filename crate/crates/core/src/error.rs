use thiserror::Error;

/// Errors raised anywhere in the pipeline.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("table is not associative: ({x}*{y})*{z} != {x}*({y}*{z})")]
    NotAssociative { x: usize, y: usize, z: usize },
    #[error("index out of range: {0}")]
    IndexOutOfRange(String),
    #[error("resource limit exceeded while {what} (cap {cap})")]
    ResourceLimit { what: String, cap: usize },
    #[error("internal inconsistency: {0}")]
    InternalInconsistency(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("{0} is not a prime")]
    NotPrime(u64),
    #[error("subset is not a normal subgroup")]
    NotNormal,
    #[error("unknown modulus `{0}`")]
    UnknownModulus(String),
    #[error("relational morphism misses element {0} of its domain")]
    NotSurjective(usize),
    #[error("coordinate {coord} does not accept input {input}")]
    InputNotAccepted { coord: usize, input: String },
    #[error("invalid argument: {0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn inconsistency(msg: impl Into<String>) -> Error {
    Error::InternalInconsistency(msg.into())
}

pub(crate) fn resource(what: impl Into<String>, cap: usize) -> Error {
    Error::ResourceLimit {
        what: what.into(),
        cap,
    }
}
