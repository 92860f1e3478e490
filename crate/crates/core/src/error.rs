use thiserror::Error;

/// Errors raised by the algebraic layers and the harness.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("modulus {0} is not an odd prime")]
    BadModulus(u32),
    #[error("field mismatch: {0} vs {1}")]
    FieldMismatch(u32, u32),
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("incomposable: {0}")]
    Incomposable(String),
    #[error("invalid complex: {0}")]
    InvalidComplex(String),
    #[error("not a chain map: {0}")]
    NotAChainMap(String),
    #[error("not invertible: {0}")]
    NotInvertible(String),
    #[error("missing index: expression needs {needed} indices, got {given}")]
    MissingIndex { needed: usize, given: usize },
    #[error("no such transform: {0}")]
    NoSuchTransform(String),
    #[error("unknown diagram: {0}")]
    UnknownDiagram(String),
    #[error("base mismatch: {0}")]
    BaseMismatch(String),
    #[error("assumption violated: {0}")]
    AssumptionViolated(String),
    #[error("search space exceeded: {size} candidates, cap {cap}")]
    SearchSpaceExceeded { size: u128, cap: u128 },
    #[error("degenerate form")]
    Degenerate,
    #[error("form is not symmetric")]
    NotSymmetric,
    #[error("sign table rejected: {0}")]
    SignTable(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
