use thiserror::Error;

/// Errors reported by the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not a prime")]
    NotPrime(u32),
    #[error("extension degree must be at least 1")]
    ZeroExtensionDegree,
    #[error("field of order {p}^{s} exceeds the supported maximum of {max}")]
    FieldTooLarge { p: u32, s: u32, max: u32 },
    #[error("operands belong to different fields ({0} vs {1})")]
    FieldMismatch(String, String),
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("matrix is singular")]
    Singular,
    #[error("matrix does not have full row rank")]
    RankDeficient,
    #[error("row {0} is zero and has no degree")]
    ZeroRow(usize),
    #[error("encoder is not basic")]
    NotBasic,
    #[error("encoder is not reduced")]
    NotReduced,
    #[error("encoder is not semi-reduced")]
    NotSemiReduced,
    #[error("expected a constant matrix")]
    NotConstant,
    #[error("state matrix A is not nilpotent, the transfer matrix is not polynomial")]
    NotNilpotent,
    #[error("system is not canonical (controllable and observable)")]
    NotCanonical,
    #[error("system violates the realization rank condition: {0}")]
    ConditionViolated(String),
    #[error("code has a zero Forney index, the adjacency matrix is not a complete invariant there")]
    ZeroForneyIndex,
    #[error("search of {size} candidates exceeds the cap of {cap}")]
    CapExceeded { size: u128, cap: u128 },
    #[error("parse error at line {line}, column {col}: {msg}")]
    Parse { line: usize, col: usize, msg: String },
    #[error("json error: {0}")]
    Json(String),
    #[error("internal consistency check failed: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
