use thiserror::Error;

use crate::linalg::Field;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("field mismatch: {0:?} vs {1:?}")]
    FieldMismatch(Field, Field),

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("division by zero")]
    DivisionByZero,

    #[error("{0} is not a prime below 2^31")]
    NotPrime(u64),

    #[error("syntax error at line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("relation `{0}` is not homogeneous of positive degree")]
    InhomogeneousRelation(String),

    #[error("duplicate generator `{0}`")]
    DuplicateGenerator(String),

    #[error("generator `{0}` has weight 0; generators must have positive weight")]
    ZeroWeight(String),

    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),

    #[error("polynomials live in different contexts: {0}")]
    ContextMismatch(String),

    #[error("degree {degree} exceeds the certified bound {bound}")]
    DegreeAboveBound { degree: i64, bound: i64 },

    #[error("window top {requested} exceeds what the algebra bound certifies ({limit})")]
    WindowExceedsBound { requested: i64, limit: i64 },

    #[error("window insufficient at degree {degree}: {reason}")]
    WindowInsufficient { degree: i64, reason: String },

    #[error("degree {degree} lies outside the certified window [{lo}, {hi}]")]
    WindowExceeded { degree: i64, lo: i64, hi: i64 },

    #[error("image of relation `{0}` is not zero in the target")]
    NotAMorphism(String),

    #[error("ideal generator `{generator}` acts nonzero in degree {degree}")]
    JActsNonzero { generator: String, degree: i64 },

    #[error("delta is not a sigma-derivation: {0}")]
    NotADerivation(String),

    #[error("sigma is not invertible in degree {0}")]
    NotAnAutomorphism(i64),

    #[error("A_{0} is nonzero but {0} is not divisible by {1}")]
    AlgebraNotConcentrated(i64, u32),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("internal consistency check failed: {0}")]
    Inconsistent(String),
}
