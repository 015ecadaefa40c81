use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AlgebraError {
    #[error("polynomials belong to different rings")]
    MixedRings,
    #[error("negative exponent {0}")]
    NegativeExponent(i64),
    #[error("division by zero")]
    DivisionByZero,
    #[error("variable index {0} out of range")]
    VarIndex(usize),
    #[error("ring has {0} variables; at most {1} are supported")]
    TooManyVars(usize, usize),
    #[error("exponent overflow")]
    ExponentOverflow,
    #[error("length mismatch: expected {expected}, got {got}")]
    Length { expected: usize, got: usize },
    #[error("zero direction vector")]
    ZeroDirection,
    #[error("parse error: {0}")]
    Parse(String),
    #[error("{0} is not a usable prime")]
    BadPrime(u64),
    #[error("matrix is not square ({0}x{1})")]
    NotSquare(usize, usize),
    #[error("dimension mismatch: {0}")]
    Shape(String),
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("computation exceeded its budget ({0})")]
    Timeout(String),
    #[error("cache i/o: {0}")]
    Io(String),
}

impl AlgebraError {
    pub fn is_timeout(&self) -> bool {
        matches!(self, AlgebraError::Timeout(_))
    }
}

pub type Result<T> = std::result::Result<T, AlgebraError>;

impl From<serde_json::Error> for AlgebraError {
    fn from(e: serde_json::Error) -> Self {
        AlgebraError::Invalid(format!("serialization: {e}"))
    }
}
