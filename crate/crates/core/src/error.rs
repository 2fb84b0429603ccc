use thiserror::Error;

/// Errors raised by the algebra engine.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("rational function has a pole at q = {0}")]
    PoleAtPoint(String),
    #[error("invalid value for q: {0} (must not be 0, 1 or -1)")]
    InvalidQ(String),
    #[error("alphabet mismatch: {0}")]
    AlphabetMismatch(String),
    #[error("no image supplied for generator {0}")]
    MissingImage(String),
    #[error("invalid parameters for {id}: {reason}")]
    InvalidParams { id: String, reason: String },
    #[error("certificate context mismatch: {0}")]
    ContextMismatch(String),
    #[error("orientation word {0} is not the leading monomial of its relation")]
    NotLeadingMonomial(String),
    #[error("rule {0} violates the monomial order")]
    OrderViolation(String),
    #[error("element is not in the degree-one subspace: {0}")]
    NotCertifiedA1(String),
    #[error("invalid cutoff K = {0} (need K >= 1)")]
    InvalidCutoff(usize),
    #[error("index out of range: {0}")]
    IndexOutOfRange(String),
    #[error("eigenvalues are not mutually distinct: {0}")]
    DegenerateEigenvalues(String),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("matrix is not diagonalizable with distinct rational eigenvalues: {0}")]
    NotDiagonalizable(String),
    #[error("parse error at {location}: {message}")]
    ParseError { location: String, message: String },
    #[error("invariant violation: {}", .0.join("; "))]
    InvariantViolation(Vec<String>),
}

impl Error {
    pub(crate) fn parse(location: impl Into<String>, message: impl Into<String>) -> Self {
        Error::ParseError {
            location: location.into(),
            message: message.into(),
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
