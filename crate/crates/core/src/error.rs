use thiserror::Error;

/// Errors raised by the length engine.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid field descriptor: {0}")]
    InvalidField(String),
    #[error("operation not supported over field {0}")]
    UnsupportedField(String),
    #[error("elements from incompatible fields {0} and {1}")]
    FieldMismatch(String, String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("singular matrix")]
    SingularMatrix,
    #[error("degree {degree} exceeds the supported cap {cap}")]
    UnsupportedDegree { degree: usize, cap: usize },
    #[error("zero form")]
    ZeroForm,
    #[error("degree mismatch: expected {expected}, got {got}")]
    DegreeMismatch { expected: usize, got: usize },
    #[error("index {index} out of range 0..={max}")]
    OutOfRange { index: usize, max: usize },
    #[error("duplicate linear forms")]
    DuplicateForms,
    #[error("representation does not expand to its target")]
    ExpansionMismatch,
    #[error("form has irrational coefficients")]
    NotRational,
    #[error("degenerate parameters: {0}")]
    Degenerate(String),
    #[error("invariant violated: {0}")]
    InvariantViolation(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("form is not homogeneous: {0}")]
    NotHomogeneous(String),
    #[error("io error: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
