use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Errors raised while reading polynomial expressions.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("unknown identifier `{name}` at position {pos}")]
    UnknownIdentifier { name: String, pos: usize },
    #[error("syntax error at position {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("negative exponent at position {pos}")]
    NegativeExponent { pos: usize },
    #[error("exponent too large at position {pos}")]
    ExponentTooLarge { pos: usize },
}

#[derive(Debug, Error)]
pub enum Error {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error("roster mismatch: {0}")]
    RosterMismatch(String),
    #[error("singular matrix: {0}")]
    SingularMatrix(String),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("point does not lie on the variety: {0}")]
    NotOnVariety(String),
    #[error("zero point has no projective meaning")]
    ZeroPoint,
    #[error("window too small: {0}")]
    WindowTooSmall(String),
    #[error("computation budget exceeded: {0}")]
    BudgetExceeded(String),
    #[error("degenerate input: {0}")]
    Degenerate(String),
    #[error("x0 action not available: {0}")]
    X0Unavailable(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("document error at line {line}: {msg}")]
    Document { line: usize, msg: String },
    #[error("unknown check `{0}`")]
    UnknownCheck(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
