use thiserror::Error;

/// Errors produced by the algebra, the index machinery, and the CLI front end.
#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum SnError {
    #[error("ambient dimension mismatch: expected n = {expected}, found n = {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("truncated dimensions did not stabilize before degree {cap} (window {window}); the input is likely not Fredholm on the polynomial module, or the cap is too small")]
    NotStabilized { cap: u32, window: u32 },

    #[error("element is not in the ideal {ideal}: {detail}")]
    NotInIdeal { ideal: String, detail: String },

    #[error("not a unit: {0}")]
    NotAUnit(String),

    #[error("determinant is not a monomial unit: {0}")]
    NotMonomialUnit(String),

    #[error("word atom has no closed-form inverse: {0}")]
    NonInvertibleAtom(String),

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("{0}")]
    Parse(#[from] ParseError),
}

/// Position-annotated syntax error for the expression grammar.
#[derive(Debug, Clone, Error, PartialEq, Eq)]
#[error("syntax error at line {line}, column {col}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub col: usize,
    pub message: String,
}

impl ParseError {
    pub fn new(line: usize, col: usize, message: impl Into<String>) -> Self {
        ParseError { line, col, message: message.into() }
    }
}

pub type Result<T> = std::result::Result<T, SnError>;
