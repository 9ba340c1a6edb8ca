use std::fmt;

/// Input text that failed to parse, with the byte offset of the problem.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub input: String,
    pub position: usize,
    pub message: String,
}

impl ParseError {
    pub fn new(input: &str, position: usize, message: impl Into<String>) -> Self {
        ParseError {
            input: input.to_string(),
            position,
            message: message.into(),
        }
    }
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "{} at position {} in {:?}",
            self.message, self.position, self.input
        )?;
        // caret under the offending character
        write!(f, "  {}\n  {}^", self.input, " ".repeat(self.position))
    }
}

impl std::error::Error for ParseError {}

#[derive(thiserror::Error, Debug, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(#[from] ParseError),
    #[error("Coxeter matrix is not of finite type; offending component {submatrix}")]
    InfiniteType { submatrix: String },
    #[error("invalid Coxeter matrix: {0}")]
    InvalidMatrix(String),
    #[error("unsupported Cartan type {0}")]
    UnsupportedType(String),
    #[error("operands belong to different Coxeter systems")]
    MismatchedGroups,
    #[error("generator {0} out of range for rank {1}")]
    GeneratorOutOfRange(usize, usize),
    #[error("twist {twist} is invalid here: {reason}")]
    InvalidTwist { twist: String, reason: String },
    #[error("size guard exceeded: {what} needs {needed} elements, limit is {limit}")]
    SizeGuard {
        what: String,
        needed: u128,
        limit: u128,
    },
    #[error("internal consistency failure: {0}")]
    Defect(String),
    #[error("flag model: {0}")]
    Flag(String),
}

pub type Result<T> = std::result::Result<T, Error>;
