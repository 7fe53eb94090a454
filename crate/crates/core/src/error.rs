use std::fmt;

use thiserror::Error;

use crate::term::Position;

/// Syntax error in any of the text formats, with a 1-based source location.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub struct ParseError {
    pub line: usize,
    pub col: usize,
    pub message: String,
}

impl ParseError {
    pub fn new(line: usize, col: usize, message: impl Into<String>) -> Self {
        ParseError {
            line,
            col,
            message: message.into(),
        }
    }
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}: {}", self.line, self.col, self.message)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TermError {
    #[error("invalid position {position} (no argument at depth {depth})")]
    InvalidPosition { position: Position, depth: usize },
    #[error("operator `{op}` takes {expected} argument(s), found {found}")]
    Arity {
        op: String,
        expected: usize,
        found: usize,
    },
    #[error("unknown operator `{0}`")]
    UnknownOperator(String),
    #[error("variable `{0}` clashes with a declared operator")]
    VariableClash(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TheoryError {
    #[error("syntax error at {0}")]
    Parse(#[from] ParseError),
    #[error("line {line}: reference to undeclared signature `{name}`")]
    UndeclaredSignature { line: usize, name: String },
    #[error("duplicate {kind} `{name}`")]
    Duplicate { kind: &'static str, name: String },
    #[error("identity `{identity}`: {source}")]
    IllFormed { identity: String, source: TermError },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ModelError {
    #[error("syntax error at {0}")]
    Parse(#[from] ParseError),
    #[error("unbound variable `{0}`")]
    UnboundVariable(String),
    #[error("signature mismatch: {0}")]
    SignatureMismatch(String),
    #[error("size must be at least {min}, got {got}")]
    InvalidSize { min: usize, got: usize },
    #[error("table for `{op}`: {reason}")]
    BadTable { op: String, reason: String },
    #[error("not an MV-algebra: {0}")]
    NotMvAlgebra(String),
    #[error("unknown signature `{0}`")]
    UnknownSignature(String),
    #[error("unknown identity `{0}`")]
    UnknownIdentity(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ProofError {
    #[error("syntax error at {0}")]
    Parse(#[from] ParseError),
    #[error("unknown theory `{0}`")]
    UnknownTheory(String),
    #[error("duplicate script `{0}`")]
    DuplicateScript(String),
    #[error("redex mismatch: the identity instance does not occur at {0}")]
    RedexMismatch(Position),
    #[error(transparent)]
    Term(#[from] TermError),
    #[error("unknown root `{0}`")]
    UnknownRoot(String),
    #[error("`{0}` has not been verified")]
    NotVerified(String),
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SearchError {
    #[error("signature mismatch: {0}")]
    SignatureMismatch(String),
    #[error("time budget of {0:.1}s exceeded")]
    BudgetExceeded(f64),
    #[error("unknown identity `{0}`")]
    UnknownIdentity(String),
    #[error("isomorphism reduction is limited to size {max}, got {got}")]
    IsoBoundExceeded { max: usize, got: usize },
    #[error("identity names must partition the theory: {0}")]
    NotAPartition(String),
    #[error(transparent)]
    Model(#[from] ModelError),
}
