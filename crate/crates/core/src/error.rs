use thiserror::Error;

use crate::rewrite::Trace;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ScalarError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("division by {0}, which may vanish for an admissible parameter value")]
    PossiblyVanishing(String),
    #[error("{0} has a denominator divisible by {1}")]
    DenominatorDivisibleByP(String, u64),
    #[error("field mismatch: {0}")]
    FieldMismatch(String),
}

#[derive(Debug, Error)]
pub enum Error {
    #[error(transparent)]
    Scalar(#[from] ScalarError),
    #[error("cannot compose {0} with {1}: boundaries do not match")]
    Composition(String, String),
    #[error("boundary mismatch: {0}")]
    Boundary(String),
    #[error("monomial {0} is irreducible")]
    NoStep(String),
    #[error("step budget of {budget} exhausted without a termination certificate")]
    NonterminationSuspected { budget: usize, partial: Box<Trace> },
    #[error("not certified: {0}")]
    NotCertified(String),
    #[error("relation {0} is zero and cannot be oriented")]
    Unorientable(String),
    #[error("bound exceeded: {0}")]
    BoundExceeded(String),
    #[error("collapse hypothesis violated: {0}")]
    Collapse(String),
    #[error("{line}:{col}: {msg}")]
    Parse { line: usize, col: usize, msg: String },
    #[error("invalid input: {0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;
