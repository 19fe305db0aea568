use thiserror::Error;

use crate::algebra::ValidationReport;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid descriptor: {0}")]
    InvalidDescriptor(String),

    #[error("action ill-defined: {0}")]
    ActionIllDefined(String),

    #[error("axioms violated:\n{0}")]
    AxiomsViolated(ValidationReport),

    #[error("grading invalid: {axiom} (witness: {witness})")]
    GradingInvalid { axiom: String, witness: String },

    #[error("precondition violated: {0}")]
    PreconditionViolation(String),

    #[error("structure too large: {size} elements exceeds cap {cap}")]
    TooLarge { size: usize, cap: usize },

    #[error("homomorphism invalid: {axiom} (witness: {witness})")]
    HomInvalid { axiom: String, witness: String },

    #[error("invalid denominators: {0}")]
    InvalidDenominators(String),

    #[error("unknown proposition id `{0}`")]
    UnknownProposition(String),

    #[error("unknown predicate `{0}`")]
    UnknownPredicate(String),

    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("expression error: {0}")]
    Expression(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
