use thiserror::Error;

/// Errors shared by every module of the crate.
#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum Error {
    /// A weight, label or family parameter violates its dominance chain
    /// or rank bounds.
    #[error("validation error: {0}")]
    Validation(String),

    /// A formal character could not be peeled into irreducibles
    /// (a negative multiplicity or a non-dominant leading weight appeared).
    #[error("not a character: {0}")]
    NotACharacter(String),

    /// The operation is only defined for a different kind of operand,
    /// e.g. twisting by a label that is not one-dimensional.
    #[error("unsupported operand: {0}")]
    UnsupportedOperand(String),

    /// A label lies outside the support window of a branching law.
    #[error("not in branching support: {0}")]
    NotInSupport(String),

    /// The value belongs to a different group family than the operation.
    #[error("wrong family: expected {expected}, got {got}")]
    WrongFamily { expected: String, got: String },

    /// A configured resource cap was exceeded (generator enumeration too large).
    #[error("resource cap exceeded: {0}")]
    ResourceCap(String),

    /// A command-line literal or JSON document could not be parsed.
    /// The message names the offending token.
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
