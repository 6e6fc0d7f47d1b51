//! Error type shared across the crate.

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("division by zero in cyclotomic field")]
    DivisionByZero,
    #[error("field mismatch: Q(zeta_{0}) vs Q(zeta_{1})")]
    FieldMismatch(u64, u64),
    #[error("Q(zeta_{0}) is not a subfield of Q(zeta_{1})")]
    NotASubfield(u64, u64),
    #[error("dimension mismatch: {0}x{1} vs {2}x{3}")]
    DimensionMismatch(usize, usize, usize, usize),
    #[error("singular matrix")]
    SingularMatrix,
    #[error("group enumeration is incomplete (cap exceeded)")]
    IncompleteEnumeration,
    #[error("basis does not span an invariant subspace for this matrix")]
    NotInvariant,
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),
    #[error("operation requires n {expected}, got n = {got}")]
    WrongArity { expected: String, got: usize },
    #[error("monodromy group is not (known to be) finite")]
    NotFinite,
    #[error("parameters outside the scope of this case analysis: {0}")]
    OutOfScope(String),
    #[error("condition (B) does not hold; no case tag applies")]
    NoCase,
    #[error("integer overflow in packed group arithmetic")]
    Overflow,
    #[error("parse error at `{0}`")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
