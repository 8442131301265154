use thiserror::Error;

/// Errors raised by the engine. Verification failures are not errors; they
/// are recorded as failing entries of a [`crate::analysis::Report`].
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("context mismatch: {0}")]
    ContextMismatch(String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("degenerate substitution: denominator vanishes identically")]
    DegenerateSubstitution,
    #[error("missing image for variable {0}")]
    MissingImage(usize),
    #[error("pole of order {0} along the divisor (at most 1 allowed)")]
    HigherOrderPole(usize),
    #[error("invalid divisor: {0}")]
    InvalidDivisor(String),
    #[error("element {0} is not invertible in the monoid")]
    NotInvertible(String),
    #[error("conjugate does not lie in the monoid: {0}")]
    NormalizationViolation(String),
    #[error("coefficient is not invariant under the stabilizer of {0}")]
    StabilizerInvariance(String),
    #[error("element is not invariant: {0}")]
    NotInvariant(String),
    #[error("invalid parameter: {0}")]
    Parameter(String),
    #[error("undefined name: {0}")]
    Definition(String),
    #[error("unsupported key mode: {0}")]
    UnsupportedMode(String),
    #[error("resource cap exceeded: {0}")]
    Resource(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
