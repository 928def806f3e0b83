use thiserror::Error;

/// Errors shared across the exact-arithmetic and stratification layers.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("variable list mismatch: {0}")]
    VarMismatch(String),
    #[error("not divisible: remainder is nonzero")]
    NotDivisible,
    #[error("unknown variable `{0}` in assignment")]
    UnknownVariable(String),
    #[error("quotient is not zero-dimensional: variable `{0}` has no pure power among leading monomials")]
    NotZeroDimensional(String),
    #[error("S-pair limit {0} exceeded in Groebner basis computation")]
    ResourceLimit(usize),
    #[error("stratum is empty")]
    EmptyStratum,
    #[error("generic fiber is not finite")]
    GenericFiberInfinite,
    #[error("point is not in the stratum: {0}")]
    PointNotInStratum(String),
    #[error("invariant violation: {0}")]
    InvariantViolation(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("division by zero")]
    DivisionByZero,
}

pub type Result<T> = std::result::Result<T, Error>;
