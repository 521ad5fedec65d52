use thiserror::Error;

/// Errors raised by field construction and the counting/transform operations.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("characteristic 2 is not supported (p must be an odd prime)")]
    EvenCharacteristic,
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("polynomial is not a monic irreducible of degree {degree} over Z_{p}")]
    NotIrreducible { p: u64, degree: u32 },
    #[error("division by zero in F_q")]
    DivisionByZero,
    #[error("work size {needed} exceeds cap {cap}")]
    CapExceeded { needed: u128, cap: u128 },
    #[error("operation requires a nonempty point set")]
    EmptySet,
    #[error("operation requires dimension {expected}, got {got}")]
    WrongDimension { expected: u32, got: u32 },
    #[error("operation requires q = {0} (mod 4)")]
    WrongFieldClass(u64),
    #[error("simplex order k={k} exceeds dimension d={d}")]
    KExceedsD { k: u32, d: u32 },
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("slice pin pool E_z is empty")]
    ZSliceEmpty,
    #[error("malformed set specifier: {0}")]
    SpecifierParse(String),
    #[error("construction unavailable: {0}")]
    ConstructionUnavailable(String),
    #[error("point-set file header does not match field: {0}")]
    HeaderMismatch(String),
    #[error("point-set file parse error: {0}")]
    ParseError(String),
}

pub type Result<T> = std::result::Result<T, Error>;
