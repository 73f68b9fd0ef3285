use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("extension degrees must be at least 1")]
    DegreeZero,
    #[error("field of size {size} exceeds the size budget {budget}")]
    SizeBudgetExceeded { size: u128, budget: u64 },
    #[error("modulus {0:?} is not a monic irreducible polynomial of the expected degree")]
    BadModulus(Vec<u32>),
    #[error("operands do not live in the requested field level")]
    LevelMismatch,
    #[error("division by zero")]
    DivisionByZero,
    #[error("degree {to} does not divide degree {from} (or {from} does not divide the top degree)")]
    NonDivisorDegrees { from: u32, to: u32 },
    #[error("encoding {value} out of range for a level of size {size}")]
    OutOfRange { value: u64, size: u64 },
    #[error("elements are not linearly independent over the base field")]
    NotABasis,
    #[error("b must lie outside the base field F_q")]
    BInBaseField,
    #[error("b must be nonzero")]
    BZero,
    #[error("c must be nonzero")]
    CZero,
    #[error("operation is only defined for extension degree {expected}, got {got}")]
    UnsupportedDegree { expected: &'static str, got: u32 },
    #[error("linearized polynomial does not permute the field")]
    NotBijective,
    #[error("alpha must be nonzero with alpha^(q-1) = -1")]
    BadAlpha,
    #[error("operation requires odd characteristic")]
    EvenCharacteristic,
    #[error("bivariate polynomial has the wrong shape: {0}")]
    WrongDegree(String),
    #[error("Weil-type bound needs degree d >= 2, got {0}")]
    DegreeTooSmall(u32),
    #[error("parse error: {0}")]
    Parse(String),
}
