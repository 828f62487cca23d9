use thiserror::Error;

/// Errors raised by the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("field order {p}^{e} is outside the supported range (q <= 65536)")]
    FieldTooLarge { p: u32, e: u32 },
    #[error("modulus must be monic of degree {expected}, got {got:?}")]
    BadModulus { expected: u32, got: Vec<u32> },
    #[error("modulus {0:?} is reducible")]
    ReducibleModulus(Vec<u32>),
    #[error("no primitive root: {0}")]
    NoPrimitiveRoot(String),
    #[error("elements belong to different fields")]
    FieldMismatch,
    #[error("division by zero")]
    DivisionByZero,
    #[error("syntax error: {0}")]
    Syntax(String),
    #[error("exponent {0} out of range")]
    ExponentOutOfRange(i64),
    #[error("index out of range: {0}")]
    IndexOutOfRange(String),
    #[error("size mismatch: {0}")]
    SizeMismatch(String),
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },
    #[error("dimension {0} exceeds the supported maximum of 64")]
    DimensionTooLarge(usize),
    #[error("matrix is singular")]
    Singular,
    #[error("scalar must be nonzero")]
    ZeroScalar,
    #[error("matrix is not superregular (failing minor s={s} I={rows:?} J={cols:?})")]
    NotSuperregular { s: usize, rows: Vec<usize>, cols: Vec<usize> },
    #[error("superregular matrix too small: need dimension >= {needed}, have {have}")]
    TooSmall { needed: usize, have: usize },
    #[error("time budget exceeded (deepest level reached: {deepest_level})")]
    TimeBudgetExceeded { deepest_level: usize, nodes_visited: u64 },
    #[error("enumeration budget exceeded: {needed} words > budget {budget}")]
    BudgetExceeded { needed: u128, budget: u128 },
    #[error("cap {cap} exceeded; no success among {tried:?}")]
    CapExceeded { cap: u64, tried: Vec<u64> },
    #[error("sequence {0:?} is not a member of the required set")]
    MembershipViolation(Vec<i64>),
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
    #[error("invalid code parameters: {0}")]
    InvalidParams(String),
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },
}

pub type Result<T> = std::result::Result<T, Error>;
