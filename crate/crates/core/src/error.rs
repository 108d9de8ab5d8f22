//! Error type shared by all workbench modules.

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("p = {0} is not an odd prime")]
    NotOddPrime(u64),
    #[error("extension degree e must be at least 1")]
    ZeroDegree,
    #[error("modulus must be a monic polynomial of degree {expected} over F_p")]
    BadModulus { expected: u32 },
    #[error("modulus is reducible over F_{p}")]
    ReducibleModulus { p: u64 },
    #[error("polynomial is not monic")]
    NonMonic,
    #[error("element code {code} is out of range for a field of order {q}")]
    CodeOutOfRange { code: u64, q: u64 },
    #[error("cannot invert zero")]
    ZeroInverse,
    #[error("d = {d} does not divide q - 1 = {qm1}")]
    NotADivisor { d: u64, qm1: u64 },
    #[error("field order q = {q} exceeds the cap {cap}")]
    CapExceeded { q: u64, cap: u64 },
    #[error("kind parameter k = {k} must lie in 0..={max}")]
    KindOutOfRange { k: u64, max: u64 },
    #[error("index n = {n} exceeds the construction cap {cap}")]
    IndexTooLarge { n: u64, cap: u64 },
    #[error("multiplicative form requires r >= 1 and d >= 1")]
    BadMultiplicativeForm,
    #[error("operands belong to different fields")]
    FieldMismatch,
    #[error("{0}")]
    InvalidParams(String),
    #[error("cannot parse {what}: {input:?}")]
    Parse { what: &'static str, input: String },
}

pub type Result<T> = std::result::Result<T, Error>;
