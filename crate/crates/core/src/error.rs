use alloc::string::String;

/// Errors produced by the arithmetic, geometric and quaternion layers.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("element is not a square")]
    NotASquare,
    #[error("moduli are not pairwise coprime")]
    BadModuli,
    #[error("invalid prime modulus {0}")]
    BadPrime(u64),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("input too large: {0}")]
    TooLarge(String),
    #[error("bad kernel: {0}")]
    BadKernel(String),
    #[error("bad input: {0}")]
    BadInput(String),
    #[error("incompatible chain endpoints at position {0}")]
    BadChain(usize),
    #[error("trace data not realizable: {0}")]
    NotRealizable(String),
    #[error("lattice is rank deficient")]
    RankDeficient,
    #[error("enumeration budget exceeded")]
    Budget,
    #[error("no element found")]
    NotFound,
    #[error("{0} is not a vertex of the graph")]
    NotAVertex(String),
    #[error("integrity failure: {0}")]
    Integrity(String),
}

pub type Result<T> = core::result::Result<T, Error>;
