//! Error type shared by every module of the crate.

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u32),
    #[error("polynomial {poly:#b} does not generate GF(2^{m}): period of X is {period}")]
    NotMinimalPolynomial { m: u32, poly: u32, period: u32 },
    #[error("division by zero")]
    DivideByZero,
    #[error("bad parameters: {0}")]
    BadParameters(String),
    #[error("enumeration too large: {0}")]
    TooLarge(String),
    #[error("too many erasures: {erasures} > {max}")]
    TooManyErasures { erasures: usize, max: usize },
    #[error("received words do not contain a rank-{0} submatrix")]
    InsufficientRank(usize),
    #[error("{rank} corrupted rows, at most {max} supported")]
    TooManyCorruptRows { rank: usize, max: usize },
    #[error("error rows are linearly dependent")]
    DependentErrors,
    #[error("decoding failed")]
    DecodeFailure,
    #[error("capacity vector is infeasible: {0}")]
    InfeasibleCapacity(String),
    #[error("not a probability distribution: {0}")]
    BadDistribution(String),
    #[error("no admissible control word")]
    NoControlWord,
    #[error("run-length constraint violated at bit {0}")]
    ConstraintViolation(usize),
    #[error("defect pattern cannot be matched")]
    Unmatchable,
    #[error("message exceeds write capacity")]
    CapacityExceeded,
    #[error("biometric reconstruction failed")]
    ReconstructFailure,
    #[error("decoder iteration stopped without progress")]
    DecodingStopped,
    #[error("legal receiver could not decode")]
    LegalDecodeFailure,
    #[error("decision is ambiguous")]
    Ambiguous,
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn bad(msg: impl Into<String>) -> Error {
    Error::BadParameters(msg.into())
}
