use thiserror::Error;

/// Every failure the library can report.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("characteristic {p} too small for a curve of y-degree {n} (need p > 2n)")]
    TooSmall { p: u64, n: usize },
    #[error("operands live in different fields")]
    ContextMismatch,
    #[error("moduli are not pairwise coprime")]
    NotCoprime,
    #[error("curve is not squarefree (discriminant vanishes)")]
    SquarefreeViolation,
    #[error("curve is not monic in y")]
    NotMonic,
    #[error("parse error: {0}")]
    ParseError(String),
    #[error("insufficient series precision: {0}")]
    InsufficientPrecision(String),
    #[error("wild ramification: characteristic divides ramification index {0}")]
    WildRamification(usize),
    #[error("internal invariant broken: {0}")]
    InternalInvariantBroken(String),
    #[error("matrix is rank deficient")]
    RankDeficient,
    #[error("matrix is singular")]
    Singular,
    #[error("trace of a basis product is not a polynomial")]
    NonIntegralTrace,
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

impl Error {
    /// Process exit code used by the command line tool.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::NotPrime(_)
            | Error::TooSmall { .. }
            | Error::NotMonic
            | Error::SquarefreeViolation
            | Error::ParseError(_) => 3,
            _ => 4,
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            Error::NotPrime(_) => "NotPrime",
            Error::TooSmall { .. } => "TooSmall",
            Error::ContextMismatch => "ContextMismatch",
            Error::NotCoprime => "NotCoprime",
            Error::SquarefreeViolation => "SquarefreeViolation",
            Error::NotMonic => "NotMonic",
            Error::ParseError(_) => "ParseError",
            Error::InsufficientPrecision(_) => "InsufficientPrecision",
            Error::WildRamification(_) => "WildRamification",
            Error::InternalInvariantBroken(_) => "InternalInvariantBroken",
            Error::RankDeficient => "RankDeficient",
            Error::Singular => "Singular",
            Error::NonIntegralTrace => "NonIntegralTrace",
        }
    }
}
