use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("rational function has a pole at m = {0}")]
    Pole(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("invalid Schubert index {index:?} for G({r}, P^{d})")]
    InvalidPartition { index: Vec<u32>, r: u32, d: u32 },
    #[error("class lives on {found}, expected {expected}")]
    WrongSpace { expected: String, found: String },
    #[error("symbol {symbol} is not in the basis of {space}")]
    UnknownSymbol { symbol: String, space: String },
    #[error("family data contradicts: equation {equation} is inconsistent")]
    Inconsistent { equation: String },
    #[error("linear system is rank-deficient; free directions: {directions}")]
    RankDeficient { directions: String },
    /// Two independent computations of the same quantity disagree.
    #[error("internal consistency failure: {0}")]
    Mismatch(String),
}

impl Error {
    pub fn precondition(msg: impl Into<String>) -> Self {
        Error::Precondition(msg.into())
    }

    /// True for errors signalling a verification failure rather than bad input.
    pub fn is_consistency_failure(&self) -> bool {
        matches!(
            self,
            Error::Inconsistent { .. } | Error::RankDeficient { .. } | Error::Mismatch(_)
        )
    }
}
