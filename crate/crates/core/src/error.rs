use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("zero denominator")]
    ZeroDenominator,

    #[error("parse error at position {pos}: {msg}")]
    Parse { pos: usize, msg: String },

    #[error("radicand must be non-negative, got {0}")]
    NegativeRadicand(String),

    /// The Heron upper bound `a + r/(2a)` needs `a >= 1`.
    #[error("heron upper bound is undefined for {0} < 1; use integer seeds (0, 1) instead")]
    HeronUndefined(String),

    #[error("{radicand} is a perfect square (root {root})")]
    PerfectSquare { radicand: String, root: String },

    #[error("{candidate} is not an upper approximation of the square root of {radicand}")]
    NotUpper { candidate: String, radicand: String },

    #[error("approximation {value} is not {expected} for the square root of {radicand}")]
    Misclassified {
        value: String,
        expected: String,
        radicand: String,
    },

    #[error("cannot scale a zero approximation")]
    ZeroApproximation,

    #[error("invalid seeds: {0}")]
    InvalidSeeds(String),

    #[error("invalid stop rule: {0}")]
    InvalidStopRule(String),

    #[error("expected a positive non-square integer, got {0}")]
    NotNonSquareInteger(String),

    #[error("corpus line {line}: {msg}")]
    Corpus { line: usize, msg: String },

    #[error("cannot read {path}: {msg}")]
    Io { path: String, msg: String },
}

impl Error {
    pub(crate) fn parse(pos: usize, msg: impl Into<String>) -> Self {
        Error::Parse {
            pos,
            msg: msg.into(),
        }
    }

    pub(crate) fn corpus(line: usize, msg: impl Into<String>) -> Self {
        Error::Corpus {
            line,
            msg: msg.into(),
        }
    }
}
