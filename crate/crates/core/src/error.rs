use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("empty input: a Schmidt vector needs at least one entry")]
    EmptyInput,
    #[error("negative entry {0}")]
    NegativeEntry(String),
    #[error("entries sum to {0}, expected 1")]
    BadNormalization(String),
    #[error("cannot mix exact and floating-point values")]
    MixedMode,
    #[error("parse error: {0}")]
    Parse(String),
    #[error("index {index} out of range 1..={len}")]
    IndexOutOfRange { index: usize, len: usize },
    #[error("dimension {got} too small, need at least {min}")]
    DimensionTooSmall { got: usize, min: usize },
    #[error("pair is not incomparable ({0})")]
    NotIncomparable(String),
    #[error("epsilon {eps} must be positive and below {bound}")]
    EpsilonTooLarge { eps: String, bound: String },
    #[error("operation requires floating-point mode")]
    ExactModeUnsupported,
    #[error("target Schmidt rank {target_rank} exceeds source rank {source_rank}")]
    RankMismatch { source_rank: usize, target_rank: usize },
    #[error("precondition failed: {0}")]
    PreconditionFailed(String),
    #[error("no incomparable pair found after {0} draws")]
    RejectionBudgetExhausted(u64),
    #[error("invalid configuration: {0}")]
    ConfigInvalid(String),
    #[error("i/o error: {0}")]
    Io(String),
}

impl Error {
    /// Process exit code used by the command-line front end.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::NotIncomparable(_) | Error::RankMismatch { .. } | Error::PreconditionFailed(_) => 3,
            Error::RejectionBudgetExhausted(_) => 4,
            Error::Io(_) => 1,
            _ => 2,
        }
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
