use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid transposition ({a},{b}) on ground set of size {n}")]
    InvalidTransposition { a: u32, b: u32, n: u32 },

    #[error("probability {0} is outside [0, 1]")]
    InvalidProbability(String),

    #[error("invalid tuple: {0}")]
    InvalidTuple(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("subsequence index {index} out of range for a sequence of length {len}")]
    IndexOutOfRange { index: usize, len: usize },

    #[error("subsequence indices must be strictly increasing")]
    UnorderedMask,

    #[error("state space of {needed} tuples exceeds the budget of {budget}")]
    BudgetExceeded { needed: u128, budget: u64 },

    #[error("search gave up after {nodes} nodes at length {length}")]
    SearchBudgetExceeded { nodes: u64, length: usize },

    #[error("no network of length at most {0} exists")]
    NoNetworkWithin(usize),

    #[error("support graph failed the expansion check after {0} retries")]
    RetriesExhausted(u32),

    #[error("network is not a star network")]
    NotStar,

    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
}

impl Error {
    pub(crate) fn parse(line: usize, msg: impl Into<String>) -> Self {
        Error::Parse { line, msg: msg.into() }
    }
}
