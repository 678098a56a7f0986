use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("order n = {0} is below 3; no 3-nilpotent semigroup has fewer than three elements")]
    OrderTooSmall(i64),
    #[error("invalid cycle type: {0}")]
    InvalidPartition(String),
    #[error("rank k = {k} outside 1..={max} for a {r}x{r} grid")]
    RankOutOfRange { r: usize, k: usize, max: usize },
    #[error("permutation {0:?} is not a permutation of 0..{1}")]
    BadPermutation(Vec<usize>, usize),
    #[error("rank mismatch: partition has r = {partition}, group element has r = {element}")]
    RankMismatch { partition: usize, element: usize },
    #[error("n = {n} exceeds the oracle cap {cap}{hint}")]
    OracleCap { n: usize, cap: usize, hint: &'static str },
    #[error("correction term needs k >= 2, got k = {0}")]
    CorrectionRank(i64),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("Burnside sum is not integral at n = {n}: {value}")]
    NonIntegral { n: usize, value: String },
    #[error("corrupt Stirling cache: {0}")]
    CorruptCache(String),
    #[error("invalid range {0:?}")]
    InvalidRange(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
