use alloc::string::String;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("no prime decomposition: the zero and unit ideals are rejected here")]
    NoPrimeDecomposition,
    #[error("the zero and unit ideals have no Čech complex")]
    ZeroOrUnitIdeal,
    #[error("variable x{index} out of range for n = {n}")]
    VariableOutOfRange { index: usize, n: usize },
    #[error("n = {0} outside the supported range 1..=16")]
    UnsupportedVariableCount(usize),
    #[error("{count} generators exceed the supported maximum of {max}")]
    TooManyGenerators { count: usize, max: usize },
    #[error("dimension of zero module")]
    ZeroModule,
    #[error("not computable in this model: infinite Bass number")]
    InfiniteBassNumber,
    #[error("box volume {volume} exceeds the budget of {budget} degree points")]
    BudgetExceeded { volume: u128, budget: u128 },
    #[error("invalid box: {0}")]
    InvalidBox(String),
    #[error("{0} is not a prime below 2^32")]
    NotAPrime(u64),
    #[error("objects live over different rings (n = {left} vs n = {right})")]
    RingMismatch { left: usize, right: usize },
    #[error("invalid pattern module: {0}")]
    InvalidModule(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
}
