use alloc::string::String;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("invalid instance: {0}")]
    InvalidInstance(String),
    #[error("not a permutation of 0..{n}")]
    InvalidPermutation { n: usize },
    #[error("offset {offset} is not below the side size {m}")]
    InvalidOffset { offset: u32, m: u32 },
    #[error("invalid size: {0}")]
    InvalidSize(String),
    #[error("invalid degree {d} for side size {m}")]
    InvalidDegree { d: u32, m: u32 },
    #[error("method {method} does not apply: {reason}")]
    MethodMismatch { method: &'static str, reason: String },
    #[error("resource limit: {what} needs {needed} entries, budget is {limit}")]
    ResourceLimit {
        what: &'static str,
        needed: u64,
        limit: u64,
    },
    #[error("the set system has no maximal chain")]
    NoChains,
    #[error("universe mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("the chain-tradeoff solver needs an idempotent semiring")]
    UnsupportedSemiring,
    #[error("invalid set system: {0}")]
    InvalidSetSystem(String),
    #[error("not a partial order: the relation has a cycle")]
    Cyclic,
}
