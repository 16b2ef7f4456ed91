//! Crate-wide error type.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),

    #[error("cycle notation error at column {column}: {message}")]
    CycleSyntax { column: usize, message: String },

    #[error("group file error at line {line}: {message}")]
    GroupFile { line: usize, message: String },

    #[error("fact file error: {0}")]
    FactFile(String),

    #[error("degree mismatch: {0} vs {1}")]
    DegreeMismatch(usize, usize),

    #[error("not a subgroup: {0}")]
    NotASubgroup(String),

    #[error("{0}")]
    InvalidInput(String),

    #[error("prime {p} does not divide the group order")]
    PrimeDoesNotDivide { p: u64 },

    #[error("p^2 = {p}^2 divides the group order; only p || |G| is supported")]
    SylowNotCyclicOfOrderP { p: u64 },

    #[error("group is not p-pure for p = {p}; {context}")]
    NotPPure { p: u64, context: String },

    #[error("subgroup is not metacyclic of the expected shape: {0}")]
    NotMetacyclic(String),

    #[error("interpretation inconsistent: {0}")]
    Inconsistent(String),

    #[error("search budget of {budget} exhausted: {context}")]
    BudgetExhausted { budget: u64, context: String },

    #[error("missing fact data: {0}")]
    MissingFact(String),

    #[error("unknown citation key: {0}")]
    UnknownCitation(String),

    #[error("unknown group: {0}")]
    UnknownGroup(String),

    #[error("enumeration limit exceeded: {0}")]
    TooLarge(String),
}

pub type Result<T> = std::result::Result<T, Error>;
