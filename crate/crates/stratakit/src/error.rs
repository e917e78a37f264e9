//! Crate-wide error type.

use crate::divisor_count::SweepRow;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("order sum {sum} is not divisible by 2k = {two_k}")]
    NotPartition { sum: i64, two_k: i64 },

    #[error("order sum {sum} forces genus below zero")]
    NegativeGenus { sum: i64 },

    #[error("signature entries must be nonzero")]
    ZeroEntry,

    #[error("signature must have at least one entry")]
    EmptyOrders,

    #[error("k must be a positive integer")]
    KZero,

    #[error("k = {k} must be odd here")]
    KEven { k: u64 },

    #[error("k = {k} must be even here")]
    KOdd { k: u64 },

    #[error("{n} is not an odd prime")]
    NotOddPrime { n: u64 },

    #[error("stratum is not of parity type: entry {entry} has 2-adic valuation equal to that of k = {k}")]
    NotParityType { entry: i64, k: u64 },

    #[error("expected genus {expected}, found genus {found}")]
    WrongGenus { expected: u32, found: u32 },

    #[error("{d} is not a valid torsion number for this stratum")]
    InvalidTorsion { d: u64 },

    #[error("gcd violation: {what}")]
    GcdViolation { what: String },

    #[error("({m1}, {m2}, {m3}) does not sum to -k = -{k}")]
    NotPartitionOfMinusK { k: u64, m1: i64, m2: i64, m3: i64 },

    #[error("conjecture counterexample at k = {} , n = {}: N_k(n) = {} vs target {}", row.k, row.n, row.count, row.target)]
    ConjectureCounterexample { row: SweepRow },

    #[error("parameter out of range: {what}")]
    RangeViolation { what: String },

    #[error("operation not realizable: {what}")]
    NonRealizable { what: String },

    #[error("rewrite rule {rule} not applicable: {violated}")]
    RuleInapplicable { rule: &'static str, violated: String },

    #[error("precondition violated: {what}")]
    PreconditionViolation { what: String },

    #[error("cannot parse signature text {text:?}: {what}")]
    ParseSignature { text: String, what: String },
}
