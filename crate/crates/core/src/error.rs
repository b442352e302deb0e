use thiserror::Error;

/// Malformed textual input.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("not an integer: {0:?}")]
    BadInteger(String),
    #[error("parts must be weakly decreasing: {0:?}")]
    NotWeaklyDecreasing(Vec<u32>),
    #[error("symbol rows must be strictly decreasing: {0:?}")]
    NotStrictlyDecreasing(Vec<u32>),
    #[error("malformed literal: {0:?}")]
    Malformed(String),
}

/// An argument outside the domain an operation is defined on.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DomainError {
    #[error("{0} is not a special symbol of defect 0 or 1")]
    NotSpecial(String),
    #[error("{sym} is not in the family of {root}")]
    NotInFamily { sym: String, root: String },
    #[error("family {kind} is undefined for a symbol of defect {defect}")]
    FamilyKind { kind: String, defect: i32 },
    #[error("expected defect {expected}, got {got} for {sym}")]
    WrongDefect { sym: String, expected: i32, got: i32 },
    #[error("{0} is not regular")]
    NotRegular(String),
    #[error("sizes of {z} and {zp} are not compatible")]
    SizeMismatch { z: String, zp: String },
    #[error("subset entry {0} is not a single")]
    NotASingle(String),
    #[error("cannot induce a bi-partition of {k} up to {n}")]
    InductionTooSmall { k: u32, n: u32 },
}

/// A structural statement about cores failed on a concrete input.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CoreError {
    #[error("core pairs overlap for ({z}, {zp})")]
    NotDisjoint { z: String, zp: String },
    #[error("brute-force fiber differs from the core reconstruction for ({z}, {zp})")]
    FiberMismatch { z: String, zp: String },
    #[error("inequality route disagrees with brute force on pair {pair} for ({z}, {zp})")]
    RouteMismatch { z: String, zp: String, pair: String },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error(transparent)]
    Domain(#[from] DomainError),
    #[error(transparent)]
    Core(#[from] CoreError),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
