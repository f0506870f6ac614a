//! Exact arithmetic over GF(q) and dense matrices over it.

mod field;
mod matrix;

pub use field::{reduction_polynomial, Field, MAX_ORDER};
pub use matrix::GfMatrix;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("characteristic {0} is not prime")]
    NonPrimeCharacteristic(u32),
    #[error("GF({p}^{k}) is not supported (at most 256 elements)")]
    FieldTooLarge { p: u32, k: u32 },
    #[error("extension degree must be positive")]
    InvalidDegree,
    #[error("{0} is not a supported prime power")]
    NotAPrimePower(u32),
    #[error("bad field order `{0}` (expected `p^k` or a prime)")]
    BadOrder(String),
    #[error("entry {entry} is not an element of GF({q})")]
    EntryOutOfRange { entry: u32, q: usize },
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("matrix has rank {rank} but {rows} rows")]
    RankDeficient { rank: usize, rows: usize },
}
