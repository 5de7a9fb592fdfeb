//! Partitions, Lusztig symbols and the 2-defects of unipotent characters of
//! classical groups.

mod partition;
mod scan;
mod symbol;

use thiserror::Error;

pub use partition::{defect_type_a, degree_type_a, partitions, Partition};
pub use scan::{
    claimed_lower_bound, claimed_threshold, defect_table, enumerate_symbols, min_defect_scan, reduced_symbols, scan_bounds, BoundCheck,
    ClassicalType, DefectClass, ScanMinimum, ScanRecord,
};
pub use symbol::{defect_bcd, degree_bcd, identity_check, Symbol, SymbolFamily};

use crate::exactmath::MathError;
use crate::liedata::LieError;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SymbolError {
    #[error("cannot parse {0:?}")]
    Parse(String),
    #[error("repeated entry in symbol row {0:?}")]
    RepeatedEntry(Vec<u32>),
    #[error("symbol {symbol} has rank {actual}, expected {expected}")]
    RankMismatch {
        symbol: String,
        expected: u32,
        actual: i64,
    },
    #[error("symbol {symbol} does not label a character of type {family:?}")]
    ParityMismatch { symbol: String, family: SymbolFamily },
    #[error("degree quotient does not cancel: {0}")]
    NonCancelling(String),
    #[error("symbol identity fails for {symbol}: value {value}")]
    IdentityViolated { symbol: String, value: i64 },
    #[error(transparent)]
    Math(#[from] MathError),
    #[error(transparent)]
    Lie(#[from] LieError),
}
