//! Error type shared by the exact-arithmetic layers.

use thiserror::Error;

use crate::partition::Partition;

#[derive(Error, Debug, Clone)]
pub enum Error {
    #[error("not a partition: {0}")]
    NotAPartition(String),

    #[error("cell ({row},{col}) outside diagram")]
    CellOutsideDiagram { row: usize, col: usize },

    #[error("weight mismatch: {left} vs {right}")]
    WeightMismatch { left: u32, right: u32 },

    #[error("partition {lambda} exceeds box ({n_cols}^{n_rows})")]
    BoxExceeded {
        lambda: Partition,
        n_cols: u32,
        n_rows: usize,
    },

    #[error("division by the zero polynomial")]
    DivisionByZero,

    #[error("variable `{0}` not in the indeterminate set")]
    UnknownVariable(String),

    #[error("indeterminate sets differ: {0} vs {1}")]
    VarSetMismatch(String, String),

    #[error("q-shifted factorial with negative index has an identically zero factor; the enclosing ratio vanishes")]
    PochhammerPole,

    #[error("cache i/o: {0}")]
    CacheIo(String),

    #[error("alphabet letter count exceeds series variables: need {need}, have {have}")]
    AlphabetTooLong { need: usize, have: usize },
}
