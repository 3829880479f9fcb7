use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LaurentError {
    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("polynomial is not symmetric under t -> t^-1")]
    NotSymmetric,
    #[error("value at t = 1 is {0}, expected 0")]
    NonzeroAtOne(String),
    #[error("value at t = 1 is {0}, expected +1 or -1")]
    NotNormalizable(String),
    #[error("denominator is zero")]
    ZeroDenominator,
    #[error("denominator vanishes at t = 1 to higher order than the numerator")]
    PoleAtOne,
    #[error("w-series coefficient {k} is not an integer")]
    NonIntegerCoefficient { k: usize },
    #[error("odd power z^{0} has no Alexander counterpart")]
    OddPower(u32),
    #[error("matrix is not square ({rows} rows, row {row} has {len} entries)")]
    NotSquare { rows: usize, row: usize, len: usize },
}
