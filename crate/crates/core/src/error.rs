use thiserror::Error;

use crate::field::QuadField;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("radicand {0} is not a squarefree positive integer")]
    InvalidField(u64),
    #[error("elements of {0} and {1} cannot be combined")]
    FieldMismatch(QuadField, QuadField),
    #[error("nonzero omega coordinate over Q")]
    IrrationalInRational,
    #[error("division by zero")]
    DivisionByZero,
    #[error("cannot parse {input:?} at byte {pos}: {msg}")]
    Parse { input: String, pos: usize, msg: String },
    #[error("{0} is not totally positive")]
    NotTotallyPositive(String),
    #[error("ideal needs at least one nonzero generator")]
    ZeroIdeal,
    #[error("valuation of zero is infinite")]
    ZeroValuation,
    #[error("valuation needs a proper nonzero ideal")]
    UnitIdeal,
    #[error("{0} does not lie in the ideal")]
    NotInIdeal(String),
    #[error("q-sum windows differ: {0}")]
    WindowMismatch(String),
    #[error("not a chain: {0}")]
    NotAChain(String),
    #[error("chain with {parts} parts does not fit in {max} slots")]
    TooManyParts { parts: usize, max: usize },
    #[error("all-zero solution has no chain partition")]
    ZeroSolution,
}
