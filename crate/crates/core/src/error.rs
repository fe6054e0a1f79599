use alloc::string::String;
use thiserror::Error;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },

    #[error("index {index} out of range 1..={len}")]
    IndexOutOfRange { index: usize, len: usize },

    #[error("invalid selection: {0}")]
    InvalidSelection(String),

    #[error("invalid state: {0}")]
    InvalidState(String),

    #[error("invalid observable: {0}")]
    InvalidObservable(String),

    #[error("observables are not comeasurable")]
    NotComeasurable,

    #[error("invalid probability table: {0}")]
    InvalidTable(String),

    #[error("outcome grids differ")]
    GridMismatch,

    #[error("expectation value has imaginary part {0:e}; operator is not Hermitian")]
    ImaginaryResidue(f64),

    #[error("support violation at cell {cell}: numerator {numerator:e} over vanishing reference")]
    SupportViolation { cell: usize, numerator: f64 },

    #[error("correlation table has no defined cells")]
    AllUndefined,

    #[error("invalid rational {0:?}")]
    ParseRational(String),
}
