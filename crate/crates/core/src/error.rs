use thiserror::Error;

/// Errors produced by the library.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid group order {0}: must be at least 1")]
    InvalidOrder(usize),

    #[error("symmetric group degree {0} is outside the supported range 1..=5")]
    SymmetricDegree(usize),

    #[error("malformed Cayley table: {0}")]
    TableFormat(String),

    #[error("group axiom violated: {0}")]
    GroupAxiom(String),

    #[error("group element index {index} out of range for a group of order {order}")]
    ElementOutOfRange { index: usize, order: usize },

    #[error("invalid value: {0}")]
    Invalid(String),

    #[error("size mismatch: {0}")]
    SizeMismatch(String),

    #[error("not a chamber: block {block} has {size} elements")]
    NotAChamber { block: usize, size: usize },

    #[error("refusing to enumerate {what}: estimated {estimate} items exceeds the limit of {limit}")]
    SizeGuard { what: String, estimate: u128, limit: u128 },

    #[error("parse error at position {pos}: {message}")]
    Parse { pos: usize, message: String },

    #[error("coefficients are not constant on the type fiber of {composition}: {witness}")]
    InvarianceViolation { composition: String, witness: String },

    #[error("element is not in the descent algebra: {first} has coefficient {first_coeff} but {second} has {second_coeff} (same descent composition)")]
    NotInSpan {
        first: String,
        first_coeff: String,
        second: String,
        second_coeff: String,
    },

    #[error("i/o error: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
