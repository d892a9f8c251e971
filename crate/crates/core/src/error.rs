use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("unsupported dimension {n} (supported range {min}..={max})")]
    UnsupportedDimension { n: usize, min: usize, max: usize },

    #[error("no prime congruent to {residue} mod {modulus} found up to {limit}")]
    SearchExhausted {
        residue: u128,
        modulus: u128,
        limit: u64,
    },

    #[error("no prime of norm <= {norm_limit} fits position {index}")]
    NormSearchExhausted { index: usize, norm_limit: u64 },

    #[error("matrix is not a quadratic residue matrix")]
    NotQrMatrix,

    #[error("matrix is not a cubic residue matrix")]
    NotCubicResidueMatrix,

    #[error("matrix is not a quartic residue matrix")]
    NotQuarticResidueMatrix,

    #[error("element divides the ramified prime")]
    RamifiedPrime,

    #[error("numerator is divisible by the denominator prime")]
    NotCoprime,

    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("internal error: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidArgument(msg.into())
}
