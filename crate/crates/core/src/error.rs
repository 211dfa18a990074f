use thiserror::Error;

/// Errors raised by the engines.
///
/// Guard breaches always state the bound that was exceeded.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("size mismatch: expected {expected}, got {actual}")]
    SizeMismatch { expected: usize, actual: usize },

    #[error("{what} = {value} exceeds the enumeration guard (max {max})")]
    Guard {
        what: &'static str,
        value: usize,
        max: usize,
    },

    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),

    #[error("invalid partition: {0}")]
    InvalidPartition(String),

    #[error("invalid annulus profile: {0}")]
    InvalidProfile(String),

    #[error("permutation is not connected with the reference permutation")]
    Disconnected,

    #[error("genus is not an integer (Euler relation gave {twice_genus}/2)")]
    NonIntegralGenus { twice_genus: i64 },

    #[error("odd number of points ({0}) cannot be paired")]
    OddSize(usize),

    #[error("partition is not annular non-crossing: {0}")]
    NotAnnularNonCrossing(String),

    #[error("vectors belong to different spaces")]
    SpaceMismatch,

    #[error("matrix is not positive semidefinite: {0}")]
    NotPositiveSemidefinite(String),

    #[error("matrix is not Hermitian")]
    NotHermitian,

    #[error("matrix size {k} does not divide N = {n}")]
    Divisibility { k: usize, n: usize },

    #[error("element is not a projection")]
    NotProjection,

    #[error("not enough samples: need at least {need}, have {have}")]
    InsufficientSamples { need: usize, have: usize },

    #[error("word is not cyclically alternating: {0}")]
    NotAlternating(String),

    #[error("unknown symbol `{0}`")]
    UnknownSymbol(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("{0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn guard(what: &'static str, value: usize, max: usize) -> Result<()> {
    if value > max {
        Err(Error::Guard { what, value, max })
    } else {
        Ok(())
    }
}
