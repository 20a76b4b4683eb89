use thiserror::Error;

/// Errors raised by the lattice, polynomial and search layers.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("size n = {n} is outside the supported range 1..={max}")]
    SizeOutOfRange { n: usize, max: usize },

    #[error("{0:?} is not a permutation of 1..n")]
    NotABijection(Vec<u8>),

    #[error("size mismatch: {left} vs {right}")]
    SizeMismatch { left: usize, right: usize },

    #[error("pair set is not biclosed, so it is not the inversion set of any permutation")]
    NotBiclosed,

    #[error("cannot parse {what} from {input:?}")]
    Parse { what: &'static str, input: String },

    #[error("index {index} is outside the ground set 1..={ground}")]
    IndexOutOfRange { index: usize, ground: usize },

    #[error("rank {rank} is outside 0..={max}")]
    RankOutOfRange { rank: usize, max: usize },

    #[error("{what}: n = {n} exceeds the exhaustive-mode limit {max}")]
    TooLarge {
        what: &'static str,
        n: usize,
        max: usize,
    },

    #[error("invalid parameters: {0}")]
    InvalidParameters(String),

    #[error("polynomial division leaves a nonzero remainder")]
    NonExactDivision,

    #[error("unknown verification suite {0:?}")]
    UnknownSuite(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidParameters(msg.into())
}
