use thiserror::Error;

/// Errors raised by the engine.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid rank {rank} for family {family}")]
    InvalidRank { family: String, rank: usize },
    #[error("unknown root label `{0}`")]
    InvalidLabel(String),
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("lattice {lattice} is not supported for family {family}")]
    UnsupportedLattice { family: String, lattice: String },
    #[error("point is not regular: it lies on the wall {wall}")]
    NonRegularPoint { wall: String },
    #[error("direction is not generic: {0}")]
    GenericityFailure(String),
    #[error("insufficient truncation: need order {needed}, have {have}")]
    InsufficientTruncation { needed: usize, have: usize },
    #[error("oracle not applicable: {0}")]
    OracleNotApplicable(String),
    #[error("invalid exponents: {0}")]
    InvalidExponents(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("internal invariant violated: {0}")]
    Internal(String),
}

impl Error {
    /// True for errors where the input was well formed but the mathematics refuses it.
    pub fn is_domain(&self) -> bool {
        !matches!(self, Error::Parse(_) | Error::InvalidLabel(_))
    }
}

pub type Result<T> = std::result::Result<T, Error>;
