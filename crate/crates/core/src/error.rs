use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("dimension error: {0}")]
    Dimension(String),

    #[error("resultant of two zero polynomials is undefined")]
    UndefinedResultant,

    #[error("domain error: {0}")]
    Domain(String),

    #[error("unsupported: {0}")]
    Capability(String),

    #[error("capacity exceeded: {0}")]
    Capacity(String),

    #[error("invalid input: {0}")]
    Input(String),

    #[error("invariant violated: {0}")]
    InvariantViolation(String),

    #[error("point set does not span the ambient space (rank {rank} < {dim})")]
    NotSpanning { rank: usize, dim: usize },

    #[error("delta is not in the lattice `{0}`; sphere computations require it")]
    DeltaNotInLattice(String),
}

/// Coarse classification used for process exit codes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorClass {
    Input,
    Invariant,
    Capacity,
}

impl Error {
    pub fn class(&self) -> ErrorClass {
        match self {
            Error::InvariantViolation(_) | Error::DeltaNotInLattice(_) => ErrorClass::Invariant,
            Error::Capacity(_) => ErrorClass::Capacity,
            _ => ErrorClass::Input,
        }
    }
}
