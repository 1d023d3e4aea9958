use alloc::string::String;

use crate::rootdata::CartanType;
use crate::weight::Weight;

pub type Result<T, E = Error> = core::result::Result<T, E>;

/// Coarse classification used by front ends to pick exit codes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorKind {
    /// Bad input: invalid type, non-prime, violated precondition.
    Config,
    /// Input is well formed but the mathematical operation is undefined on it.
    Domain,
    /// A configured enumeration cap was exceeded.
    Resource,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("invalid Cartan type {0}")]
    InvalidType(String),
    #[error("rank {rank} exceeds the configured cap {cap}")]
    RankTooLarge { rank: usize, cap: usize },
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("characters live over different root data ({left} vs {right})")]
    DatumMismatch { left: CartanType, right: CartanType },
    #[error("{0} is not a prime")]
    NotPrime(u64),
    #[error("representations over different primes ({0} vs {1})")]
    PrimeMismatch(u32, u32),
    #[error("weight {0} is not dominant")]
    NotDominant(Weight),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("Weyl group has more than {limit} elements")]
    WeylGroupTooLarge { limit: usize },
    #[error("path model exceeds the cap of {cap} paths")]
    PathCapExceeded { cap: usize },
    #[error("character is not W-invariant at weight {0}")]
    NotWInvariant(Weight),
    #[error("character has no finite decomposition in the requested basis (stuck at {0})")]
    NoFiniteDecomposition(Weight),
    #[error("contracted character is zero")]
    EmptyContraction,
}

impl Error {
    pub fn kind(&self) -> ErrorKind {
        match self {
            Error::InvalidType(_)
            | Error::RankTooLarge { .. }
            | Error::DimensionMismatch { .. }
            | Error::DatumMismatch { .. }
            | Error::NotPrime(_)
            | Error::PrimeMismatch(..)
            | Error::NotDominant(_)
            | Error::Precondition(_) => ErrorKind::Config,
            Error::NotWInvariant(_)
            | Error::NoFiniteDecomposition(_)
            | Error::EmptyContraction => ErrorKind::Domain,
            Error::WeylGroupTooLarge { .. } | Error::PathCapExceeded { .. } => ErrorKind::Resource,
        }
    }
}
