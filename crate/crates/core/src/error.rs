use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("rank mismatch: expected {expected}, got {found}")]
    RankMismatch { expected: usize, found: usize },

    #[error("zero vector has no primitive part")]
    ZeroVector,

    #[error("gcd({0}, {1}) != 1")]
    NotCoprime(String, String),

    #[error("sublattice basis has {found} vectors, a corank-1 sublattice of rank {rank} needs {needed}")]
    NotCorankOne { rank: usize, found: usize, needed: usize },

    #[error("sublattice basis vectors are linearly dependent")]
    DependentBasis,

    #[error("sublattice is not saturated (index {0})")]
    NotSaturated(String),

    #[error("cone is not full-dimensional (generators span rank {span} < {rank})")]
    NotFullDimensional { rank: usize, span: usize },

    #[error("cone is not pointed (it contains a line)")]
    NotPointed,

    #[error("cone needs at least one generator")]
    EmptyCone,

    #[error("{0} is not a Demazure root of the cone")]
    NotARoot(String),

    #[error("character {0} lies outside the weight monoid")]
    OutsideMonoid(String),

    #[error("character {0} is not generated by the derivation's generating set")]
    NotGenerated(String),

    #[error("derivation precondition failed: {0}")]
    Precondition(String),

    #[error("decomposition does not reproduce the derivation: {0}")]
    InconsistentDecomposition(String),

    #[error("operation needs a corank-1 subtorus, got corank {0}")]
    UnsupportedCorank(usize),

    #[error("invalid surface data: {0}")]
    InvalidSurface(String),

    #[error("operation is only defined when the line meets the interior of the cone")]
    NotInteriorCase,

    #[error("invalid input: {0}")]
    Input(String),
}
