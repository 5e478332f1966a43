use thiserror::Error;

/// Malformed input files and literals.
#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum ParseError {
    #[error("invalid ring `{0}` (expected z, q or f<prime>)")]
    InvalidRing(String),
    #[error("invalid scalar `{0}`")]
    InvalidScalar(String),
    #[error("invalid group definition: {0}")]
    InvalidGroup(String),
    #[error("invalid algebra spec: {0}")]
    InvalidSpec(String),
    #[error("malformed json: {0}")]
    Json(String),
}

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum Error {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error("matrix dimensions do not match: {0}")]
    DimensionMismatch(String),
    #[error("consecutive differentials do not compose to zero")]
    CompositionNotZero,
    #[error("complex is not bounded")]
    UnboundedComplex,
    #[error("operation requires a field, got {0}")]
    UnsupportedRing(String),
    #[error("elements belong to different groups")]
    GroupMismatch,
    #[error("elements have coefficients in different rings")]
    RingMismatch,
    #[error("operation requires a finite group; use the resolution models for free abelian groups")]
    InfiniteGroup,
    #[error("operation requires a free abelian group")]
    NotFreeAbelian,
    #[error("cochain backend does not support this operation: {0}")]
    UnsupportedBackend(String),
    #[error("coefficients must be the algebra itself")]
    CoefficientsNotInA,
    #[error("bimodules are not compatible: {0}")]
    BimoduleMismatch(String),
    #[error("chain is not a cycle")]
    NotACycle,
    #[error("cochain is not a cocycle")]
    NotACocycle,
    #[error("coefficient module not supported by this model: {0}")]
    UnsupportedModule(String),
    #[error("rank {0} is not supported")]
    UnsupportedRank(usize),
    #[error("duality matrix in degree {0} is not invertible")]
    NotInvertible(usize),
    #[error("linear solve failed: {0}")]
    LinearSolveFailed(String),
    #[error("algebra spec has no bracket table")]
    MissingBracket,
    #[error("algebra spec has no operator")]
    MissingDelta,
    #[error("operator does not square to zero")]
    DeltaNotSquareZero,
    #[error("operator is not a derivation")]
    NotADerivation,
    #[error("derivation does not square to zero")]
    NotSquareZero,
    #[error("B does not square to zero")]
    BNotSquareZero,
    #[error("coalgebra is not finite dimensional")]
    NotFiniteDimensional,
    #[error("degree {0} exceeds the truncation of the resolution")]
    BeyondTruncation(usize),
}

pub type Result<T> = std::result::Result<T, Error>;
