use crate::lattice::NumClass;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("dimension mismatch: expected rank {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("surface model failed validation: {}", .0.join("; "))]
    InvalidModel(Vec<String>),

    #[error("ample subcone generators are not full-dimensional")]
    DegenerateCone,

    #[error("point lies outside the declared ample cone")]
    OutsideCone,

    #[error("self-intersection of a polarization must be positive")]
    NonPositiveSquare,

    #[error("Riemann-Roch parity violation: c1^2 - c1.K is odd, surface model is inconsistent")]
    ParityViolation,

    #[error("colength of a rank-1 sheaf must be non-negative")]
    NegativeColength,

    #[error("the zero class does not define a wall")]
    ZeroTau,

    #[error("segment endpoint lies on the wall of type {0}")]
    EndpointOnWall(NumClass),

    #[error("segment endpoints coincide")]
    DegenerateSegment,

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("asserted vanishing flags are inconsistent: exact ext^1 dimension would be negative")]
    InconsistentVanishing,

    #[error("sheaf is not semistable for the given polarization")]
    NotSemistable,

    #[error("map undefined here: the sheaf is outside the domain of the descent map")]
    UndefinednessLocus,

    #[error("zero-cycle data missing for a rank-1 factor with positive colength")]
    MissingCycle,

    #[error("internal invariant violation: {0}")]
    Invariant(String),
}

impl Error {
    pub fn pre(msg: impl Into<String>) -> Self {
        Error::Precondition(msg.into())
    }

    /// Exit-code tier used by the CLI: invariant violations are reported
    /// separately from ordinary domain errors.
    pub fn is_invariant_violation(&self) -> bool {
        matches!(self, Error::Invariant(_))
    }
}
