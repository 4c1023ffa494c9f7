use thiserror::Error;

/// Errors shared by every module in the crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("matrix dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("matrix is not unimodular: det = {det}")]
    NotUnimodular { det: String },

    #[error("matrix is singular")]
    Singular,

    #[error("polynomial is not monic")]
    NotMonic,

    #[error("polynomial of degree {degree} where degree {expected} is required")]
    WrongDegree { degree: usize, expected: usize },

    #[error("characteristic polynomial is not reciprocal: {0}")]
    NotReciprocal(String),

    #[error("matrix is not skew-symmetric at entry ({row},{col})")]
    NotSkewSymmetric { row: usize, col: usize },

    #[error("invariant form is degenerate (Pfaffian vanishes on the whole solution space)")]
    DegenerateForm,

    #[error("form is not preserved: A^T J A differs from J at entry ({row},{col})")]
    FormNotPreserved { row: usize, col: usize },

    #[error("eigen data unavailable for this spectral type: {0}")]
    EigenDataUnavailable(String),

    #[error("characteristic polynomial does not split into a hyperbolic and an elliptic quadratic: {0}")]
    NotDecomposable(String),

    #[error("matrix has no cyclic vector (its minimal polynomial divides the characteristic polynomial properly)")]
    Derogatory,

    #[error("simulation parameter out of range: {0}")]
    BadSimParameter(String),

    #[error("internal invariant violated: {0}")]
    InternalInvariant(String),
}
