//! Crate-wide error type.

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("lattice mismatch: {0}")]
    LatticeMismatch(String),

    #[error("invalid lattice: {0}")]
    InvalidLattice(String),

    #[error("shape mismatch: expected {expected}, got {got}")]
    ShapeMismatch { expected: String, got: String },

    #[error("not an isometry: {0}")]
    NotAnIsometry(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("vector not in the required subspace: {0}")]
    NotInSpan(String),

    #[error("period vector is not in P (real and imaginary parts do not span a positive-definite two-plane)")]
    NotInPositivePlane,

    #[error("degenerate projection onto the reference plane; perturb the input")]
    DegenerateProjection,

    #[error("root has vanishing U-coordinate b; the orthogonal locus misses the upper half-plane model")]
    RootMissesHalfPlane,

    #[error("polytope error: {0}")]
    Polytope(String),

    #[error("polytope is not reflexive: {0}")]
    NotReflexive(String),

    #[error("weight vector mismatch: {0}")]
    WeightMismatch(String),

    #[error("polynomial is not homogeneous for the declared weights: {0}")]
    NotHomogeneous(String),

    #[error("cyclotomic order {0} not supported (must divide 24)")]
    UnsupportedCyclotomicOrder(u64),

    #[error("incompatible quadratic fields: sqrt({0}) vs sqrt({1})")]
    QuadFieldMismatch(u64, u64),

    #[error("novikov valuation unknown: {0}")]
    UnknownValuation(String),

    #[error("empty generator list")]
    EmptyGenerators,

    #[error("group context mismatch: {0}")]
    GroupContextMismatch(String),

    #[error("json error: {0}")]
    Json(String),

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),

    #[error("{0}")]
    Other(String),
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Json(e.to_string())
    }
}
