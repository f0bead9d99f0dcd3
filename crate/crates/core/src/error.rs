use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("matrix is not normal: ‖MM* − M*M‖_F = {residual:.3e} exceeds {threshold:.3e}")]
    NotNormal { residual: f64, threshold: f64 },

    #[error("eigensolver did not converge")]
    EigFailure,

    #[error("matrix is not square or empty ({rows}×{cols})")]
    BadShape { rows: usize, cols: usize },

    #[error("invalid spectral model: {0}")]
    InvalidModel(String),

    #[error("rank must be at least 1")]
    InvalidRank,

    #[error("geometry is undecidable within tolerance: {0}")]
    UncertainGeometry(String),

    #[error("total dimension {dim} is smaller than k = {k}")]
    InsufficientDimension { k: String, dim: String },

    #[error("rank k = {k} exceeds the total dimension {dim}")]
    RankExceedsDimension { k: String, dim: String },

    #[error("the accumulating tail of a sequence family hides the answer: {0}")]
    UnresolvedTail(String),

    #[error("model is not supported on the real axis")]
    NotSelfAdjoint,

    #[error("operator norm {norm:.6} exceeds 1")]
    NotContraction { norm: f64 },

    #[error("not a strict contraction (spectral radius or norm {norm:.6} ≥ 1)")]
    NotStrictContraction { norm: f64 },

    #[error("atom {re:.6}{im:+.6}i is not inside the open unit disk")]
    AtomNotStrictContraction { re: f64, im: f64 },

    #[error("point is not on the segment between the dilation endpoints (distance {distance:.3e})")]
    NotOnSegment { distance: f64 },

    #[error("dilation endpoints coincide")]
    CoincidentEndpoints,

    #[error("dilation endpoint has modulus {modulus:.12}, expected 1")]
    NotUnimodular { modulus: f64 },

    #[error("no separating angle: best margin {margin:.3e} does not clear the tolerance")]
    NoSeparatingAngle { margin: f64 },

    #[error("no closed half plane through the point has dimension below k")]
    NoWuWitness,

    #[error("dilation failed verification: {0}")]
    DilationCheck(String),
}

impl Error {
    /// Exit status used by the command-line front end.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::InvalidModel(_) | Error::BadShape { .. } => 1,
            Error::UncertainGeometry(_) | Error::UnresolvedTail(_) => 3,
            _ => 2,
        }
    }
}
