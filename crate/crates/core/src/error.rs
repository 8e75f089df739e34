use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("vectors are linearly dependent: numerical rank {rank} < {expected}")]
    RankDeficient { rank: usize, expected: usize },

    #[error("dimension mismatch: {0}")]
    DimMismatch(String),

    #[error("index {index} outside 0..={max}")]
    IndexOutOfRange { index: usize, max: usize },

    #[error("operation requires a subspace of positive dimension")]
    DimZero,

    #[error("degenerate configuration: {0}")]
    DegenerateConfiguration(String),

    #[error("argument out of range: {0}")]
    OutOfRange(String),

    #[error("matrix is singular")]
    SingularMatrix,

    #[error("binomial pole encountered: {0}")]
    PoleEncountered(String),

    #[error("point set is not full-dimensional")]
    NotFullDimensional,

    #[error("input too large: {0}")]
    TooLarge(String),

    #[error("input point {0} is not a vertex of the convex hull")]
    NotVerticesOfHull(usize),

    #[error("projection has affine dimension {rank} < {expected}")]
    DegenerateProjection { rank: usize, expected: usize },

    #[error("normal cone of face {0} has no accepted samples")]
    EmptyCone(usize),

    #[error("subspace not in general relative position: {0}")]
    GeneralPositionViolated(String),

    #[error("hull construction failed: {0}")]
    Hull(String),

    #[error("invalid input: {0}")]
    Invalid(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
