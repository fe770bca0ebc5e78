use thiserror::Error;

/// Errors produced by the transform, its fast decompositions and the
/// application pipelines built on top of them.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid parameter set: {0}")]
    InvalidParams(String),

    #[error("parameter set is the identity point (1,0,0,0,0); it has no kernel")]
    IdentityPoint,

    #[error("degenerate parameter set: T = {t:e} vanishes")]
    ZeroT { t: f64 },

    #[error("matrix is not a 4D rotation (orthogonality defect {orthogonality:e}, det {det})")]
    NotARotation { orthogonality: f64, det: f64 },

    #[error("chirp matrix is not symmetric (asymmetry {0:e})")]
    NonSymmetric(f64),

    #[error("chirp-convolution matrix is singular (det {0:e})")]
    SingularS(f64),

    #[error("affine matrix is singular (det {0:e})")]
    SingularB(f64),

    #[error("decomposition factor {name} is not symmetric: {matrix:?}")]
    NonSymmetricFactor { name: &'static str, matrix: [[f64; 2]; 2] },

    #[error("no symmetric decomposition found: {0}")]
    DecompositionFailure(String),

    #[error("geometry mismatch: {0}")]
    GeometryMismatch(String),

    #[error("dimension mismatch: {left:?} vs {right:?}")]
    DimensionMismatch {
        left: (usize, usize),
        right: (usize, usize),
    },

    #[error("grid too large for this operation ({size}, limit {limit})")]
    TooLarge { size: usize, limit: usize },

    #[error("invalid grid: {0}")]
    InvalidGrid(String),

    #[error("malformed file: {0}")]
    Format(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Image(#[from] image::ImageError),
}

impl Error {
    /// True for failures caused by the numeric content of the request rather
    /// than by files or arguments.
    pub fn is_numeric(&self) -> bool {
        !matches!(
            self,
            Error::Io(_) | Error::Json(_) | Error::Image(_) | Error::Format(_)
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
