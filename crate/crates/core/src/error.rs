use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("points belong to different model spaces")]
    ModelMismatch,

    #[error("invalid representative: {0}")]
    Representation(String),

    #[error("vector is not unit length (norm^2 = {norm_sqr})")]
    Normalization { norm_sqr: f64 },

    #[error("ideal endpoints coincide; no geodesic joins them")]
    DegenerateGeodesic,

    #[error("ideal point coincides with the Busemann center")]
    CenterCollision,

    #[error("degenerate configuration: {0}")]
    Degenerate(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("argument outside the domain: {0}")]
    Domain(String),

    #[error("limit did not stabilize (last two iterates {previous} and {last})")]
    LimitConvergence { previous: f64, last: f64 },

    #[error("optimizer did not converge (residual {residual:e})")]
    OptimizerConvergence { residual: f64 },

    #[error("path is not horizontal: step {step} has vertical increment {value:e}")]
    NotHorizontal { step: usize, value: f64 },

    #[error("chart error: {0}")]
    Chart(String),

    #[error("configuration error: {0}")]
    Config(String),

    #[error("i/o error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
