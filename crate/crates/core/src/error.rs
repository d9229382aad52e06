use thiserror::Error;

/// Errors surfaced by the library.
#[derive(Debug, Error)]
pub enum Error {
    #[error("point ({re}, {im}) lies outside the open unit disc")]
    PointOutsideDisc { re: f64, im: f64 },

    #[error("invalid boundary arc: lo={lo}, hi={hi}")]
    InvalidArc { lo: f64, hi: f64 },

    #[error("point lies in the central cell |z| < 1/2, not in a dyadic square")]
    CentralCell,

    #[error("point too close to the boundary for the supported square depth")]
    DepthExceeded,

    #[error("need at least two points")]
    NotEnoughPoints,

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("zero at index {index} has multiplicity {mult} > 1; criterion requires simple zeros")]
    MultipleZero { index: usize, mult: u32 },

    #[error("census has no occupied squares")]
    EmptyCensus,

    #[error("selection exhausted: {0}")]
    SelectionExhausted(String),

    #[error("search exhausted: {0}")]
    SearchExhausted(String),

    #[error("solver failure: {0}")]
    SolverFailure(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
