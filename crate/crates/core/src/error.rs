use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid convex body: {0}")]
    InvalidBody(String),

    #[error("the origin is not an interior point of the body")]
    OriginNotInterior,

    #[error("input vertex {index} is not an extreme point of the convex hull")]
    NonExtremeVertex { index: usize },

    #[error("operation not supported in dimension {dim}")]
    DimensionUnsupported { dim: usize },

    #[error("point is not on the boundary of the body (gauge = {gauge})")]
    NotOnBoundary { gauge: f64 },

    #[error("direction must be nonzero")]
    ZeroDirection,

    #[error("invalid profile: {0}")]
    InvalidProfile(String),

    #[error("vertical section at x = {x} is not a segment")]
    SectionNotSegment { x: f64 },

    #[error("profile mismatch: {0}")]
    ProfileMismatch(String),

    #[error("body is not symmetric under (p, q) -> (p, -q)")]
    NotASymmetral,

    #[error("invalid polygon: {0}")]
    InvalidPolygon(String),

    #[error("invalid measure: {0}")]
    InvalidMeasure(String),

    #[error("invalid interval set: {0}")]
    InvalidIntervals(String),

    #[error("malformed JSON: {0}")]
    Json(#[from] serde_json::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
