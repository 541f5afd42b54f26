use curvature_engine::CurvatureError;
use model_geometry::GeometryError;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum QuadratureError {
    #[error("non-finite density sample at {at:?}")]
    NonFinite { at: [f64; 4] },
    #[error("1/R fit residual {residual:.3e} exceeds 10x the error estimate {error:.3e}")]
    BadFit { residual: f64, error: f64 },
    #[error("invalid integration plan: {0}")]
    InvalidPlan(String),
    #[error(transparent)]
    Curvature(#[from] CurvatureError),
    #[error(transparent)]
    Geometry(#[from] GeometryError),
}
