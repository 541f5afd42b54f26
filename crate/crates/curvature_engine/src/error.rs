use model_geometry::GeometryError;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum CurvatureError {
    #[error("metric is singular or ill-conditioned (condition number {condition:.3e})")]
    SingularMetric { condition: f64 },
    #[error("{quantity}: routes disagree ({first:.6e} vs {second:.6e})")]
    RouteMismatch {
        quantity: &'static str,
        first: f64,
        second: f64,
    },
    #[error("non-finite metric component near the sample point")]
    NonFinite,
    #[error(transparent)]
    Geometry(#[from] GeometryError),
}
