use curvature_engine::CurvatureError;
use model_geometry::GeometryError;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum LabError {
    #[error("bad perturbation: {0}")]
    BadPerturbation(String),
    #[error("invalid collar model: {0}")]
    InvalidModel(String),
    #[error("linear fit in eps rejected: rms residual {residual:.3e} > {tolerance:.3e}")]
    BadFit { residual: f64, tolerance: f64 },
    #[error("non-finite integrand at slice point {at:?}")]
    NonFinite { at: [f64; 3] },
    #[error(transparent)]
    Curvature(#[from] CurvatureError),
    #[error(transparent)]
    Geometry(#[from] GeometryError),
}
