use std::path::PathBuf;

use curvature_engine::CurvatureError;
use invariant_core::InvariantError;
use model_geometry::GeometryError;
use quadrature::QuadratureError;
use thiserror::Error;
use transgression_lab::LabError;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{line}:{column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("invalid configuration: {0}")]
    Config(String),
    #[error("cannot read {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error(transparent)]
    Invariant(#[from] InvariantError),
    #[error(transparent)]
    Quadrature(#[from] QuadratureError),
    #[error(transparent)]
    Lab(#[from] LabError),
    #[error(transparent)]
    Curvature(#[from] CurvatureError),
    #[error(transparent)]
    Geometry(#[from] GeometryError),
}

impl CliError {
    /// 2 for anything the user can fix in the input, 1 for a failed computation.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Parse { .. } | CliError::Config(_) | CliError::Io { .. } => 2,
            CliError::Invariant(e) => match e {
                InvariantError::InexactEquality(_) | InvariantError::NonRationalSignature(_) => 1,
                _ => 2,
            },
            CliError::Quadrature(QuadratureError::InvalidPlan(_)) => 2,
            CliError::Lab(LabError::InvalidModel(_) | LabError::BadPerturbation(_)) => 2,
            CliError::Geometry(GeometryError::InvalidConfig(_)) => 2,
            _ => 1,
        }
    }
}
