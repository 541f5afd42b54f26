//! Model collars [0,1) × W over a fibred boundary W → N: φ- and d-metrics,
//! auxiliary metrics, differences of connection forms, transgression
//! integrals and their ε → 0 limits.

pub mod boundary;
pub mod connection;
pub mod counterexample;
pub mod error;
pub mod frames;
pub mod model;
pub mod transgression;

pub use boundary::{boundary_condition_check, BoundaryReport};
pub use connection::{connection_difference, conformal_christoffel_residual, ConnectionDifference};
pub use counterexample::{l2_counterexample, CounterexampleReport};
pub use error::LabError;
pub use model::{build_collar, Base, CollarMetric, CollarModel, CollarParams, Fiber, MetricKind};
pub use transgression::{
    cs_limit, fit_linear, transgression_integral, CsLimit, LinearFit, MetricFamily, Polynomial, SliceGrid,
    TransgressionResult,
};
