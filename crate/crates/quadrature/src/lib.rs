//! Numerical integration of pointwise densities over multi-Taub-NUT spaces
//! and coordinate boxes, with outer-radius sweeps and 1/R extrapolation.

pub mod error;
pub mod gauss;
pub mod integrate;
pub mod plan;
pub mod sweep;

use curvature_engine::{characteristic_forms, CurvatureError, FdOptions};
use model_geometry::{ChartPoint, MetricField};

pub use error::QuadratureError;
pub use gauss::{gauss_legendre, Rule};
pub use integrate::{ball_weight, integrate_box, integrate_density, integrate_outer_shell, outer_edges, IntegralResult,
};
pub use plan::{Extrapolation, FiberRule, Grid, IntegrationPlan};
pub use sweep::{fit_one_over_r, radius_sweep, SweepFit};

/// Euler density of `metric` as a pointwise evaluator (both routes checked).
pub fn euler_integrand<M: MetricField + ?Sized>(
    metric: &M,
    opts: FdOptions,
) -> impl Fn(&ChartPoint) -> Result<f64, CurvatureError> + Sync + '_ {
    move |p| Ok(characteristic_forms(metric, p, &opts)?.euler_density)
}

/// L density of `metric` as a pointwise evaluator (both routes checked).
pub fn l_integrand<M: MetricField + ?Sized>(
    metric: &M,
    opts: FdOptions,
) -> impl Fn(&ChartPoint) -> Result<f64, CurvatureError> + Sync + '_ {
    move |p| Ok(characteristic_forms(metric, p, &opts)?.l_density)
}
