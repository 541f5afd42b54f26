//! Outer-radius sweeps and the c₀ + c₁/R tail fit.

use curvature_engine::CurvatureError;
use model_geometry::{ChartPoint, MultiTaubNut};

use crate::error::QuadratureError;
use crate::integrate::{integrate_density, IntegralResult};
use crate::plan::{Extrapolation, IntegrationPlan};

#[derive(Debug, Clone, PartialEq)]
pub struct SweepFit {
    pub results: Vec<IntegralResult>,
    /// c₀, with `extrapolated` set.
    pub limit: IntegralResult,
    pub c1: f64,
    /// Root-mean-square residual of the fit.
    pub residual: f64,
}

/// Least-squares fit of value(R) = c₀ + c₁/R.
///
/// Fails with `BadFit` when the residual exceeds ten times the mean error
/// estimate of the inputs (plus a rounding floor).
pub fn fit_one_over_r(results: &[IntegralResult]) -> Result<SweepFit, QuadratureError> {
    if results.len() < 3 {
        return Err(QuadratureError::InvalidPlan("need at least 3 radii".into()));
    }
    if results.windows(2).any(|w| !(w[1].r_used > w[0].r_used)) {
        return Err(QuadratureError::InvalidPlan("radii must be strictly increasing".into()));
    }
    let n = results.len() as f64;
    let xs: Vec<f64> = results.iter().map(|r| 1.0 / r.r_used).collect();
    let ys: Vec<f64> = results.iter().map(|r| r.value).collect();
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let sxx: f64 = xs.iter().map(|x| (x - mx) * (x - mx)).sum();
    let sxy: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let c1 = sxy / sxx;
    let c0 = my - c1 * mx;
    let residual = (xs
        .iter()
        .zip(&ys)
        .map(|(x, y)| (y - c0 - c1 * x).powi(2))
        .sum::<f64>()
        / n)
        .sqrt();
    let mean_err = results.iter().map(|r| r.error_estimate).sum::<f64>() / n;
    let scale = ys.iter().fold(0.0f64, |m, y| m.max(y.abs()));
    let floor = 1e-12 * scale.max(1e-300);
    if residual > 10.0 * mean_err + floor {
        return Err(QuadratureError::BadFit {
            residual,
            error: mean_err,
        });
    }
    // Standard error of the intercept, with at least one residual's worth of slack.
    let se = residual * (1.0 / n + mx * mx / sxx).sqrt() * (n / (n - 2.0).max(1.0)).sqrt();
    let error_estimate = se + residual + mean_err;
    Ok(SweepFit {
        results: results.to_vec(),
        limit: IntegralResult {
            value: c0,
            error_estimate,
            r_used: results.last().map(|r| r.r_used).unwrap_or(0.0),
            extrapolated: true,
        },
        c1,
        residual,
    })
}

/// Integrates at each outer radius and fits c₀ + c₁/R.
pub fn radius_sweep<F>(
    space: &MultiTaubNut,
    density: F,
    plan: &IntegrationPlan,
    radii: &[f64],
) -> Result<SweepFit, QuadratureError>
where
    F: Fn(&ChartPoint) -> Result<f64, CurvatureError> + Sync,
{
    if radii.len() < 3 || radii.windows(2).any(|w| !(w[1] > w[0])) {
        return Err(QuadratureError::InvalidPlan(
            "radii must be strictly increasing with at least 3 values".into(),
        ));
    }
    let mut results = Vec::with_capacity(radii.len());
    for &r in radii {
        let sub = IntegrationPlan {
            outer_radius: r,
            extrapolation: Extrapolation::None,
            ..*plan
        };
        results.push(integrate_density(space, &density, &sub)?);
    }
    fit_one_over_r(&results)
}
