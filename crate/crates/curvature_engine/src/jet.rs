//! Finite-difference 2-jets of metric components.

use model_geometry::{ChartPoint, Mat4, MetricField, Vec4};

use crate::error::CurvatureError;

/// Largest accepted condition number of g.
pub const MAX_CONDITION: f64 = 1e10;

/// Finite-difference settings. The step along coordinate a is
/// `step_fraction × coord_scale[a]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FdOptions {
    pub step_fraction: f64,
    /// Combine steps h and h/2 to cancel the O(h²) error.
    pub richardson: bool,
}

impl Default for FdOptions {
    fn default() -> Self {
        Self {
            step_fraction: 1e-4,
            richardson: false,
        }
    }
}

impl FdOptions {
    pub fn with_fraction(step_fraction: f64) -> Self {
        Self {
            step_fraction,
            ..Self::default()
        }
    }
}

/// g, ∂_a g and ∂_a∂_b g at a point.
#[derive(Debug, Clone, PartialEq)]
pub struct MetricJet {
    pub g: Mat4,
    pub dg: [Mat4; 4],
    pub ddg: [[Mat4; 4]; 4],
    pub steps: Vec4,
}

fn symmetrize(m: Mat4) -> Mat4 {
    (m + m.transpose()) * 0.5
}

fn eval<M: MetricField + ?Sized>(metric: &M, p: &ChartPoint) -> Result<Mat4, CurvatureError> {
    let g = metric.metric(p)?;
    if g.iter().any(|v| !v.is_finite()) {
        return Err(CurvatureError::NonFinite);
    }
    Ok(symmetrize(g))
}

/// Rejects metrics that are not positive definite or are ill-conditioned.
pub fn check_conditioning(g: &Mat4) -> Result<(), CurvatureError> {
    let eig = g.symmetric_eigen().eigenvalues;
    let lo = eig.min();
    let hi = eig.max();
    if !(lo > 0.0) || hi / lo > MAX_CONDITION {
        let condition = if lo > 0.0 { hi / lo } else { f64::INFINITY };
        return Err(CurvatureError::SingularMetric { condition });
    }
    Ok(())
}

fn jet_with_steps<M: MetricField + ?Sized>(
    metric: &M,
    p: &ChartPoint,
    h: &Vec4,
) -> Result<MetricJet, CurvatureError> {
    let g = eval(metric, p)?;
    let mut plus = [Mat4::zeros(); 4];
    let mut minus = [Mat4::zeros(); 4];
    for a in 0..4 {
        plus[a] = eval(metric, &p.shifted(a, h[a]))?;
        minus[a] = eval(metric, &p.shifted(a, -h[a]))?;
    }
    let mut dg = [Mat4::zeros(); 4];
    let mut ddg = [[Mat4::zeros(); 4]; 4];
    for a in 0..4 {
        dg[a] = (plus[a] - minus[a]) / (2.0 * h[a]);
        ddg[a][a] = (plus[a] - g * 2.0 + minus[a]) / (h[a] * h[a]);
    }
    for a in 0..4 {
        for b in a + 1..4 {
            let at = |sa: f64, sb: f64| eval(metric, &p.shifted(a, sa * h[a]).shifted(b, sb * h[b]));
            let m = (at(1.0, 1.0)? - at(1.0, -1.0)? - at(-1.0, 1.0)? + at(-1.0, -1.0)?)
                / (4.0 * h[a] * h[b]);
            ddg[a][b] = m;
            ddg[b][a] = m;
        }
    }
    Ok(MetricJet { g, dg, ddg, steps: *h })
}

/// Central second-order differences of the metric components.
pub fn metric_jet<M: MetricField + ?Sized>(
    metric: &M,
    p: &ChartPoint,
    opts: &FdOptions,
) -> Result<MetricJet, CurvatureError> {
    let h = metric.coord_scale(p) * opts.step_fraction;
    let coarse = jet_with_steps(metric, p, &h)?;
    check_conditioning(&coarse.g)?;
    if !opts.richardson {
        return Ok(coarse);
    }
    let fine = jet_with_steps(metric, p, &(h * 0.5))?;
    let extrapolate = |f: &Mat4, c: &Mat4| (f * 4.0 - c) / 3.0;
    let mut out = fine.clone();
    for a in 0..4 {
        out.dg[a] = extrapolate(&fine.dg[a], &coarse.dg[a]);
        for b in 0..4 {
            out.ddg[a][b] = extrapolate(&fine.ddg[a][b], &coarse.ddg[a][b]);
        }
    }
    Ok(out)
}
