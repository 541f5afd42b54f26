//! Differences of connection 1-forms on slices, the conformal relation
//! between φ- and d-Christoffel symbols, and the auxiliary-metric identity.

use curvature_engine::{christoffel, FdOptions};
use model_geometry::{ChartId, ChartPoint, MetricField, Vec4};

use crate::error::LabError;
use crate::frames::{slice_geometry, OneForms};
use crate::model::{CollarModel, MetricKind};
use crate::transgression::{connection_gap, slice_rules, SliceGrid};

/// ω₁ − ω₀ restricted to {x = ε}, in the adapted frames of the two metrics.
#[derive(Debug, Clone, PartialEq)]
pub struct ConnectionDifference {
    pub eps: f64,
    pub pair: (MetricKind, MetricKind),
    /// Frame-indexed components θ_{AB}(∂u_k) at the point where the sup is attained.
    pub matrix_of_1forms: OneForms,
    pub at: [f64; 3],
    /// max over sample points, frame indices and slice directions of |θ_{AB}(∂u_k)|.
    pub sup_norm: f64,
}

pub fn connection_difference(
    model: &CollarModel,
    pair: (MetricKind, MetricKind),
    eps: f64,
) -> Result<ConnectionDifference, LabError> {
    connection_difference_with(model, pair, eps, SliceGrid { base: 6, fiber: 6 }, &FdOptions::default())
}

pub fn connection_difference_with(
    model: &CollarModel,
    pair: (MetricKind, MetricKind),
    eps: f64,
    grid: SliceGrid,
    opts: &FdOptions,
) -> Result<ConnectionDifference, LabError> {
    if !(eps > 0.0 && eps < 0.5) {
        return Err(LabError::InvalidModel(format!("eps = {} outside (0, 1/2)", eps)));
    }
    let m0 = model.metric(pair.0, eps);
    let m1 = model.metric(pair.1, eps);
    let rules = slice_rules(model, grid);
    let mut best = ConnectionDifference {
        eps,
        pair,
        matrix_of_1forms: [[[0.0; 3]; 4]; 4],
        at: [rules[0].nodes[0], rules[1].nodes[0], rules[2].nodes[0]],
        sup_norm: 0.0,
    };
    for &a in &rules[0].nodes {
        for &b in &rules[1].nodes {
            for &c in &rules[2].nodes {
                let u = [a, b, c];
                let theta = connection_gap(&slice_geometry(&m0, eps, &u, opts)?, &slice_geometry(&m1, eps, &u, opts)?);
                let norm = theta.iter().flatten().flatten().fold(0.0_f64, |m, v| m.max(v.abs()));
                if !norm.is_finite() {
                    return Err(LabError::NonFinite { at: u });
                }
                if norm > best.sup_norm {
                    best.sup_norm = norm;
                    best.matrix_of_1forms = theta;
                    best.at = u;
                }
            }
        }
    }
    Ok(best)
}

/// Least-squares slope of log(sup_norm) against log(ε).
pub fn log_log_slope(diffs: &[ConnectionDifference]) -> f64 {
    let pts: Vec<(f64, f64)> = diffs.iter().map(|d| (d.eps.ln(), d.sup_norm.ln())).collect();
    let n = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / n;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / n;
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
    sxy / sxx
}

/// The d-kind with the same perturbations as a φ-kind.
pub fn d_partner(kind: MetricKind) -> Option<MetricKind> {
    match kind {
        MetricKind::ProductPhi => Some(MetricKind::ProductD),
        MetricKind::AsymptoticPhi => Some(MetricKind::AsymptoticD),
        MetricKind::ExactPhi => Some(MetricKind::ExactD),
        _ => None,
    }
}

/// Relative gap between the d-Christoffel symbols computed directly and
/// those obtained from the φ-metric by the conformal rule with f = ln x,
///   ᵈ∇_X Y = ᵠ∇_X Y + df(X)Y + df(Y)X − g_φ(X, Y) grad_φ f,
/// on coordinate fields X = ∂_μ, Y = ∂_β.
pub fn conformal_christoffel_residual(model: &CollarModel, phi_kind: MetricKind, coords: &Vec4) -> Result<f64, LabError> {
    let d_kind = d_partner(phi_kind)
        .ok_or_else(|| LabError::InvalidModel(format!("{} is not a non-auxiliary φ-metric", phi_kind)))?;
    let p = ChartPoint::new(ChartId::Collar, *coords);
    let opts = FdOptions::default();
    let phi = model.metric(phi_kind, 0.0);
    let gp = phi.metric(&p)?;
    let gp_inv = gp
        .try_inverse()
        .ok_or(LabError::Curvature(curvature_engine::CurvatureError::SingularMetric {
            condition: f64::INFINITY,
        }))?;
    let gamma_phi = christoffel(&phi, &p, &opts)?;
    let gamma_d = christoffel(&model.metric(d_kind, 0.0), &p, &opts)?;
    let x = coords[0];
    let mut diff: f64 = 0.0;
    let mut scale: f64 = 0.0;
    for al in 0..4 {
        for be in 0..4 {
            for mu in 0..4 {
                let delta = |a: usize, b: usize| if a == b { 1.0 } else { 0.0 };
                let mut v = gamma_phi.get(al, be, mu) + delta(al, be) * delta(mu, 0) / x;
                v += delta(be, 0) / x * delta(al, mu);
                v -= gp[(mu, be)] * gp_inv[(al, 0)] / x;
                let direct = gamma_d.get(al, be, mu);
                diff = diff.max((v - direct).abs());
                scale = scale.max(direct.abs());
            }
        }
    }
    Ok(diff / scale.max(f64::MIN_POSITIVE))
}

/// The metric an auxiliary kind must agree with on {x = ε}.
pub fn auxiliary_partner(kind: MetricKind) -> Option<MetricKind> {
    match kind {
        MetricKind::AuxiliaryEps => Some(MetricKind::AsymptoticPhi),
        MetricKind::AuxiliaryProductEps => Some(MetricKind::ProductPhi),
        MetricKind::AuxiliaryEpsD => Some(MetricKind::AsymptoticD),
        _ => None,
    }
}

/// max|g_aux − g_partner| / max|g_partner| at (ε, u).
pub fn auxiliary_boundary_gap(model: &CollarModel, aux: MetricKind, eps: f64, u: &[f64; 3]) -> Result<f64, LabError> {
    let partner = auxiliary_partner(aux)
        .ok_or_else(|| LabError::InvalidModel(format!("{} is not an auxiliary metric", aux)))?;
    let c = Vec4::new(eps, u[0], u[1], u[2]);
    let ga = model.components(aux, eps, &c);
    let gp = model.components(partner, eps, &c);
    Ok((ga - gp).abs().max() / gp.abs().max())
}
