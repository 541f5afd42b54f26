//! Transgression forms TP(∇₀, ∇₁) = m∫₀¹ P(ω₁ − ω₀, Ω_t, …, Ω_t) dt on
//! slices {x = ε}, their integrals, and the ε → 0 extrapolation.
//!
//! With θ = ω₁ − ω₀ and ∇_t = ∇₀ + tθ,
//!   Ω_t = (1 − t)Ω₀ + tΩ₁ − t(1 − t) θ∧θ,
//! so only the two endpoint connections and curvatures are needed.

use std::f64::consts::PI;

use curvature_engine::{characteristic_forms, FdOptions};
use model_geometry::{ChartId, ChartPoint, MetricField, Vec4};
use quadrature::Rule;
use rayon::prelude::*;

use crate::error::LabError;
use crate::frames::{slice_geometry, OneForms, SliceGeometry, TwoForms};
use crate::model::{Base, CollarModel, Fiber, MetricKind};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Polynomial {
    /// Pfaffian, e = Pf(Ω/2π).
    Euler,
    /// L₁ = p₁/3.
    L,
}

impl std::fmt::Display for Polynomial {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Polynomial::Euler => "euler",
            Polynomial::L => "L",
        })
    }
}

/// Which pair of connections defines the boundary correction.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum MetricFamily {
    /// (ĝ_ε, g_φ)
    Phi,
    /// (ε² ĝ_ε, g_d)
    D,
}

impl MetricFamily {
    pub fn pair(&self) -> (MetricKind, MetricKind) {
        match self {
            MetricFamily::Phi => (MetricKind::AuxiliaryEps, MetricKind::ExactPhi),
            MetricFamily::D => (MetricKind::AuxiliaryEpsD, MetricKind::ExactD),
        }
    }
}

/// Node counts on the slice W: per circle, or polar nodes per sphere (with
/// twice as many azimuthal nodes).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SliceGrid {
    pub base: usize,
    pub fiber: usize,
}

impl Default for SliceGrid {
    fn default() -> Self {
        Self { base: 12, fiber: 12 }
    }
}

/// ∫_{∂M_ε} TP, with {x = ε} oriented as the boundary of {x ≥ ε}.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TransgressionResult {
    pub eps: f64,
    pub polynomial: Polynomial,
    pub value: f64,
    pub t_nodes: usize,
    /// |value − value on the halved grid|.
    pub error_estimate: f64,
}

impl TransgressionResult {
    /// The boundary correction −∫_{∂M_ε} TP.
    pub fn correction(&self) -> f64 {
        -self.value
    }
}

fn wedge_1_2(a: &[f64; 3], b: &[[f64; 3]; 3]) -> f64 {
    a[0] * b[1][2] - a[1] * b[0][2] + a[2] * b[0][1]
}

fn levi_civita(a: usize, b: usize, c: usize, d: usize) -> f64 {
    let p = [a, b, c, d];
    let mut sign = 1.0;
    for i in 0..4 {
        for j in i + 1..4 {
            if p[i] == p[j] {
                return 0.0;
            }
            if p[i] > p[j] {
                sign = -sign;
            }
        }
    }
    sign
}

/// P(θ, Ω) as a 3-form evaluated on (∂u₁, ∂u₂, ∂u₃), for the polarisation
/// of the degree-2 invariant polynomial.
pub fn polarized(poly: Polynomial, theta: &OneForms, omega: &TwoForms) -> f64 {
    match poly {
        Polynomial::Euler => {
            let mut acc = 0.0;
            for a in 0..4 {
                for b in 0..4 {
                    if a == b {
                        continue;
                    }
                    for c in 0..4 {
                        for d in 0..4 {
                            let s = levi_civita(a, b, c, d);
                            if s != 0.0 {
                                acc += s * wedge_1_2(&theta[a][b], &omega[c][d]);
                            }
                        }
                    }
                }
            }
            acc / (32.0 * PI * PI)
        }
        Polynomial::L => {
            let mut acc = 0.0;
            for a in 0..4 {
                for b in 0..4 {
                    acc += wedge_1_2(&theta[a][b], &omega[b][a]);
                }
            }
            // p₁ = −tr(Ω∧Ω)/8π², L = p₁/3
            -acc / (8.0 * PI * PI) / 3.0
        }
    }
}

fn theta_wedge_theta(theta: &OneForms) -> TwoForms {
    let mut out = [[[[0.0; 3]; 3]; 4]; 4];
    for a in 0..4 {
        for b in 0..4 {
            for k in 0..3 {
                for l in 0..3 {
                    let mut s = 0.0;
                    for c in 0..4 {
                        s += theta[a][c][k] * theta[c][b][l] - theta[a][c][l] * theta[c][b][k];
                    }
                    out[a][b][k][l] = s;
                }
            }
        }
    }
    out
}

/// Difference θ = ω₁ − ω₀ of two slice geometries.
pub fn connection_gap(g0: &SliceGeometry, g1: &SliceGeometry) -> OneForms {
    let mut theta = [[[0.0; 3]; 4]; 4];
    for a in 0..4 {
        for b in 0..4 {
            for k in 0..3 {
                theta[a][b][k] = g1.omega[a][b][k] - g0.omega[a][b][k];
            }
        }
    }
    theta
}

/// TP(∇₀, ∇₁)(∂u₁, ∂u₂, ∂u₃) at one point, Gauss-Legendre in t.
pub fn transgression_density(poly: Polynomial, g0: &SliceGeometry, g1: &SliceGeometry, t_nodes: usize) -> f64 {
    let theta = connection_gap(g0, g1);
    let tt = theta_wedge_theta(&theta);
    let rule = Rule::gauss(t_nodes, 0.0, 1.0);
    let mut acc = 0.0;
    for (&t, &w) in rule.nodes.iter().zip(&rule.weights) {
        let mut om = [[[[0.0; 3]; 3]; 4]; 4];
        for a in 0..4 {
            for b in 0..4 {
                for k in 0..3 {
                    for l in 0..3 {
                        om[a][b][k][l] = (1.0 - t) * g0.curvature[a][b][k][l] + t * g1.curvature[a][b][k][l]
                            - t * (1.0 - t) * tt[a][b][k][l];
                    }
                }
            }
        }
        acc += w * polarized(poly, &theta, &om);
    }
    2.0 * acc
}

/// Product rules over the slice coordinates (y, z).
pub fn slice_rules(model: &CollarModel, grid: SliceGrid) -> [Rule; 3] {
    let tau = 2.0 * PI;
    let circle = |n: usize| Rule::periodic(n, 0.0, tau);
    let sphere = |n: usize| [Rule::gauss(n, 0.0, PI), Rule::periodic(2 * n, 0.0, tau)];
    match (model.base(), model.fiber()) {
        (Base::Sphere { .. }, Fiber::Circle { .. }) => {
            let [a, b] = sphere(grid.base);
            [a, b, circle(grid.fiber)]
        }
        (Base::Circle { .. }, Fiber::Sphere { .. }) => {
            let [a, b] = sphere(grid.fiber);
            [circle(grid.base), a, b]
        }
        _ => unreachable!("validated in build_collar"),
    }
}

fn check_t_nodes(t_nodes: usize) -> Result<(), LabError> {
    if t_nodes < 4 {
        return Err(LabError::InvalidModel(format!("t_nodes = {} < 4", t_nodes)));
    }
    Ok(())
}

/// ∫ over the slice of f(u) du in the fixed order of the product rule.
fn slice_integral<F>(rules: &[Rule; 3], f: F) -> Result<f64, LabError>
where
    F: Fn(&[f64; 3]) -> Result<f64, LabError> + Sync,
{
    let rows: Vec<Result<f64, LabError>> = (0..rules[0].len())
        .into_par_iter()
        .map(|i| {
            let mut acc = 0.0;
            for (j, wj) in rules[1].weights.iter().enumerate() {
                for (k, wk) in rules[2].weights.iter().enumerate() {
                    let u = [rules[0].nodes[i], rules[1].nodes[j], rules[2].nodes[k]];
                    let v = f(&u)?;
                    if !v.is_finite() {
                        return Err(LabError::NonFinite { at: u });
                    }
                    acc += wj * wk * v;
                }
            }
            Ok(rules[0].weights[i] * acc)
        })
        .collect();
    let mut total = 0.0;
    for r in rows {
        total += r?;
    }
    Ok(total)
}

fn halved(grid: SliceGrid) -> SliceGrid {
    SliceGrid {
        base: (grid.base / 2).max(2),
        fiber: (grid.fiber / 2).max(2),
    }
}

/// ∫_{∂M_ε} TP(∇₀, ∇₁) for the Levi-Civita connections of two metric kinds.
pub fn transgression_integral(
    model: &CollarModel,
    polynomial: Polynomial,
    nabla0: MetricKind,
    nabla1: MetricKind,
    eps: f64,
    t_nodes: usize,
) -> Result<TransgressionResult, LabError> {
    transgression_integral_with(model, polynomial, nabla0, nabla1, eps, t_nodes, SliceGrid::default(), &FdOptions::default())
}

#[allow(clippy::too_many_arguments)]
pub fn transgression_integral_with(
    model: &CollarModel,
    polynomial: Polynomial,
    nabla0: MetricKind,
    nabla1: MetricKind,
    eps: f64,
    t_nodes: usize,
    grid: SliceGrid,
    opts: &FdOptions,
) -> Result<TransgressionResult, LabError> {
    check_t_nodes(t_nodes)?;
    if !(eps > 0.0 && eps < 1.0) {
        return Err(LabError::InvalidModel(format!("eps = {} outside (0, 1)", eps)));
    }
    let value = slice_transgression(model, polynomial, (nabla0, nabla1), eps, eps, t_nodes, grid, opts)?;
    let coarse = slice_transgression(model, polynomial, (nabla0, nabla1), eps, eps, t_nodes, halved(grid), opts)?;
    Ok(TransgressionResult {
        eps,
        polynomial,
        value,
        t_nodes,
        error_estimate: (value - coarse).abs(),
    })
}

/// ∫_{x = const} TP(∇₀, ∇₁) oriented as the boundary of {x ≥ const}; the
/// auxiliary kinds use the parameter `eps`, which need not equal `x`.
#[allow(clippy::too_many_arguments)]
pub fn slice_transgression(
    model: &CollarModel,
    polynomial: Polynomial,
    pair: (MetricKind, MetricKind),
    eps: f64,
    x: f64,
    t_nodes: usize,
    grid: SliceGrid,
    opts: &FdOptions,
) -> Result<f64, LabError> {
    check_t_nodes(t_nodes)?;
    if pair.0 == pair.1 {
        return Ok(0.0);
    }
    let m0 = model.metric(pair.0, eps);
    let m1 = model.metric(pair.1, eps);
    let density = |u: &[f64; 3]| -> Result<f64, LabError> {
        let g0 = slice_geometry(&m0, x, u, opts)?;
        let g1 = slice_geometry(&m1, x, u, opts)?;
        Ok(transgression_density(polynomial, &g0, &g1, t_nodes))
    };
    // Outward normal of {x ≥ const} is −∂x, so the induced orientation is −du.
    Ok(-slice_integral(&slice_rules(model, grid), density)?)
}

/// ∫ over [x₀, x₁] × W of P(∇₁) − P(∇₀), from the pointwise characteristic
/// densities of the curvature engine.
pub fn slab_integral(
    model: &CollarModel,
    polynomial: Polynomial,
    nabla0: MetricKind,
    nabla1: MetricKind,
    eps: f64,
    x_range: (f64, f64),
    x_nodes: usize,
    grid: SliceGrid,
) -> Result<f64, LabError> {
    let opts = FdOptions::default();
    let m0 = model.metric(nabla0, eps);
    let m1 = model.metric(nabla1, eps);
    let xs = Rule::gauss(x_nodes, x_range.0, x_range.1);
    let rules = slice_rules(model, grid);
    let mut total = 0.0;
    for (&x, &wx) in xs.nodes.iter().zip(&xs.weights) {
        let f = |u: &[f64; 3]| -> Result<f64, LabError> {
            let p = ChartPoint::new(ChartId::Collar, Vec4::new(x, u[0], u[1], u[2]));
            let mut acc = 0.0;
            for (sign, m) in [(-1.0, &m0), (1.0, &m1)] {
                let forms = characteristic_forms(m, &p, &opts)?;
                let d = match polynomial {
                    Polynomial::Euler => forms.euler_density,
                    Polynomial::L => forms.l_density,
                };
                let vol = m.metric(&p)?.determinant().sqrt();
                acc += sign * d * vol;
            }
            Ok(acc)
        };
        total += wx * slice_integral(&rules, f)?;
    }
    Ok(total)
}

/// Linear fit v ≈ c₀ + c₁ε.
#[derive(Debug, Clone, PartialEq)]
pub struct LinearFit {
    pub intercept: f64,
    pub slope: f64,
    /// Root-mean-square residual.
    pub residual: f64,
}

/// Relative residual above which a linear-in-ε fit is rejected.
pub const FIT_TOLERANCE: f64 = 0.05;
/// Absolute part of the rejection threshold, a tenth of the 1e-2 level at
/// which corrections are compared with zero. Values that decay like ε² sit
/// below it and are accepted.
pub const FIT_FLOOR: f64 = 1e-3;

/// Least-squares fit in ε; `BadFit` when the rms residual exceeds
/// `FIT_TOLERANCE × max|v| + FIT_FLOOR`.
pub fn fit_linear(eps: &[f64], values: &[f64]) -> Result<LinearFit, LabError> {
    let n = eps.len();
    if n < 3 || values.len() != n {
        return Err(LabError::InvalidModel("a linear fit needs at least three ε values".into()));
    }
    let nf = n as f64;
    let mx = eps.iter().sum::<f64>() / nf;
    let my = values.iter().sum::<f64>() / nf;
    let sxx: f64 = eps.iter().map(|e| (e - mx).powi(2)).sum();
    let sxy: f64 = eps.iter().zip(values).map(|(e, v)| (e - mx) * (v - my)).sum();
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let residual = (eps
        .iter()
        .zip(values)
        .map(|(e, v)| (v - intercept - slope * e).powi(2))
        .sum::<f64>()
        / nf)
        .sqrt();
    let scale = values.iter().fold(0.0_f64, |m, v| m.max(v.abs()));
    let tolerance = FIT_TOLERANCE * scale + FIT_FLOOR;
    if !(residual <= tolerance) {
        return Err(LabError::BadFit { residual, tolerance });
    }
    Ok(LinearFit {
        intercept,
        slope,
        residual,
    })
}

/// Extrapolated boundary correction −lim ∫_{∂M_ε} TP.
#[derive(Debug, Clone, PartialEq)]
pub struct CsLimit {
    pub polynomial: Polynomial,
    pub family: MetricFamily,
    pub results: Vec<TransgressionResult>,
    pub correction: f64,
    pub fit: LinearFit,
}

pub const DEFAULT_EPS: [f64; 4] = [0.1, 0.05, 0.025, 0.0125];

pub fn cs_limit(
    model: &CollarModel,
    polynomial: Polynomial,
    family: MetricFamily,
    eps_list: &[f64],
) -> Result<CsLimit, LabError> {
    cs_limit_with(model, polynomial, family, eps_list, SliceGrid::default())
}

pub fn cs_limit_with(
    model: &CollarModel,
    polynomial: Polynomial,
    family: MetricFamily,
    eps_list: &[f64],
    grid: SliceGrid,
) -> Result<CsLimit, LabError> {
    if eps_list.windows(2).any(|w| !(w[1] < w[0])) {
        return Err(LabError::InvalidModel("eps_list must be strictly decreasing".into()));
    }
    let (k0, k1) = family.pair();
    let opts = FdOptions::default();
    let results = eps_list
        .iter()
        .map(|&e| transgression_integral_with(model, polynomial, k0, k1, e, 4, grid, &opts))
        .collect::<Result<Vec<_>, _>>()?;
    let values: Vec<f64> = results.iter().map(|r| r.value).collect();
    let fit = fit_linear(eps_list, &values)?;
    Ok(CsLimit {
        polynomial,
        family,
        correction: -fit.intercept,
        results,
        fit,
    })
}
