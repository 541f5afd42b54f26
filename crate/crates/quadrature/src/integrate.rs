//! ∫_M F dvol over a multi-Taub-NUT space and over coordinate boxes.
//!
//! On the Gibbons-Hawking chart dvol = V d³x dθ. The base R³ is covered by
//! one spherical patch per monopole, weighted by a smooth bump χ_j, and an
//! outer spherical patch about the monopole centroid weighted by 1 − Σχ_j.
//! Near a monopole V r² ~ r/2, so every patch integrand is smooth in its
//! spherical coordinates.

use std::f64::consts::{PI, TAU};

use rayon::prelude::*;

use curvature_engine::CurvatureError;
use model_geometry::{ChartPoint, Interval, MetricField, MultiTaubNut, Vec3, Vec4};

use crate::error::QuadratureError;
use crate::gauss::Rule;
use crate::plan::{centre, max_offset, Extrapolation, FiberRule, Grid, IntegrationPlan};
use crate::sweep::fit_one_over_r;

const PANEL_NODES: usize = 8;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IntegralResult {
    pub value: f64,
    pub error_estimate: f64,
    /// Outer radius; 0 for box integrals.
    pub r_used: f64,
    pub extrapolated: bool,
}

/// Smooth step: 0 for t ≤ 0, 1 for t ≥ 1.
fn smooth_step(t: f64) -> f64 {
    let f = |s: f64| if s > 0.0 { (-1.0 / s).exp() } else { 0.0 };
    let a = f(t);
    let b = f(1.0 - t);
    if a + b == 0.0 {
        0.0
    } else {
        a / (a + b)
    }
}

/// Ball weight: 1 for r ≤ b/2, 0 for r ≥ b.
pub fn ball_weight(r: f64, b: f64) -> f64 {
    smooth_step(2.0 * (1.0 - r / b))
}

fn fiber_rule(f: FiberRule) -> Rule {
    match f {
        FiberRule::Invariant { theta } => Rule {
            nodes: vec![theta],
            weights: vec![TAU],
        },
        FiberRule::Trapezoid(n) => Rule::periodic(n, 0.0, TAU),
    }
}

/// One spherical patch: centre, radial rule, polar range, weight kind.
struct Patch {
    centre: Vec3,
    radial: Rule,
    polar: Rule,
    /// `Some(j)`: ball patch of monopole j; `None`: outer patch.
    ball: Option<usize>,
}

struct Sampler<'a, F> {
    space: &'a MultiTaubNut,
    density: &'a F,
    ball_radius: f64,
    azimuthal: Rule,
    fiber: Rule,
}

impl<F> Sampler<'_, F>
where
    F: Fn(&ChartPoint) -> Result<f64, CurvatureError> + Sync,
{
    fn weight(&self, patch: &Patch, x: &Vec3) -> f64 {
        let pts = self.space.config().points();
        match patch.ball {
            Some(j) => ball_weight((x - pts[j]).norm(), self.ball_radius),
            None => 1.0 - pts.iter().map(|p| ball_weight((x - p).norm(), self.ball_radius)).sum::<f64>(),
        }
    }

    /// ∫∫∫ χ F V r² sin φ dφ dψ dθ on the sphere of radius r, and the
    /// largest |χ F V| seen.
    fn shell(&self, patch: &Patch, r: f64) -> Result<(f64, f64), QuadratureError> {
        let mut total = 0.0;
        let mut peak: f64 = 0.0;
        for (phi, wp) in patch.polar.nodes.iter().zip(&patch.polar.weights) {
            let (sp, cp) = phi.sin_cos();
            let mut ring = 0.0;
            for (psi, wa) in self.azimuthal.nodes.iter().zip(&self.azimuthal.weights) {
                let (ss, cs) = psi.sin_cos();
                let x = patch.centre + Vec3::new(r * sp * cs, r * sp * ss, r * cp);
                let chi = self.weight(patch, &x);
                if chi == 0.0 {
                    continue;
                }
                let v = self.space.config().potential(&x)?;
                let mut fib = 0.0;
                for (theta, wt) in self.fiber.nodes.iter().zip(&self.fiber.weights) {
                    let p = self.space.chart_point(&x, *theta)?;
                    let f = (self.density)(&p)?;
                    if !f.is_finite() {
                        return Err(QuadratureError::NonFinite {
                            at: [x.x, x.y, x.z, *theta],
                        });
                    }
                    fib += wt * f;
                    peak = peak.max((chi * f * v).abs());
                }
                ring += wa * chi * v * fib;
            }
            total += wp * sp * ring;
        }
        Ok((total * r * r, peak))
    }
}

/// Number of radial panels of the outer patch; fixed by the plan so that
/// coarsened grids use the same panels with fewer nodes each.
fn panel_count(plan: &IntegrationPlan) -> usize {
    plan.grid.radial.div_ceil(PANEL_NODES).max(2)
}

/// Radial panel edges of the outer patch on [lo, hi]: uniform panels up to
/// the end of the ball zone, geometric beyond it.
pub fn outer_edges(space: &MultiTaubNut, plan: &IntegrationPlan, lo: f64, hi: f64) -> Vec<f64> {
    let panels = panel_count(plan);
    let zone = (max_offset(space) + plan.nut_ball_radius).min(0.5 * plan.outer_radius);
    let n_in = panels / 2;
    let n_out = panels - n_in;
    let mut edges: Vec<f64> = (0..=n_in).map(|i| zone * i as f64 / n_in as f64).collect();
    let q = (plan.outer_radius / zone).powf(1.0 / n_out as f64);
    edges.extend((1..=n_out).map(|i| zone * q.powi(i as i32)));
    *edges.last_mut().unwrap() = plan.outer_radius;
    // Clip to [lo, hi], keeping the interior edges.
    let mut out = vec![lo];
    out.extend(edges.into_iter().filter(|&e| e > lo && e < hi));
    out.push(hi);
    out
}

struct Raw {
    value: f64,
    peak: f64,
    excluded_volume: f64,
}

fn run<F>(
    space: &MultiTaubNut,
    density: &F,
    plan: &IntegrationPlan,
    grid: &Grid,
    outer_range: (f64, f64),
    with_balls: bool,
) -> Result<Raw, QuadratureError>
where
    F: Fn(&ChartPoint) -> Result<f64, CurvatureError> + Sync,
{
    let b = plan.nut_ball_radius;
    let alpha = plan.string_exclusion_angle;
    let sampler = Sampler {
        space,
        density,
        ball_radius: b,
        azimuthal: Rule::periodic(grid.azimuthal, 0.0, TAU),
        fiber: fiber_rule(grid.fiber),
    };
    let mut patches = Vec::new();
    if with_balls {
        let per_panel = (grid.radial / 4).max(2);
        for (j, p) in space.config().points().iter().enumerate() {
            patches.push(Patch {
                centre: *p,
                radial: Rule::composite(&[0.0, 0.5 * b, b], per_panel),
                polar: Rule::gauss(grid.polar, alpha, PI - alpha),
                ball: Some(j),
            });
        }
    }
    let (lo, hi) = outer_range;
    if hi > lo {
        let edges = outer_edges(space, plan, lo, hi);
        let per_panel = (grid.radial / panel_count(plan)).max(2);
        patches.push(Patch {
            centre: centre(space),
            radial: Rule::composite(&edges, per_panel),
            polar: Rule::gauss(grid.polar, 0.0, PI),
            ball: None,
        });
    }
    // Work items in a fixed order; partial sums are reduced serially.
    let items: Vec<(usize, usize)> = patches
        .iter()
        .enumerate()
        .flat_map(|(i, p)| (0..p.radial.len()).map(move |n| (i, n)))
        .collect();
    let parts: Vec<Result<(f64, f64), QuadratureError>> = items
        .par_iter()
        .map(|&(i, n)| {
            let patch = &patches[i];
            let (s, peak) = sampler.shell(patch, patch.radial.nodes[n])?;
            Ok((patch.radial.weights[n] * s, peak))
        })
        .collect();
    let mut value = 0.0;
    let mut peak: f64 = 0.0;
    for part in parts {
        let (v, p) = part?;
        value += v;
        peak = peak.max(p);
    }
    // Two cones of half-angle α in each ball of radius b.
    let cone = 2.0 * TAU * (1.0 - alpha.cos()) * b.powi(3) / 3.0;
    let excluded_volume = if with_balls && alpha > 0.0 {
        TAU * cone * space.config().k() as f64
    } else {
        0.0
    };
    Ok(Raw {
        value,
        peak,
        excluded_volume,
    })
}

/// Estimated ∫_R^∞ of the outer radial integrand, assuming s(r) ∝ r⁻⁴.
fn tail_estimate<F>(space: &MultiTaubNut, density: &F, plan: &IntegrationPlan) -> Result<f64, QuadratureError>
where
    F: Fn(&ChartPoint) -> Result<f64, CurvatureError> + Sync,
{
    let grid = plan.grid.coarsened();
    let sampler = Sampler {
        space,
        density,
        ball_radius: plan.nut_ball_radius,
        azimuthal: Rule::periodic(grid.azimuthal, 0.0, TAU),
        fiber: fiber_rule(grid.fiber),
    };
    let patch = Patch {
        centre: centre(space),
        radial: Rule::gauss(1, 0.0, 1.0),
        polar: Rule::gauss(grid.polar, 0.0, PI),
        ball: None,
    };
    let (s, _) = sampler.shell(&patch, plan.outer_radius)?;
    Ok((s * plan.outer_radius / 3.0).abs())
}

fn integrate_once<F>(space: &MultiTaubNut, density: &F, plan: &IntegrationPlan) -> Result<IntegralResult, QuadratureError>
where
    F: Fn(&ChartPoint) -> Result<f64, CurvatureError> + Sync,
{
    let range = (0.0, plan.outer_radius);
    let fine = run(space, density, plan, &plan.grid, range, true)?;
    let coarse = run(space, density, plan, &plan.grid.coarsened(), range, true)?;
    let tail = tail_estimate(space, density, plan)?;
    let error_estimate = (fine.value - coarse.value).abs() + tail + fine.peak * fine.excluded_volume;
    Ok(IntegralResult {
        value: fine.value,
        error_estimate,
        r_used: plan.outer_radius,
        extrapolated: false,
    })
}

/// ∫_{r ≤ R} F dvol over a multi-Taub-NUT space, with r measured from the
/// monopole centroid.
pub fn integrate_density<F>(space: &MultiTaubNut, density: F, plan: &IntegrationPlan) -> Result<IntegralResult, QuadratureError>
where
    F: Fn(&ChartPoint) -> Result<f64, CurvatureError> + Sync,
{
    plan.validate(space)?;
    match plan.extrapolation {
        Extrapolation::None => integrate_once(space, &density, plan),
        Extrapolation::OneOverR => {
            let r = plan.outer_radius;
            let mut results = Vec::new();
            for f in [0.5, 0.75, 1.0] {
                let sub = IntegrationPlan {
                    outer_radius: f * r,
                    extrapolation: Extrapolation::None,
                    ..*plan
                };
                sub.validate(space)?;
                results.push(integrate_once(space, &density, &sub)?);
            }
            Ok(fit_one_over_r(&results)?.limit)
        }
    }
}

/// Outer-patch contribution from the shell lo ≤ r ≤ hi (no ball patches).
/// Splitting [lo, hi] at an interior radius reproduces this up to rounding
/// when the split point is one of the plan's panel edges.
pub fn integrate_outer_shell<F>(
    space: &MultiTaubNut,
    density: F,
    plan: &IntegrationPlan,
    lo: f64,
    hi: f64,
) -> Result<f64, QuadratureError>
where
    F: Fn(&ChartPoint) -> Result<f64, CurvatureError> + Sync,
{
    plan.validate(space)?;
    if !(lo >= 0.0 && hi >= lo && hi <= plan.outer_radius) {
        return Err(QuadratureError::InvalidPlan(format!("bad shell [{}, {}]", lo, hi)));
    }
    Ok(run(space, &density, plan, &plan.grid, (lo, hi), false)?.value)
}

/// Product rule over a coordinate box of a closed-form metric: Gauss-Legendre
/// in bounded directions, equal weights in periodic ones, volume factor √det g.
pub fn integrate_box<M, F>(
    metric: &M,
    density: F,
    domain: &[Interval; 4],
    nodes: [usize; 4],
) -> Result<IntegralResult, QuadratureError>
where
    M: MetricField + ?Sized,
    F: Fn(&ChartPoint) -> Result<f64, CurvatureError> + Sync,
{
    if nodes.iter().any(|&n| n < 1) {
        return Err(QuadratureError::InvalidPlan("empty box rule".into()));
    }
    let eval = |nodes: [usize; 4]| -> Result<f64, QuadratureError> {
        let rules: Vec<Rule> = (0..4)
            .map(|a| {
                let iv = domain[a];
                if iv.periodic {
                    Rule::periodic(nodes[a], iv.lo, iv.hi - iv.lo)
                } else {
                    Rule::gauss(nodes[a], iv.lo, iv.hi)
                }
            })
            .collect();
        let slabs: Vec<Result<f64, QuadratureError>> = (0..rules[0].len())
            .into_par_iter()
            .map(|i| {
                let mut acc = 0.0;
                for (j, wj) in rules[1].weights.iter().enumerate() {
                    for (k, wk) in rules[2].weights.iter().enumerate() {
                        for (l, wl) in rules[3].weights.iter().enumerate() {
                            let c = Vec4::new(rules[0].nodes[i], rules[1].nodes[j], rules[2].nodes[k], rules[3].nodes[l]);
                            let p = ChartPoint::new(model_geometry::ChartId::Coordinates, c);
                            let f = density(&p)?;
                            if !f.is_finite() {
                                return Err(QuadratureError::NonFinite { at: [c[0], c[1], c[2], c[3]] });
                            }
                            if f == 0.0 {
                                continue;
                            }
                            let vol = metric.metric(&p)?.determinant().abs().sqrt();
                            acc += wj * wk * wl * f * vol;
                        }
                    }
                }
                Ok(rules[0].weights[i] * acc)
            })
            .collect();
        let mut total = 0.0;
        for s in slabs {
            total += s?;
        }
        Ok(total)
    };
    let value = eval(nodes)?;
    let coarse = eval(nodes.map(|n| (n / 2).max(1)))?;
    Ok(IntegralResult {
        value,
        error_estimate: (value - coarse).abs(),
        r_used: 0.0,
        extrapolated: false,
    })
}
