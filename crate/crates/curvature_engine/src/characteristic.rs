//! Pointwise Euler, Pontryagin and L densities, each computed along two
//! independent routes.

use std::f64::consts::PI;

use model_geometry::{ChartPoint, MetricField};

use crate::error::CurvatureError;
use crate::jet::FdOptions;
use crate::riemann::{riemann, CurvatureBundle, CurvatureNorms, Rank4};

/// Relative tolerance between the Pfaffian and the norms route.
pub const EULER_ROUTE_TOL: f64 = 1e-5;
/// Relative tolerance between the Pontryagin and the norms route.
pub const L_ROUTE_TOL: f64 = 1e-4;

/// Densities relative to the Riemannian volume form of the chart orientation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CharacteristicForms {
    /// (1/8π²)(|W⁺|² + |W⁻|² − |Z|² + S²/24).
    pub euler_density: f64,
    /// Pf(Ω/2π) evaluated directly.
    pub euler_pfaffian: f64,
    /// −tr(Ω∧Ω)/8π².
    pub p1_density: f64,
    /// (1/12π²)(|W⁺|² − |W⁻|²).
    pub l_density: f64,
    pub sd_asd_densities: CurvatureNorms,
}

fn norms_euler(n: &CurvatureNorms) -> f64 {
    (n.w_plus_sq + n.w_minus_sq - n.z_sq + n.s_sq / 24.0) / (8.0 * PI * PI)
}

fn norms_l(n: &CurvatureNorms) -> f64 {
    (n.w_plus_sq - n.w_minus_sq) / (12.0 * PI * PI)
}

/// Size of the curvature at the point, in density units.
fn density_scale(n: &CurvatureNorms) -> f64 {
    (n.w_plus_sq + n.w_minus_sq + n.z_sq + n.s_sq / 24.0) / (8.0 * PI * PI)
}

fn check_route(
    quantity: &'static str,
    first: f64,
    second: f64,
    scale: f64,
    tol: f64,
) -> Result<(), CurvatureError> {
    if (first - second).abs() > tol * scale.max(first.abs()).max(second.abs()) + 1e-300 {
        return Err(CurvatureError::RouteMismatch {
            quantity,
            first,
            second,
        });
    }
    Ok(())
}

/// Nonzero entries of the Levi-Civita symbol in four dimensions.
fn levi_civita() -> [([usize; 4], f64); 24] {
    let mut out = [([0; 4], 0.0); 24];
    let mut n = 0;
    for a in 0..4 {
        for b in 0..4 {
            for c in 0..4 {
                for d in 0..4 {
                    let idx = [a, b, c, d];
                    let mut distinct = true;
                    let mut inversions = 0;
                    for i in 0..4 {
                        for j in i + 1..4 {
                            distinct &= idx[i] != idx[j];
                            inversions += (idx[i] > idx[j]) as usize;
                        }
                    }
                    if distinct {
                        out[n] = (idx, if inversions % 2 == 0 { 1.0 } else { -1.0 });
                        n += 1;
                    }
                }
            }
        }
    }
    out
}

/// Pf(Ω/2π) = (1/128π²) ε_{abcd} ε_{efgh} R_{abef} R_{cdgh}.
pub fn pfaffian_density(r: &Rank4) -> f64 {
    let eps = levi_civita();
    let mut acc = 0.0;
    for ([a, b, c, d], s1) in eps {
        for ([e, f, g, h], s2) in eps {
            acc += s1 * s2 * r[a][b][e][f] * r[c][d][g][h];
        }
    }
    acc / (128.0 * PI * PI)
}

/// p₁ = −tr(Ω∧Ω)/8π² = (1/32π²) R_{abef} R_{abgh} ε_{efgh}.
pub fn pontryagin_density(r: &Rank4) -> f64 {
    let eps = levi_civita();
    let mut acc = 0.0;
    for a in 0..4 {
        for b in 0..4 {
            for ([e, f, g, h], s) in eps {
                acc += s * r[a][b][e][f] * r[a][b][g][h];
            }
        }
    }
    acc / (32.0 * PI * PI)
}

impl CharacteristicForms {
    /// Assembles both routes from a curvature bundle and checks agreement.
    pub fn from_bundle(bundle: &CurvatureBundle) -> Result<Self, CurvatureError> {
        let norms = bundle.norms();
        let euler_pfaffian = pfaffian_density(&bundle.frame_riemann);
        let p1_density = pontryagin_density(&bundle.frame_riemann);
        let euler_density = norms_euler(&norms);
        let l_density = norms_l(&norms);
        let scale = density_scale(&norms);
        check_route("euler density", euler_pfaffian, euler_density, scale, EULER_ROUTE_TOL)?;
        check_route("L density", p1_density / 3.0, l_density, scale, L_ROUTE_TOL)?;
        Ok(Self {
            euler_density,
            euler_pfaffian,
            p1_density,
            l_density,
            sd_asd_densities: norms,
        })
    }
}

pub fn characteristic_forms<M: MetricField + ?Sized>(
    metric: &M,
    point: &ChartPoint,
    opts: &FdOptions,
) -> Result<CharacteristicForms, CurvatureError> {
    CharacteristicForms::from_bundle(&riemann(metric, point, opts)?)
}

pub fn euler_density<M: MetricField + ?Sized>(
    metric: &M,
    point: &ChartPoint,
    opts: &FdOptions,
) -> Result<f64, CurvatureError> {
    Ok(characteristic_forms(metric, point, opts)?.euler_density)
}

#[allow(non_snake_case)]
pub fn L_density<M: MetricField + ?Sized>(
    metric: &M,
    point: &ChartPoint,
    opts: &FdOptions,
) -> Result<f64, CurvatureError> {
    Ok(characteristic_forms(metric, point, opts)?.l_density)
}

/// (|W⁺|, |W⁻|) as Frobenius norms of the blocks.
pub fn weyl_duality_defect<M: MetricField + ?Sized>(
    metric: &M,
    point: &ChartPoint,
    opts: &FdOptions,
) -> Result<(f64, f64), CurvatureError> {
    let b = riemann(metric, point, opts)?;
    Ok((b.weyl_plus.norm(), b.weyl_minus.norm()))
}
