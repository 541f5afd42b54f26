use model_geometry::{ChartPoint, Mat4, MetricField, Vec4};

use crate::error::CurvatureError;
use crate::jet::{metric_jet, FdOptions, MetricJet};

pub type Rank3 = [[[f64; 4]; 4]; 4];

/// Γ^α_{βμ} at a point.
#[derive(Debug, Clone, PartialEq)]
pub struct ChristoffelData {
    /// `symbols[α][β][μ]`.
    pub symbols: Rank3,
    pub step: Vec4,
    /// Largest |Γ^α_{βμ} − Γ^α_{μβ}| before symmetrization.
    pub asymmetry: f64,
}

impl ChristoffelData {
    pub fn get(&self, alpha: usize, beta: usize, mu: usize) -> f64 {
        self.symbols[alpha][beta][mu]
    }

    pub fn max_abs(&self) -> f64 {
        self.symbols
            .iter()
            .flatten()
            .flatten()
            .fold(0.0, |m, v| m.max(v.abs()))
    }
}

/// Γ_{νβμ} = ½(∂_β g_{μν} + ∂_μ g_{νβ} − ∂_ν g_{βμ}), index first.
pub fn christoffel_first_kind(dg: &[Mat4; 4]) -> Rank3 {
    let mut out = [[[0.0; 4]; 4]; 4];
    for nu in 0..4 {
        for beta in 0..4 {
            for mu in 0..4 {
                out[nu][beta][mu] =
                    0.5 * (dg[beta][(mu, nu)] + dg[mu][(nu, beta)] - dg[nu][(beta, mu)]);
            }
        }
    }
    out
}

/// Christoffel symbols from a metric jet.
pub fn christoffel_from_jet(jet: &MetricJet) -> Result<ChristoffelData, CurvatureError> {
    let ginv = jet
        .g
        .try_inverse()
        .ok_or(CurvatureError::SingularMetric {
            condition: f64::INFINITY,
        })?;
    let first = christoffel_first_kind(&jet.dg);
    let mut raw = [[[0.0; 4]; 4]; 4];
    for alpha in 0..4 {
        for beta in 0..4 {
            for mu in 0..4 {
                raw[alpha][beta][mu] = (0..4).map(|nu| ginv[(alpha, nu)] * first[nu][beta][mu]).sum();
            }
        }
    }
    let mut asymmetry: f64 = 0.0;
    let mut symbols = raw;
    for alpha in 0..4 {
        for beta in 0..4 {
            for mu in 0..4 {
                asymmetry = asymmetry.max((raw[alpha][beta][mu] - raw[alpha][mu][beta]).abs());
                symbols[alpha][beta][mu] = 0.5 * (raw[alpha][beta][mu] + raw[alpha][mu][beta]);
            }
        }
    }
    Ok(ChristoffelData {
        symbols,
        step: jet.steps,
        asymmetry,
    })
}

pub fn christoffel<M: MetricField + ?Sized>(
    metric: &M,
    point: &ChartPoint,
    opts: &FdOptions,
) -> Result<ChristoffelData, CurvatureError> {
    christoffel_from_jet(&metric_jet(metric, point, opts)?)
}

/// max |∇_μ g_{αβ}| = max |∂_μ g_{αβ} − Γ^ρ_{μα} g_{ρβ} − Γ^ρ_{μβ} g_{αρ}|.
pub fn metric_compatibility_residual(jet: &MetricJet, gamma: &ChristoffelData) -> f64 {
    let mut worst: f64 = 0.0;
    for mu in 0..4 {
        for a in 0..4 {
            for b in 0..4 {
                let mut v = jet.dg[mu][(a, b)];
                for rho in 0..4 {
                    v -= gamma.symbols[rho][mu][a] * jet.g[(rho, b)]
                        + gamma.symbols[rho][mu][b] * jet.g[(a, rho)];
                }
                worst = worst.max(v.abs());
            }
        }
    }
    worst
}
