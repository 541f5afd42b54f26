//! The multi-Taub-NUT metric g = V dx² + V⁻¹(dθ + ω)² on the
//! Gibbons-Hawking chart, and its smooth extension over the NUT points
//! through Eguchi-Hanson charts.

use nalgebra::{Matrix4, Vector3};

use crate::chart::{ChartId, ChartPoint, Gauge, Mat4, MetricField, Vec4};
use crate::eguchi_hanson::{eta_tilde, from_gh, hopf, hopf_jacobian};
use crate::error::GeometryError;
use crate::monopole::MonopoleConfig;

pub type Vec3 = Vector3<f64>;

/// Decomposition g = g_i^F + α_i near a NUT point.
#[derive(Debug, Clone, PartialEq)]
pub struct FlatSplit {
    pub flat: Mat4,
    pub alpha: Mat4,
}

#[derive(Debug, Clone)]
pub struct MultiTaubNut {
    config: MonopoleConfig,
    /// Radius of the Eguchi-Hanson balls in R³.
    delta: f64,
    /// Gauge used for the other monopoles inside each ball.
    ball_gauges: Vec<Gauge>,
    /// Orientation of each EH chart relative to (x¹, x², x³, θ).
    eh_orientation: Vec<f64>,
    /// Points closer than `handover · delta` to a NUT use its EH chart.
    handover: f64,
}

impl MultiTaubNut {
    pub fn new(config: MonopoleConfig) -> Self {
        let sep = if config.k() > 1 {
            config.min_separation()
        } else {
            2.0
        };
        let delta = 0.5 * sep;
        let ball_gauges = (0..config.k())
            .map(|i| {
                let pi = config.points()[i];
                config
                    .points()
                    .iter()
                    .enumerate()
                    .fold(Gauge::all_down(), |g, (j, pj)| {
                        // Keep every other string away from p_i; monopole i itself is string-down.
                        g.with(j, j != i && pi.z < pj.z)
                    })
            })
            .collect();
        let mut out = Self {
            config,
            delta,
            ball_gauges,
            eh_orientation: Vec::new(),
            handover: 0.5,
        };
        out.eh_orientation = (0..out.config.k()).map(|i| out.eh_orientation_sign(i)).collect();
        out
    }

    pub fn with_default_layout(k: usize) -> Self {
        Self::new(MonopoleConfig::default_layout(k))
    }

    pub fn config(&self) -> &MonopoleConfig {
        &self.config
    }

    pub fn delta(&self) -> f64 {
        self.delta
    }

    /// Moves the GH/EH handover radius to `fraction · delta`, fraction ∈ (0, 1).
    pub fn with_handover(mut self, fraction: f64) -> Result<Self, GeometryError> {
        if !(fraction > 0.0 && fraction < 1.0) {
            return Err(GeometryError::InvalidConfig(format!(
                "handover fraction {} outside (0, 1)",
                fraction
            )));
        }
        self.handover = fraction;
        Ok(self)
    }

    pub fn handover_radius(&self) -> f64 {
        self.handover * self.delta
    }

    /// Gauge of the GH chart that agrees with EH chart i on the fibre coordinate.
    pub fn ball_gauge(&self, i: usize) -> Gauge {
        self.ball_gauges[i]
    }

    /// Chart point over base point x with fibre coordinate θ (string-down
    /// convention for the nearest NUT inside its ball). Points within the
    /// handover radius (δ/2 by default) of a NUT use the EH chart; elsewhere
    /// the GH chart in the gauge regular at x.
    pub fn chart_point(&self, x: &Vec3, theta: f64) -> Result<ChartPoint, GeometryError> {
        let (i, r) = self.config.nearest(x);
        if r < self.handover_radius() {
            return self.eh_point(i, x, theta);
        }
        Ok(self.gh_point(x, theta))
    }

    pub fn gh_point(&self, x: &Vec3, theta: f64) -> ChartPoint {
        ChartPoint::new(
            ChartId::GibbonsHawking(self.config.regular_gauge(x)),
            Vec4::new(x.x, x.y, x.z, theta),
        )
    }

    pub fn eh_point(&self, i: usize, x: &Vec3, theta: f64) -> Result<ChartPoint, GeometryError> {
        let d = x - self.config.points()[i];
        if d.norm() >= self.delta {
            return Err(GeometryError::OutsideBall(i));
        }
        if d.norm() == 0.0 {
            return Ok(ChartPoint::new(ChartId::EguchiHanson(i), Vec4::zeros()));
        }
        Ok(ChartPoint::new(ChartId::EguchiHanson(i), from_gh(&d, theta)?))
    }

    /// Base point in R³ of a chart point.
    pub fn base_point(&self, p: &ChartPoint) -> Result<Vec3, GeometryError> {
        match p.chart {
            ChartId::GibbonsHawking(_) => Ok(Vec3::new(p.coords[0], p.coords[1], p.coords[2])),
            ChartId::EguchiHanson(i) => Ok(self.config.points()[i] + hopf(&p.coords)),
            other => Err(GeometryError::WrongChart(other.to_string())),
        }
    }

    /// Metric components in the GH chart.
    pub fn gh_metric(&self, gauge: Gauge, x: &Vec3) -> Result<Mat4, GeometryError> {
        let v = self.config.potential(x)?;
        let w = self.config.connection_form(gauge, x)?;
        let mut g = Mat4::zeros();
        for a in 0..3 {
            for b in 0..3 {
                g[(a, b)] = w[a] * w[b] / v;
            }
            g[(a, a)] += v;
            g[(a, 3)] = w[a] / v;
            g[(3, a)] = w[a] / v;
        }
        g[(3, 3)] = 1.0 / v;
        Ok(g)
    }

    /// Metric components in EH chart i:
    /// g = I + f·JᵀJ − f/(1+ρ²f)·η̃η̃ᵀ + (η̃βᵀ + βη̃ᵀ)/(1+ρ²f) + ρ²/(1+ρ²f)·ββᵀ,
    /// with J = ∂x/∂y, f = V − 1/(2r) and β the pullback of ω − ω_i.
    pub fn eh_metric(&self, i: usize, y: &Vec4) -> Result<Mat4, GeometryError> {
        let x = self.config.points()[i] + hopf(y);
        let jac = hopf_jacobian(y);
        let f = self.config.potential_without(i, &x)?;
        let w = self.config.connection_form_without(i, self.ball_gauges[i], &x)?;
        let beta = jac.transpose() * w;
        let eta = eta_tilde(y);
        let rho2 = y.norm_squared();
        let den = 1.0 + rho2 * f;
        let g = Mat4::identity() + f * jac.transpose() * jac - (f / den) * eta * eta.transpose()
            + (eta * beta.transpose() + beta * eta.transpose()) / den
            + (rho2 / den) * beta * beta.transpose();
        Ok(g)
    }

    /// Splits g into the flat piece g_i^F (V replaced by 1/(2r_i), ω by ω_i)
    /// and the remainder α_i, in the chart of `p`.
    pub fn flat_connection_piece(&self, i: usize, p: &ChartPoint) -> Result<FlatSplit, GeometryError> {
        let x = self.base_point(p)?;
        let d = x - self.config.points()[i];
        if d.norm() >= self.delta {
            return Err(GeometryError::OutsideBall(i));
        }
        let g = self.metric(p)?;
        let flat = match p.chart {
            ChartId::EguchiHanson(j) if j == i => Mat4::identity(),
            ChartId::GibbonsHawking(gauge) => {
                let r = d.norm();
                if r == 0.0 {
                    return Err(GeometryError::AtMonopole(i));
                }
                let vi = 0.5 / r;
                let wi = self.config.monopole_form(i, gauge.is_up(i), &x)?;
                let mut m = Mat4::zeros();
                for a in 0..3 {
                    for b in 0..3 {
                        m[(a, b)] = wi[a] * wi[b] / vi;
                    }
                    m[(a, a)] += vi;
                    m[(a, 3)] = wi[a] / vi;
                    m[(3, a)] = wi[a] / vi;
                }
                m[(3, 3)] = 1.0 / vi;
                m
            }
            other => return Err(GeometryError::WrongChart(other.to_string())),
        };
        Ok(FlatSplit {
            flat,
            alpha: g - flat,
        })
    }

    /// Coframe e^a = √V dx^a (a < 3), e³ = V^{-1/2}(dθ + ω) as rows, in GH coordinates.
    fn gh_coframe(&self, gauge: Gauge, x: &Vec3) -> Result<Mat4, GeometryError> {
        let v = self.config.potential(x)?;
        let w = self.config.connection_form(gauge, x)?;
        let sv = v.sqrt();
        let mut e = Mat4::zeros();
        for a in 0..3 {
            e[(a, a)] = sv;
            e[(3, a)] = w[a] / sv;
        }
        e[(3, 3)] = 1.0 / sv;
        Ok(e)
    }

    /// J₁, J₂, J₃ acting on tangent vectors in the coordinates of `p`.
    ///
    /// On the coframe, J₁: e¹ ↦ e⁴, e² ↦ e³, and cyclically for J₂, J₃
    /// (indices 1..4 = dx¹, dx², dx³, fibre).
    pub fn hyperkahler_triple(&self, p: &ChartPoint) -> Result<[Mat4; 3], GeometryError> {
        let x = self.base_point(p)?;
        let gauge = match p.chart {
            ChartId::GibbonsHawking(g) => g,
            ChartId::EguchiHanson(i) => self.ball_gauges[i],
            _ => unreachable!(),
        };
        // Frame matrix: columns are the frame vectors in GH coordinates.
        let coframe = self.gh_coframe(gauge, &x)?;
        let frame = coframe
            .try_inverse()
            .ok_or_else(|| GeometryError::OutOfDomain("degenerate coframe".into()))?;
        let to_chart = match p.chart {
            ChartId::GibbonsHawking(_) => Mat4::identity(),
            ChartId::EguchiHanson(i) => self.eh_jacobian_inverse(i, &p.coords)?,
            _ => unreachable!(),
        };
        let e = to_chart * frame;
        let e_inv = e
            .try_inverse()
            .ok_or_else(|| GeometryError::OutOfDomain("degenerate frame".into()))?;
        Ok(quaternion_frame_structures().map(|m| e * m * e_inv))
    }

    /// ∂(x¹, x², x³, θ_gh)/∂y for EH chart i.
    fn eh_jacobian(&self, y: &Vec4) -> Mat4 {
        let j = hopf_jacobian(y);
        let eta = eta_tilde(y);
        let rho2 = y.norm_squared();
        // dθ_gh = η̃/ρ² − ω_i, with ω_i pulled back.
        let x = hopf(y);
        let r = x.norm();
        let wi = Vec3::new(-x.y, x.x, 0.0) * (-1.0 / (2.0 * r * (r + x.z)));
        let dtheta = eta / rho2 - j.transpose() * wi;
        let mut m = Mat4::zeros();
        for a in 0..3 {
            for b in 0..4 {
                m[(a, b)] = j[(a, b)];
            }
        }
        for b in 0..4 {
            m[(3, b)] = dtheta[b];
        }
        m
    }

    fn eh_jacobian_inverse(&self, _i: usize, y: &Vec4) -> Result<Mat4, GeometryError> {
        self.eh_jacobian(y)
            .try_inverse()
            .ok_or_else(|| GeometryError::OutOfDomain("EH Jacobian singular".into()))
    }

    fn eh_orientation_sign(&self, _i: usize) -> f64 {
        // Any point off the axes: sign of det ∂(x, θ)/∂y.
        let y = Vec4::new(0.3, 0.2, 0.25, -0.1);
        self.eh_jacobian(&y).determinant().signum()
    }
}

/// Unit quaternion structures on an oriented orthonormal 4-frame, with the
/// fibre direction last. Column a is the image of e^a.
pub fn quaternion_frame_structures() -> [Mat4; 3] {
    let mut out = [Mat4::zeros(); 3];
    // J_l: e^l ↦ e⁴, e^{l+1} ↦ e^{l+2} (cyclic in 1..3), extended by J² = −1.
    for l in 0..3 {
        let (a, b, c) = (l, (l + 1) % 3, (l + 2) % 3);
        let m = &mut out[l];
        m[(3, a)] = 1.0;
        m[(a, 3)] = -1.0;
        m[(c, b)] = 1.0;
        m[(b, c)] = -1.0;
    }
    out
}

impl MetricField for MultiTaubNut {
    fn name(&self) -> String {
        format!("multi-taub-nut(k={})", self.config.k())
    }

    fn metric(&self, p: &ChartPoint) -> Result<Mat4, GeometryError> {
        match p.chart {
            ChartId::GibbonsHawking(gauge) => {
                let x = Vec3::new(p.coords[0], p.coords[1], p.coords[2]);
                self.gh_metric(gauge, &x)
            }
            ChartId::EguchiHanson(i) if i < self.config.k() => self.eh_metric(i, &p.coords),
            other => Err(GeometryError::WrongChart(other.to_string())),
        }
    }

    fn coord_scale(&self, p: &ChartPoint) -> Vec4 {
        match p.chart {
            ChartId::GibbonsHawking(_) => {
                let x = Vec3::new(p.coords[0], p.coords[1], p.coords[2]);
                let (_, r) = self.config.nearest(&x);
                Vec4::new(r, r, r, 1.0)
            }
            _ => Vec4::repeat(self.delta.sqrt().min(1.0)),
        }
    }

    fn orientation(&self, chart: ChartId) -> f64 {
        match chart {
            ChartId::EguchiHanson(i) => self.eh_orientation.get(i).copied().unwrap_or(1.0),
            _ => 1.0,
        }
    }
}

/// Euclidean 3-metric pulled back along the Hopf map, JᵀJ.
pub fn pulled_back_flat(y: &Vec4) -> Matrix4<f64> {
    let j = hopf_jacobian(y);
    j.transpose() * j
}

