//! Adapted orthonormal frames, connection 1-forms and curvature 2-forms of a
//! collar metric, pulled back to a slice {x = const}.
//!
//! Frames are built by Gram-Schmidt in the order (∂_x, fibre, base), so
//! e_0 ∝ ∂_x, the fibre vectors are vertical and the base vectors are
//! horizontal. They are indexed (0, base, fibre) as in {x²∂_x, x e_i, e_a}.

use curvature_engine::christoffel::{christoffel_first_kind, christoffel_from_jet};
use curvature_engine::riemann::lowered_riemann;
use curvature_engine::{metric_jet, CurvatureError, FdOptions};
use model_geometry::{ChartId, ChartPoint, GeometryError, Mat4, MetricField, Vec4};

use crate::model::CollarMetric;

/// ω_{AB}(∂_{u_k}) for the three slice coordinates u = (y, z).
pub type OneForms = [[[f64; 3]; 4]; 4];
/// Ω_{AB}(∂_{u_k}, ∂_{u_l}).
pub type TwoForms = [[[[f64; 3]; 3]; 4]; 4];

/// Connection and curvature of one metric on a slice, in its adapted frame.
#[derive(Debug, Clone, PartialEq)]
pub struct SliceGeometry {
    /// Columns are the frame vectors in chart coordinates (x, y, z).
    pub frame: Mat4,
    pub omega: OneForms,
    pub curvature: TwoForms,
}

/// The metric seen in coordinates (s, y, z) with x = x₀ + σs. The rescaling
/// keeps g_ss of order one, so the conditioning guard sees the tangential
/// spread only; pullbacks to the slice are unchanged.
struct LocalChart<'a> {
    metric: &'a CollarMetric<'a>,
    x0: f64,
    sigma: f64,
}

impl MetricField for LocalChart<'_> {
    fn name(&self) -> String {
        format!("{} near x = {}", self.metric.name(), self.x0)
    }

    fn metric(&self, p: &ChartPoint) -> Result<Mat4, GeometryError> {
        let mut c = p.coords;
        c[0] = self.x0 + self.sigma * c[0];
        let g = self.metric.metric(&ChartPoint::new(ChartId::Collar, c))?;
        let j = Vec4::new(self.sigma, 1.0, 1.0, 1.0);
        Ok(Mat4::from_fn(|a, b| j[a] * j[b] * g[(a, b)]))
    }

    fn coord_scale(&self, _p: &ChartPoint) -> Vec4 {
        Vec4::new(self.x0 / self.sigma, 1.0, 1.0, 1.0)
    }
}

/// Order in which Gram-Schmidt visits the chart coordinates.
fn gs_order(base_dim: usize) -> [usize; 4] {
    if base_dim == 1 {
        [0, 2, 3, 1]
    } else {
        [0, 3, 1, 2]
    }
}

fn permutation(order: &[usize; 4]) -> Mat4 {
    let mut p = Mat4::zeros();
    for (k, &m) in order.iter().enumerate() {
        p[(m, k)] = 1.0;
    }
    p
}

/// Upper-triangular Gram-Schmidt factor: E with Eᵀ g E = I.
fn gram_schmidt(g: &Mat4) -> Option<Mat4> {
    let u = g.cholesky()?.l().transpose();
    u.try_inverse()
}

/// Adapted orthonormal frame of g (columns in chart coordinates, indexed
/// (0, base, fibre)).
pub fn adapted_frame(g: &Mat4, base_dim: usize) -> Option<Mat4> {
    let p = permutation(&gs_order(base_dim));
    let e = gram_schmidt(&(p.transpose() * g * p))?;
    Some(p * e * p.transpose())
}

fn antisym(m: &Mat4) -> Mat4 {
    (m - m.transpose()) * 0.5
}

/// Connection, curvature and frame of `metric` at (x, u).
pub fn slice_geometry(metric: &CollarMetric<'_>, x: f64, u: &[f64; 3], opts: &FdOptions) -> Result<SliceGeometry, CurvatureError> {
    let coords = Vec4::new(x, u[0], u[1], u[2]);
    let g0 = metric.metric(&ChartPoint::new(ChartId::Collar, coords))?;
    let sigma = 1.0 / g0[(0, 0)].sqrt();
    let local = LocalChart { metric, x0: x, sigma };
    let p = ChartPoint::new(ChartId::Collar, Vec4::new(0.0, u[0], u[1], u[2]));
    let jet = metric_jet(&local, &p, opts)?;
    let gamma = christoffel_from_jet(&jet)?;
    let riemann = lowered_riemann(&jet, &gamma);
    let first = christoffel_first_kind(&jet.dg);

    let nb = metric.model.base_dim();
    let perm = permutation(&gs_order(nb));
    let e_gs = gram_schmidt(&(perm.transpose() * jet.g * perm)).ok_or(CurvatureError::SingularMetric {
        condition: f64::INFINITY,
    })?;
    let frame = perm * e_gs * perm.transpose();

    let mut omega = [[[0.0; 3]; 4]; 4];
    for k in 0..3 {
        let lam = k + 1;
        // Derivative of the Gram-Schmidt factor: X = ∂E⁻¹·E is upper
        // triangular with X + Xᵀ = Eᵀ ∂g E.
        let m = e_gs.transpose() * perm.transpose() * jet.dg[lam] * perm * e_gs;
        let x_gs = Mat4::from_fn(|a, b| match a.cmp(&b) {
            std::cmp::Ordering::Less => m[(a, b)],
            std::cmp::Ordering::Equal => 0.5 * m[(a, a)],
            std::cmp::Ordering::Greater => 0.0,
        });
        let x_frame = perm * x_gs * perm.transpose();
        let gl = Mat4::from_fn(|r, n| first[r][n][lam]);
        let w = antisym(&(frame.transpose() * gl * frame)) - antisym(&x_frame);
        for a in 0..4 {
            for b in 0..4 {
                omega[a][b][k] = w[(a, b)];
            }
        }
    }

    let mut curvature = [[[[0.0; 3]; 3]; 4]; 4];
    for k in 0..3 {
        for l in 0..3 {
            let r = Mat4::from_fn(|al, be| riemann[al][be][k + 1][l + 1]);
            let f = frame.transpose() * r * frame;
            for a in 0..4 {
                for b in 0..4 {
                    curvature[a][b][k][l] = f[(a, b)];
                }
            }
        }
    }

    // Report the frame in x rather than s.
    let mut frame_x = frame;
    for a in 0..4 {
        frame_x[(0, a)] *= sigma;
    }
    let check = omega.iter().flatten().flatten().chain(curvature.iter().flatten().flatten().flatten());
    if check.into_iter().any(|v| !v.is_finite()) {
        return Err(CurvatureError::NonFinite);
    }
    Ok(SliceGeometry {
        frame: frame_x,
        omega,
        curvature,
    })
}
