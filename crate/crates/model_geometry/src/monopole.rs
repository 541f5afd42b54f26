//! Monopole configurations, the harmonic potential V and the connection
//! form ω with dω = *dV.

use nalgebra::Vector3;

use crate::chart::Gauge;
use crate::error::GeometryError;

pub type Vec3 = Vector3<f64>;

/// Unit-mass monopoles: V = 1 + ½ Σ 1/|x − p_j|.
#[derive(Debug, Clone, PartialEq)]
pub struct MonopoleConfig {
    points: Vec<Vec3>,
}

impl MonopoleConfig {
    pub fn new(points: Vec<Vec3>) -> Result<Self, GeometryError> {
        if points.is_empty() {
            return Err(GeometryError::InvalidConfig("need at least one monopole".into()));
        }
        if points.len() > 64 {
            return Err(GeometryError::InvalidConfig("at most 64 monopoles".into()));
        }
        for (i, p) in points.iter().enumerate() {
            if !p.iter().all(|c| c.is_finite()) {
                return Err(GeometryError::InvalidConfig(format!("monopole {} is not finite", i)));
            }
            for q in &points[..i] {
                if (p - q).norm() < 1e-9 {
                    return Err(GeometryError::InvalidConfig(format!(
                        "monopole {} coincides with an earlier one",
                        i
                    )));
                }
            }
        }
        Ok(Self { points })
    }

    /// p_j = (cos 2πj/k, sin 2πj/k, 0), j = 1..k.
    pub fn default_layout(k: usize) -> Self {
        let points = (1..=k)
            .map(|j| {
                let a = std::f64::consts::TAU * j as f64 / k as f64;
                Vec3::new(a.cos(), a.sin(), 0.0)
            })
            .collect();
        Self { points }
    }

    pub fn points(&self) -> &[Vec3] {
        &self.points
    }

    pub fn k(&self) -> usize {
        self.points.len()
    }

    pub fn min_separation(&self) -> f64 {
        let mut m = f64::INFINITY;
        for (i, p) in self.points.iter().enumerate() {
            for q in &self.points[..i] {
                m = m.min((p - q).norm());
            }
        }
        m
    }

    /// Largest |p_j|.
    pub fn extent(&self) -> f64 {
        self.points.iter().map(|p| p.norm()).fold(0.0, f64::max)
    }

    /// Index and distance of the closest monopole.
    pub fn nearest(&self, x: &Vec3) -> (usize, f64) {
        self.points
            .iter()
            .enumerate()
            .map(|(j, p)| (j, (x - p).norm()))
            .fold((0, f64::INFINITY), |a, b| if b.1 < a.1 { b } else { a })
    }

    /// Gauge whose strings all point away from x.
    pub fn regular_gauge(&self, x: &Vec3) -> Gauge {
        self.points
            .iter()
            .enumerate()
            .fold(Gauge::all_down(), |g, (j, p)| g.with(j, x.z < p.z))
    }

    pub fn potential(&self, x: &Vec3) -> Result<f64, GeometryError> {
        let mut v = 1.0;
        for (j, p) in self.points.iter().enumerate() {
            let r = (x - p).norm();
            if r == 0.0 {
                return Err(GeometryError::AtMonopole(j));
            }
            v += 0.5 / r;
        }
        Ok(v)
    }

    /// V with the singular term of monopole i removed: f_i = V − 1/(2|x − p_i|).
    pub fn potential_without(&self, i: usize, x: &Vec3) -> Result<f64, GeometryError> {
        let mut v = 1.0;
        for (j, p) in self.points.iter().enumerate() {
            if j == i {
                continue;
            }
            let r = (x - p).norm();
            if r == 0.0 {
                return Err(GeometryError::AtMonopole(j));
            }
            v += 0.5 / r;
        }
        Ok(v)
    }

    /// ω_j for a single monopole, as Cartesian components.
    ///
    /// String down: ½(cos φ − 1)dψ = −(X dY − Y dX)/(2r(r+Z));
    /// string up:   ½(cos φ + 1)dψ =  (X dY − Y dX)/(2r(r−Z)).
    pub fn monopole_form(&self, j: usize, up: bool, x: &Vec3) -> Result<Vec3, GeometryError> {
        let d = x - self.points[j];
        let r = d.norm();
        if r == 0.0 {
            return Err(GeometryError::AtMonopole(j));
        }
        let rho2 = d.x * d.x + d.y * d.y;
        // r ± Z without cancellation.
        let (denom, sign) = if up {
            let s = if d.z > 0.0 { rho2 / (r + d.z) } else { r - d.z };
            (s, 1.0)
        } else {
            let s = if d.z < 0.0 { rho2 / (r - d.z) } else { r + d.z };
            (s, -1.0)
        };
        if denom <= 1e-14 * r {
            return Err(GeometryError::OnDiracString(j));
        }
        let c = sign / (2.0 * r * denom);
        Ok(Vec3::new(-d.y * c, d.x * c, 0.0))
    }

    /// ω = Σ_j ω_j in the given gauge.
    pub fn connection_form(&self, gauge: Gauge, x: &Vec3) -> Result<Vec3, GeometryError> {
        let mut w = Vec3::zeros();
        for j in 0..self.points.len() {
            w += self.monopole_form(j, gauge.is_up(j), x)?;
        }
        Ok(w)
    }

    /// ω with monopole i's own term left out.
    pub fn connection_form_without(
        &self,
        i: usize,
        gauge: Gauge,
        x: &Vec3,
    ) -> Result<Vec3, GeometryError> {
        let mut w = Vec3::zeros();
        for j in (0..self.points.len()).filter(|&j| j != i) {
            w += self.monopole_form(j, gauge.is_up(j), x)?;
        }
        Ok(w)
    }
}
