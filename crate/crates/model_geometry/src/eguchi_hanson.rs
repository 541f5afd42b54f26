//! Eguchi-Hanson coordinates around a NUT point.
//!
//! With (r, φ, ψ) spherical about p_i and θ the fibre coordinate in the
//! ½cos φ dψ gauge,
//!   y¹ + iy² = √(2r) cos(φ/2) e^{i(θ+ψ/2)},  y³ + iy⁴ = √(2r) sin(φ/2) e^{i(θ−ψ/2)}.
//! In the string-down gauge ½(cos φ − 1)dψ the fibre coordinate is
//! θ_gh = θ + ψ/2, so y¹ + iy² has phase θ_gh.

use std::f64::consts::TAU;

use nalgebra::{Matrix3x4, Vector3, Vector4};

use crate::error::GeometryError;

pub type Vec3 = Vector3<f64>;
pub type Vec4 = Vector4<f64>;

/// (r, φ, ψ, θ) ↦ y.
pub fn eh_coordinates(r: f64, phi: f64, psi: f64, theta: f64) -> Result<Vec4, GeometryError> {
    if !(r > 0.0) {
        return Err(GeometryError::DegenerateRadius(r));
    }
    let s = (2.0 * r).sqrt();
    let (a, b) = (theta + psi / 2.0, theta - psi / 2.0);
    let c = (phi / 2.0).cos();
    let d = (phi / 2.0).sin();
    Ok(Vec4::new(s * c * a.cos(), s * c * a.sin(), s * d * b.cos(), s * d * b.sin()))
}

/// y ↦ (r, φ, ψ, θ) with ψ, θ ∈ [0, 2π).
pub fn eh_inverse(y: &Vec4) -> Result<(f64, f64, f64, f64), GeometryError> {
    let rho2 = y.norm_squared();
    if !(rho2 > 0.0) {
        return Err(GeometryError::DegenerateRadius(rho2 / 2.0));
    }
    let r = rho2 / 2.0;
    let mu = y[0].hypot(y[1]);
    let nu = y[2].hypot(y[3]);
    let phi = 2.0 * nu.atan2(mu);
    let a = y[1].atan2(y[0]);
    let b = y[3].atan2(y[2]);
    let psi = (a - b).rem_euclid(TAU);
    let theta = (a - psi / 2.0).rem_euclid(TAU);
    Ok((r, phi, psi, theta))
}

/// x − p_i as a function of y (the Hopf map scaled by ½).
pub fn hopf(y: &Vec4) -> Vec3 {
    Vec3::new(
        y[0] * y[2] + y[1] * y[3],
        y[1] * y[2] - y[0] * y[3],
        0.5 * (y[0] * y[0] + y[1] * y[1] - y[2] * y[2] - y[3] * y[3]),
    )
}

/// ∂(x − p_i)/∂y.
pub fn hopf_jacobian(y: &Vec4) -> Matrix3x4<f64> {
    Matrix3x4::new(
        y[2], y[3], y[0], y[1], //
        -y[3], y[2], y[1], -y[0], //
        y[0], y[1], -y[2], -y[3],
    )
}

/// η̃ = y¹dy² − y²dy¹ + y³dy⁴ − y⁴dy³, which equals ρ²(dθ_gh + ω_i).
pub fn eta_tilde(y: &Vec4) -> Vec4 {
    Vec4::new(-y[1], y[0], -y[3], y[2])
}

/// Fibre coordinate in the string-down gauge.
pub fn theta_gh(y: &Vec4) -> f64 {
    y[1].atan2(y[0]).rem_euclid(TAU)
}

/// (x − p_i, θ_gh) ↦ y, inverse of (hopf, theta_gh).
pub fn from_gh(d: &Vec3, theta: f64) -> Result<Vec4, GeometryError> {
    let r = d.norm();
    if !(r > 0.0) {
        return Err(GeometryError::DegenerateRadius(r));
    }
    let psi = d.y.atan2(d.x);
    // √(2r)cos(φ/2) = √(r + z), √(2r)sin(φ/2) = √(r − z)
    let planar = d.x * d.x + d.y * d.y;
    let (mu, nu) = if d.z > 0.0 {
        ((r + d.z).sqrt(), (planar / (r + d.z)).sqrt())
    } else {
        ((planar / (r - d.z)).sqrt(), (r - d.z).sqrt())
    };
    let b = theta - psi;
    Ok(Vec4::new(mu * theta.cos(), mu * theta.sin(), nu * b.cos(), nu * b.sin()))
}

