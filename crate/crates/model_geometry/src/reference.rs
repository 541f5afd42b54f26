//! Closed-form metrics with known curvature and characteristic numbers.

use std::f64::consts::{PI, TAU};

use crate::chart::{ChartId, ChartPoint, Mat4, MetricField, Vec4};
use crate::error::GeometryError;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ReferenceMetric {
    /// Cartesian R⁴.
    FlatR4,
    /// Hyperspherical coordinates (χ₁, χ₂, χ₃, φ).
    RoundS4 { radius: f64 },
    /// (φ₁, ψ₁, φ₂, ψ₂), two round spheres.
    S2xS2 { r1: f64, r2: f64 },
    /// (u, v, φ, ψ): flat plane times a round sphere.
    R2xS2 { radius: f64 },
}

/// One coordinate interval of a chart domain.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Interval {
    pub lo: f64,
    pub hi: f64,
    pub periodic: bool,
}

const fn iv(lo: f64, hi: f64, periodic: bool) -> Interval {
    Interval { lo, hi, periodic }
}

impl ReferenceMetric {
    pub fn catalog() -> Vec<ReferenceMetric> {
        vec![
            ReferenceMetric::FlatR4,
            ReferenceMetric::RoundS4 { radius: 1.0 },
            ReferenceMetric::S2xS2 { r1: 1.0, r2: 1.0 },
            ReferenceMetric::R2xS2 { radius: 1.0 },
        ]
    }

    /// Coordinate domain covering the space once (a unit box for the plane factors).
    pub fn domain(&self) -> [Interval; 4] {
        match self {
            ReferenceMetric::FlatR4 => [iv(-1.0, 1.0, false); 4],
            ReferenceMetric::RoundS4 { .. } => [
                iv(0.0, PI, false),
                iv(0.0, PI, false),
                iv(0.0, PI, false),
                iv(0.0, TAU, true),
            ],
            ReferenceMetric::S2xS2 { .. } => [
                iv(0.0, PI, false),
                iv(0.0, TAU, true),
                iv(0.0, PI, false),
                iv(0.0, TAU, true),
            ],
            ReferenceMetric::R2xS2 { .. } => [
                iv(-1.0, 1.0, false),
                iv(-1.0, 1.0, false),
                iv(0.0, PI, false),
                iv(0.0, TAU, true),
            ],
        }
    }

    /// χ of the (closed or product) space.
    pub fn euler_characteristic(&self) -> i64 {
        match self {
            ReferenceMetric::FlatR4 => 1,
            ReferenceMetric::RoundS4 { .. } => 2,
            ReferenceMetric::S2xS2 { .. } => 4,
            ReferenceMetric::R2xS2 { .. } => 2,
        }
    }

    pub fn signature(&self) -> i64 {
        0
    }

    pub fn scalar_curvature(&self) -> f64 {
        match self {
            ReferenceMetric::FlatR4 => 0.0,
            // n(n − 1)/r² with n = 4
            ReferenceMetric::RoundS4 { radius } => 12.0 / (radius * radius),
            ReferenceMetric::S2xS2 { r1, r2 } => 2.0 / (r1 * r1) + 2.0 / (r2 * r2),
            ReferenceMetric::R2xS2 { radius } => 2.0 / (radius * radius),
        }
    }

    /// True when the Euler density integrates to χ over `domain()`.
    pub fn is_closed(&self) -> bool {
        matches!(self, ReferenceMetric::RoundS4 { .. } | ReferenceMetric::S2xS2 { .. })
    }

    pub fn point(&self, coords: Vec4) -> ChartPoint {
        ChartPoint::new(ChartId::Coordinates, coords)
    }

    pub fn components(&self, c: &Vec4) -> Mat4 {
        match self {
            ReferenceMetric::FlatR4 => Mat4::identity(),
            ReferenceMetric::RoundS4 { radius } => {
                let r2 = radius * radius;
                let s1 = c[0].sin().powi(2);
                let s2 = s1 * c[1].sin().powi(2);
                let s3 = s2 * c[2].sin().powi(2);
                Mat4::from_diagonal(&Vec4::new(r2, r2 * s1, r2 * s2, r2 * s3))
            }
            ReferenceMetric::S2xS2 { r1, r2 } => Mat4::from_diagonal(&Vec4::new(
                r1 * r1,
                r1 * r1 * c[0].sin().powi(2),
                r2 * r2,
                r2 * r2 * c[2].sin().powi(2),
            )),
            ReferenceMetric::R2xS2 { radius } => Mat4::from_diagonal(&Vec4::new(
                1.0,
                1.0,
                radius * radius,
                radius * radius * c[2].sin().powi(2),
            )),
        }
    }
}

impl MetricField for ReferenceMetric {
    fn name(&self) -> String {
        match self {
            ReferenceMetric::FlatR4 => "flat R4".into(),
            ReferenceMetric::RoundS4 { radius } => format!("round S4(r={})", radius),
            ReferenceMetric::S2xS2 { r1, r2 } => format!("S2xS2(r={},{})", r1, r2),
            ReferenceMetric::R2xS2 { radius } => format!("R2xS2(r={})", radius),
        }
    }

    fn metric(&self, p: &ChartPoint) -> Result<Mat4, GeometryError> {
        if p.chart != ChartId::Coordinates {
            return Err(GeometryError::WrongChart(p.chart.to_string()));
        }
        Ok(self.components(&p.coords))
    }
}

/// The catalog entries, by name.
pub fn reference_metrics() -> Vec<ReferenceMetric> {
    ReferenceMetric::catalog()
}
