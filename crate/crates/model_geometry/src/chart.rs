//! Charts, chart points and the metric-field interface shared by every
//! numerical module.

use std::fmt;

use nalgebra::{Matrix4, Vector4};

use crate::error::GeometryError;

pub type Mat4 = Matrix4<f64>;
pub type Vec4 = Vector4<f64>;

/// Dirac-string choice per monopole: bit j set means the string of
/// monopole j runs up (+z) from p_j, clear means it runs down.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Gauge(pub u64);

impl Gauge {
    pub fn all_down() -> Self {
        Gauge(0)
    }

    pub fn is_up(&self, j: usize) -> bool {
        self.0 >> j & 1 == 1
    }

    pub fn with(self, j: usize, up: bool) -> Self {
        if up {
            Gauge(self.0 | 1 << j)
        } else {
            Gauge(self.0 & !(1 << j))
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ChartId {
    /// (x¹, x², x³, θ) with the connection form in the given gauge.
    GibbonsHawking(Gauge),
    /// (y¹, …, y⁴) on the ball around the NUT point above monopole i.
    EguchiHanson(usize),
    /// (x, base, fiber) on a model collar.
    Collar,
    /// Plain global or single-patch coordinates of a closed-form metric.
    Coordinates,
}

impl fmt::Display for ChartId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ChartId::GibbonsHawking(g) => write!(f, "gibbons-hawking[gauge {:#x}]", g.0),
            ChartId::EguchiHanson(i) => write!(f, "eguchi-hanson[{}]", i),
            ChartId::Collar => write!(f, "collar"),
            ChartId::Coordinates => write!(f, "coordinates"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChartPoint {
    pub chart: ChartId,
    pub coords: Vec4,
}

impl ChartPoint {
    pub fn new(chart: ChartId, coords: Vec4) -> Self {
        Self { chart, coords }
    }

    /// Same chart, coordinates shifted by `delta` along axis `a`.
    pub fn shifted(&self, a: usize, delta: f64) -> Self {
        let mut c = self.coords;
        c[a] += delta;
        Self {
            chart: self.chart,
            coords: c,
        }
    }
}

/// A Riemannian metric given chart-wise by its 4×4 component matrix.
pub trait MetricField: Send + Sync {
    fn name(&self) -> String;

    fn metric(&self, p: &ChartPoint) -> Result<Mat4, GeometryError>;

    /// Length scale per coordinate over which the components vary; finite
    /// differences use a fixed fraction of it.
    fn coord_scale(&self, _p: &ChartPoint) -> Vec4 {
        Vec4::repeat(1.0)
    }

    /// +1 when the chart's coordinate order is positively oriented.
    fn orientation(&self, _chart: ChartId) -> f64 {
        1.0
    }
}

impl<T: MetricField + ?Sized> MetricField for &T {
    fn name(&self) -> String {
        (**self).name()
    }
    fn metric(&self, p: &ChartPoint) -> Result<Mat4, GeometryError> {
        (**self).metric(p)
    }
    fn coord_scale(&self, p: &ChartPoint) -> Vec4 {
        (**self).coord_scale(p)
    }
    fn orientation(&self, chart: ChartId) -> f64 {
        (**self).orientation(chart)
    }
}
