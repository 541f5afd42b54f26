//! Explicit metric fields: multi-Taub-NUT on Gibbons-Hawking and
//! Eguchi-Hanson charts, its hyper-Kähler triple, and a catalog of
//! closed-form reference metrics.

pub mod chart;
pub mod eguchi_hanson;
pub mod error;
pub mod monopole;
pub mod reference;
pub mod taub_nut;

pub use chart::{ChartId, ChartPoint, Gauge, Mat4, MetricField, Vec4};
pub use eguchi_hanson::{eh_coordinates, eh_inverse};
pub use error::GeometryError;
pub use monopole::{MonopoleConfig, Vec3};
pub use reference::{reference_metrics, Interval, ReferenceMetric};
pub use taub_nut::{FlatSplit, MultiTaubNut};

/// V(x) = 1 + ½ Σ 1/|x − p_j|.
pub fn potential(config: &MonopoleConfig, x: &Vec3) -> Result<f64, GeometryError> {
    config.potential(x)
}

/// ω at x in the gauge whose strings point away from x.
pub fn connection_form(config: &MonopoleConfig, x: &Vec3) -> Result<Vec3, GeometryError> {
    config.connection_form(config.regular_gauge(x), x)
}
