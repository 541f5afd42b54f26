use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum GeometryError {
    #[error("point coincides with monopole {0}")]
    AtMonopole(usize),
    #[error("point lies on the Dirac string of monopole {0}")]
    OnDiracString(usize),
    #[error("degenerate radius {0}: Eguchi-Hanson coordinates need r > 0")]
    DegenerateRadius(f64),
    #[error("point is outside the Eguchi-Hanson ball of NUT {0}")]
    OutsideBall(usize),
    #[error("chart {0} cannot be evaluated by this metric")]
    WrongChart(String),
    #[error("invalid monopole configuration: {0}")]
    InvalidConfig(String),
    #[error("coordinates outside the chart domain: {0}")]
    OutOfDomain(String),
}
