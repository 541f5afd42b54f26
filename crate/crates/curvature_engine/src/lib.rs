//! Finite-difference curvature of a `MetricField`: Christoffel symbols,
//! Riemann and Ricci tensors, the Weyl decomposition on Λ⁺ ⊕ Λ⁻, and the
//! Euler, Pontryagin and L densities.

pub mod characteristic;
pub mod christoffel;
pub mod error;
pub mod forms;
pub mod jet;
pub mod riemann;

pub use characteristic::{
    characteristic_forms, euler_density, weyl_duality_defect, CharacteristicForms, L_density,
};
pub use christoffel::{christoffel, metric_compatibility_residual, ChristoffelData};
pub use error::CurvatureError;
pub use forms::{Form, FormMatrix};
pub use jet::{metric_jet, FdOptions, MetricJet};
pub use riemann::{riemann, CurvatureBundle, CurvatureNorms, Mat3, Mat6, Rank4};
