//! Exact topological invariants of 4-manifolds with fibred or foliated
//! geometry at infinity: signature defects, rho and adiabatic eta
//! corrections, recipe algebra and the Hitchin-Thorpe gap.

pub mod angle;
pub mod error;
pub mod exact;
pub mod hp;
pub mod invariants;
pub mod recipe;

pub use angle::{signature_defect, Angle, AnglePair, DefectValue};
pub use error::InvariantError;
pub use exact::{Atom, ExactReal};
pub use invariants::{
    adiabatic_eta_half, corrected_tau, corrected_tau_from_parts, defect_sum, epsilon_of,
    euler_char, fmt_rational, g_signature_check, ht_gap, ht_gap_from_parts, rational,
    rho_invariant, signature, DualReal, ElementResidual, InvariantReport, RhoInvariant, Verdict,
};
pub use recipe::{CircleBundleSpec, FixedPointDatum, GroupActionSpec, RecipeSummary, SpaceRecipe};

pub use num_rational::BigRational;
