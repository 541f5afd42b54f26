//! Euler characteristic, signature, eta/rho corrections and the
//! Hitchin-Thorpe gap.

use std::fmt;

use astro_float::BigFloat;
use num_bigint::BigInt;
use num_rational::BigRational;

use crate::angle::signature_defect;
use crate::error::InvariantError;
use crate::exact::ExactReal;
use crate::hp;
use crate::recipe::{CircleBundleSpec, GroupActionSpec, SpaceRecipe};

fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

fn int(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// An exact value together with its high-precision evaluation.
#[derive(Debug, Clone)]
pub struct DualReal {
    pub exact: ExactReal,
    pub value: BigFloat,
}

impl DualReal {
    pub fn new(exact: ExactReal) -> Self {
        let value = exact.eval();
        Self { exact, value }
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        self.exact.as_rational()
    }

    pub fn to_f64(&self) -> f64 {
        hp::to_f64(&self.value)
    }

    /// Decimal string with 64 significant digits.
    pub fn decimal(&self) -> String {
        hp::to_decimal(&self.value, 64)
    }
}

impl fmt::Display for DualReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.as_rational() {
            Some(q) => write!(f, "{}", q),
            None => write!(f, "{} ≈ {}", self.exact, hp::to_decimal(&self.value, 20)),
        }
    }
}

/// ε(E) = sign χ(E).
pub fn epsilon_of(bundle: &CircleBundleSpec) -> i8 {
    bundle.euler_number.signum() as i8
}

/// Half the adiabatic limit of the eta invariant of the boundary circle
/// bundle: χ(E)/3 − ε(E).
pub fn adiabatic_eta_half(bundle: &CircleBundleSpec) -> BigRational {
    rat(bundle.euler_number, 3) - int(i64::from(epsilon_of(bundle)))
}

/// Σ over all non-identity elements and their fixed points of the defects.
pub fn defect_sum(action: &GroupActionSpec) -> Result<ExactReal, InvariantError> {
    let mut acc = ExactReal::zero();
    for fp in &action.fixed_points {
        acc = &acc + &signature_defect(&fp.angles)?.exact;
    }
    Ok(acc)
}

#[derive(Debug, Clone)]
pub struct RhoInvariant {
    /// (|Γ| − 1)·ε(E)
    pub rational_part: BigRational,
    /// −Σ def
    pub defect_part: DualReal,
}

impl RhoInvariant {
    pub fn total(&self) -> ExactReal {
        &ExactReal::from_rational(self.rational_part.clone()) + &self.defect_part.exact
    }
}

/// ρ = (|Γ| − 1)·ε(E) − Σ_{a≠Id} Σ_z def(a)[z].
pub fn rho_invariant(
    action: &GroupActionSpec,
    bundle: &CircleBundleSpec,
) -> Result<RhoInvariant, InvariantError> {
    action.validate()?;
    let eps = i64::from(epsilon_of(bundle));
    let rational_part = int((i64::from(action.order) - 1) * eps);
    let defect_part = DualReal::new(-defect_sum(action)?);
    Ok(RhoInvariant {
        rational_part,
        defect_part,
    })
}

pub fn euler_char(recipe: &SpaceRecipe) -> Result<BigRational, InvariantError> {
    let s = recipe.summarize()?;
    // Local isometry: the invariant integral of the quotient is 1/|Γ| of the cover's.
    let base = rat(i64::from(s.k), i64::from(s.action.order));
    // χ(A # CP²bar) = χ(A) + 3 − 2; each surgery adds 2.
    Ok(base + int(i64::from(s.blow_ups)) + int(2 * i64::from(s.surgeries)))
}

/// τ − ε(E) + (1/|Γ|)·(Σ def + χ(E)/3) for an abstract signature and boundary data.
pub fn corrected_tau_from_parts(
    tau: &BigRational,
    action: &GroupActionSpec,
    bundle: &CircleBundleSpec,
) -> Result<DualReal, InvariantError> {
    action.validate()?;
    let order = int(i64::from(action.order));
    let correction = &(&defect_sum(action)? + &ExactReal::from_rational(rat(bundle.euler_number, 3)))
        * &(int(1) / order);
    let base = ExactReal::from_rational(tau - int(i64::from(epsilon_of(bundle))));
    Ok(DualReal::new(&base + &correction))
}

/// The invariant integral ∫L of the recipe's space: −2k/(3|Γ|) − l.
fn l_integral(recipe: &SpaceRecipe) -> Result<BigRational, InvariantError> {
    let s = recipe.summarize()?;
    Ok(rat(-2 * i64::from(s.k), 3 * i64::from(s.action.order)) - int(i64::from(s.blow_ups)))
}

pub fn signature(recipe: &SpaceRecipe) -> Result<BigRational, InvariantError> {
    let s = recipe.summarize()?;
    let order = int(i64::from(s.action.order));
    // τ = ∫L − (1/|Γ|)(Σ def + χ(E)/3) + ε(E); surgery leaves τ alone.
    let correction = &(&defect_sum(&s.action)?
        + &ExactReal::from_rational(rat(s.bundle.euler_number, 3)))
        * &(int(1) / order);
    let tau = &ExactReal::from_rational(l_integral(recipe)? + int(i64::from(epsilon_of(&s.bundle))))
        - &correction;
    tau.as_rational()
        .cloned()
        .ok_or_else(|| InvariantError::NonRationalSignature(tau.to_string()))
}

pub fn corrected_tau(recipe: &SpaceRecipe) -> Result<DualReal, InvariantError> {
    let s = recipe.summarize()?;
    corrected_tau_from_parts(&signature(recipe)?, &s.action, &s.bundle)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    ObstructionViolated,
    Equality,
    NoObstruction,
}

impl Verdict {
    pub fn as_str(&self) -> &'static str {
        match self {
            Verdict::ObstructionViolated => "ObstructionViolated",
            Verdict::Equality => "Equality",
            Verdict::NoObstruction => "NoObstruction",
        }
    }

    pub fn annotation(&self) -> &'static str {
        match self {
            Verdict::ObstructionViolated => {
                "no Einstein exact F/Fc-metric: the traceless Ricci part cannot vanish"
            }
            Verdict::Equality => {
                "equality: an Einstein exact F/Fc-metric forces the universal cover to be \
                 complete Ricci-flat and (anti-)self-dual"
            }
            Verdict::NoObstruction => "inequality satisfied; no obstruction",
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone)]
pub struct InvariantReport {
    pub chi: BigRational,
    pub tau: BigRational,
    pub eps_e: i8,
    pub chi_e: i64,
    pub group_order: u32,
    pub eta_half_adiabatic: BigRational,
    pub rho_rational_part: BigRational,
    pub defect_sum: DualReal,
    pub corrected_tau: DualReal,
    pub ht_gap: DualReal,
    pub verdict: Verdict,
}

impl InvariantReport {
    /// True when every field is an exact rational.
    pub fn is_exact(&self) -> bool {
        self.defect_sum.as_rational().is_some()
            && self.corrected_tau.as_rational().is_some()
            && self.ht_gap.as_rational().is_some()
    }
}

/// gap = χ − (3/2)·|corrected τ| and its verdict, from abstract data.
pub fn ht_gap_from_parts(
    chi: &BigRational,
    tau: &BigRational,
    action: &GroupActionSpec,
    bundle: &CircleBundleSpec,
) -> Result<InvariantReport, InvariantError> {
    let corrected = corrected_tau_from_parts(tau, action, bundle)?;
    let abs = match corrected.exact.signum() {
        Some(s) if s < 0 => -&corrected.exact,
        Some(_) => corrected.exact.clone(),
        None => {
            return Err(InvariantError::InexactEquality(format!(
                "|corrected τ| with corrected τ = {}",
                corrected
            )))
        }
    };
    let gap = DualReal::new(&ExactReal::from_rational(chi.clone()) - &abs.scale(&rat(3, 2)));
    let verdict = match gap.exact.signum() {
        Some(0) => Verdict::Equality,
        Some(s) if s < 0 => Verdict::ObstructionViolated,
        Some(_) => Verdict::NoObstruction,
        None => return Err(InvariantError::InexactEquality(gap.to_string())),
    };
    let rho = rho_invariant(action, bundle)?;
    Ok(InvariantReport {
        chi: chi.clone(),
        tau: tau.clone(),
        eps_e: epsilon_of(bundle),
        chi_e: bundle.euler_number,
        group_order: action.order,
        eta_half_adiabatic: adiabatic_eta_half(bundle),
        rho_rational_part: rho.rational_part,
        defect_sum: DualReal::new(defect_sum(action)?),
        corrected_tau: corrected,
        ht_gap: gap,
        verdict,
    })
}

pub fn ht_gap(recipe: &SpaceRecipe) -> Result<InvariantReport, InvariantError> {
    let s = recipe.summarize()?;
    ht_gap_from_parts(&euler_char(recipe)?, &signature(recipe)?, &s.action, &s.bundle)
}

#[derive(Debug, Clone)]
pub struct ElementResidual {
    pub element: u32,
    pub fixed_points: usize,
    pub defect_sum: DualReal,
    /// τ(a, X̃) = ε(E) on the cover.
    pub g_signature: i8,
    /// (1/2)η_a implied by the G-signature identity: Σ def − ε(E).
    pub implied_half_eta: DualReal,
}

/// Rearranges the G-signature formula τ(a) = Σ_z def(a)[z] − (1/2)η_a with
/// τ(a) = ε(E) to report the implied equivariant eta term per element.
pub fn g_signature_check(
    action: &GroupActionSpec,
    bundle: &CircleBundleSpec,
) -> Result<Vec<ElementResidual>, InvariantError> {
    action.validate()?;
    if action.order < 2 {
        return Err(InvariantError::MalformedRecipe(
            "G-signature check needs a group of order ≥ 2".into(),
        ));
    }
    let eps = epsilon_of(bundle);
    (1..action.order)
        .map(|a| {
            let mut sum = ExactReal::zero();
            let mut count = 0;
            for fp in action.fixed_points.iter().filter(|fp| fp.element == a) {
                sum = &sum + &signature_defect(&fp.angles)?.exact;
                count += 1;
            }
            let implied = &sum - &ExactReal::from_int(i64::from(eps));
            Ok(ElementResidual {
                element: a,
                fixed_points: count,
                defect_sum: DualReal::new(sum),
                g_signature: eps,
                implied_half_eta: DualReal::new(implied),
            })
        })
        .collect()
}

/// Renders a rational as "p/q" or "p".
pub fn fmt_rational(q: &BigRational) -> String {
    if q.denom() == &BigInt::from(1) {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// Convenience for comparing against integer-ratio targets.
pub fn rational(n: i64, d: i64) -> BigRational {
    rat(n, d)
}
