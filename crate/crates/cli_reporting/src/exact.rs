//! `invariants` and `verify`: the exact layer against the closed forms of
//! the three worked examples.

use invariant_core::recipe::examples;
use invariant_core::{ht_gap, rational, BigRational, InvariantReport, SpaceRecipe, Verdict};

use crate::error::CliError;
use crate::recipe_file::RecipeFile;
use crate::report::{Check, Provenance, Report, Scalar};

/// Closed-form values of a worked example, written out independently of
/// the invariant formulas.
#[derive(Debug, Clone, PartialEq)]
pub struct ExampleValues {
    pub example: u8,
    pub label: String,
    pub chi: BigRational,
    pub corrected_tau: BigRational,
    pub gap: BigRational,
    pub source: &'static str,
}

impl ExampleValues {
    pub fn verdict(&self) -> Verdict {
        let zero = rational(0, 1);
        if self.gap < zero {
            Verdict::ObstructionViolated
        } else if self.gap == zero {
            Verdict::Equality
        } else {
            Verdict::NoObstruction
        }
    }
}

fn q(n: i64, d: i64) -> BigRational {
    rational(n, d)
}

/// M₁ = MTN(k)/Z_k.
pub fn example1(k: u32) -> ExampleValues {
    ExampleValues {
        example: 1,
        label: format!("M1, k = {}", k),
        chi: q(1, 1),
        corrected_tau: q(-2, 3),
        gap: q(0, 1),
        source: "gap = (k - k)/k = 0",
    }
}

/// X₁ = M₁ # l·CP²-bar.
pub fn example2(k: u32, l: u32) -> ExampleValues {
    let l = i64::from(l);
    ExampleValues {
        example: 2,
        label: format!("X1 = M1 # l CP2-bar, k = {}, l = {}", k, l),
        chi: q(1 + l, 1),
        corrected_tau: -(q(2, 3) + q(l, 1)),
        gap: q(-l, 2),
        source: "chi = 1 + l, corrected tau = -(2/3 + l), gap = -l/2",
    }
}

/// M₂: one surgery on M₁.
pub fn example3_m2(k: u32) -> ExampleValues {
    ExampleValues {
        example: 3,
        label: format!("M2, k = {}", k),
        chi: q(3, 1),
        corrected_tau: q(-2, 3),
        gap: q(2, 1),
        source: "chi(M2) = 3, corrected tau = -2/3",
    }
}

/// X₂ = M₂ # l·CP²-bar.
pub fn example3(k: u32, l: u32) -> ExampleValues {
    let l = i64::from(l);
    ExampleValues {
        example: 3,
        label: format!("X2 = M2 # l CP2-bar, k = {}, l = {}", k, l),
        chi: q(l + 3, 1),
        corrected_tau: -(q(2, 3) + q(l, 1)),
        gap: q(4 - l, 2),
        source: "chi = l + 3, corrected tau = -(2/3 + l), gap = (4 - l)/2, obstructed iff l > 4",
    }
}

/// The worked example a recipe is structurally equal to, if any.
pub fn match_example(recipe: &SpaceRecipe) -> Option<ExampleValues> {
    let s = recipe.summarize().ok()?;
    let (k, l) = (s.k, s.blow_ups);
    if *recipe == examples::m1(k) {
        Some(example1(k))
    } else if *recipe == examples::x1(k, l) {
        Some(example2(k, l))
    } else if *recipe == examples::m2(k) {
        Some(example3_m2(k))
    } else if *recipe == examples::x2(k, l) {
        Some(example3(k, l))
    } else {
        None
    }
}

fn push_invariants(report: &mut Report, r: &InvariantReport) {
    report.exact("chi", &r.chi);
    report.exact("tau", &r.tau);
    report.number("eps_e", Scalar::Int(i64::from(r.eps_e)), 0.0);
    report.number("chi_e", Scalar::Int(r.chi_e), 0.0);
    report.number("group_order", Scalar::Int(i64::from(r.group_order)), 0.0);
    report.exact("eta_half_adiabatic", &r.eta_half_adiabatic);
    report.exact("rho_rational_part", &r.rho_rational_part);
    for (key, d) in [
        ("defect_sum", &r.defect_sum),
        ("corrected_tau", &r.corrected_tau),
        ("ht_gap", &r.ht_gap),
    ] {
        let (v, tol) = Scalar::from_dual(d);
        report.number(key, v, tol);
    }
    report.text("verdict", r.verdict.as_str());
    report.text("verdict_note", r.verdict.annotation());
}

fn example_checks(report: &mut Report, prefix: &str, r: &InvariantReport, want: &ExampleValues) {
    let exact = |d: &invariant_core::DualReal| Scalar::from_dual(d).0;
    report.check(Check::exact(
        format!("{}chi", prefix),
        Scalar::Exact(r.chi.clone()),
        Scalar::Exact(want.chi.clone()),
    ));
    report.check(Check::exact(
        format!("{}corrected_tau", prefix),
        exact(&r.corrected_tau),
        Scalar::Exact(want.corrected_tau.clone()),
    ));
    report.check(Check::exact(
        format!("{}gap", prefix),
        exact(&r.ht_gap),
        Scalar::Exact(want.gap.clone()),
    ));
    report.check(Check::exact(
        format!("{}verdict", prefix),
        Scalar::Text(r.verdict.as_str().into()),
        Scalar::Text(want.verdict().as_str().into()),
    ));
}

pub fn cmd_invariants(file: &RecipeFile, seed: u64) -> Result<Report, CliError> {
    let recipe = file.to_recipe()?;
    let r = ht_gap(&recipe)?;
    let mut report = Report::new("invariants", seed);
    report.text("recipe", recipe.to_string());
    push_invariants(&mut report, &r);
    if let Some(want) = match_example(&recipe) {
        example_checks(&mut report, "example.", &r, &want);
        report.provenance = Some(Provenance {
            example: format!("example {}", want.example),
            parameters: want.label.clone(),
            source: want.source.into(),
        });
    }
    Ok(report)
}

/// Example n over k ∈ 1..=kmax and l ∈ 0..=lmax; every row must match exactly.
pub fn cmd_verify_example(n: u8, kmax: u32, lmax: u32, seed: u64) -> Result<Report, CliError> {
    if !(1..=3).contains(&n) {
        return Err(CliError::Config(format!("--example must be 1, 2 or 3, got {}", n)));
    }
    if kmax == 0 {
        return Err(CliError::Config("--kmax must be at least 1".into()));
    }
    let mut report = Report::new(format!("verify example {}", n), seed);
    report.number("kmax", Scalar::Int(i64::from(kmax)), 0.0);
    report.number("lmax", Scalar::Int(i64::from(lmax)), 0.0);
    let row = |report: &mut Report, prefix: String, recipe: SpaceRecipe, want: ExampleValues| {
        match ht_gap(&recipe) {
            Ok(r) => example_checks(report, &prefix, &r, &want),
            // failures are rows, not errors
            Err(e) => report.check(Check::exact(
                format!("{}gap", prefix),
                Scalar::Text(e.to_string()),
                Scalar::Exact(want.gap),
            )),
        }
    };
    for k in 1..=kmax {
        match n {
            1 => row(&mut report, format!("k{}.", k), examples::m1(k), example1(k)),
            2 => {
                for l in 0..=lmax {
                    row(&mut report, format!("k{}.l{}.", k, l), examples::x1(k, l), example2(k, l));
                }
            }
            _ => {
                row(&mut report, format!("k{}.m2.", k), examples::m2(k), example3_m2(k));
                let mut first_violation = None;
                for l in 0..=lmax {
                    let recipe = examples::x2(k, l);
                    if first_violation.is_none()
                        && ht_gap(&recipe).map(|r| r.verdict) == Ok(Verdict::ObstructionViolated)
                    {
                        first_violation = Some(l);
                    }
                    row(&mut report, format!("k{}.l{}.", k, l), recipe, example3(k, l));
                }
                if lmax >= 5 {
                    // obstructed exactly for l > 4
                    report.check(Check::exact(
                        format!("k{}.first_obstructed_l", k),
                        first_violation.map_or(Scalar::Text("none".into()), |l| Scalar::Int(i64::from(l))),
                        Scalar::Int(5),
                    ));
                }
            }
        }
    }
    report.provenance = Some(Provenance {
        example: format!("example {}", n),
        parameters: format!("k = 1..{}, l = 0..{}", kmax, lmax),
        source: match n {
            1 => example1(1).source,
            2 => example2(1, 0).source,
            _ => example3(1, 0).source,
        }
        .into(),
    });
    Ok(report)
}
