//! Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any failure.
//!
//! `cargo test -p cli_reporting --test acceptance`

use std::f64::consts::TAU;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use cli_reporting::*;
use curvature_engine::{
    characteristic_forms, christoffel, metric_compatibility_residual, metric_jet, riemann, FdOptions,
};
use invariant_core::{hp, ht_gap, rational, signature_defect, Angle, AnglePair, SpaceRecipe};
use model_geometry::{MultiTaubNut, ReferenceMetric, Vec3, Vec4};
use quadrature::{euler_integrand, integrate_box, integrate_density, Grid, IntegrationPlan};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<Vec<String>, String>;

struct Criterion {
    id: u8,
    name: &'static str,
    budget: Duration,
    run: fn() -> Outcome,
}

fn require(ok: bool, what: impl Into<String>) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(what.into())
    }
}

/// Every check of `report` whose name passes `filter` must pass; returns a summary line.
fn checks(report: &Report, filter: impl Fn(&str) -> bool) -> Result<String, String> {
    let picked: Vec<_> = report.checks.iter().filter(|c| filter(&c.name)).collect();
    require(!picked.is_empty(), format!("{}: no checks selected", report.command))?;
    let failed: Vec<_> = picked.iter().filter(|c| !c.pass).map(|c| c.name.clone()).collect();
    require(failed.is_empty(), format!("{}: failed {}", report.command, failed.join(", ")))?;
    let mut line = format!("{}: {}/{} checks", report.command, picked.len(), picked.len());
    if picked.len() <= 2 {
        for c in &picked {
            match c.computed {
                Scalar::Real(x) if x.abs() < 1e-3 => line += &format!(" ({} = {:.1e})", c.name, x),
                Scalar::Real(x) => line += &format!(" ({} = {:.6})", c.name, x),
                _ => {}
            }
        }
    }
    Ok(line)
}

fn numeric(check: NumericCheck, k: usize) -> Result<Report, String> {
    let opts = NumericOptions {
        k,
        ..NumericOptions::default()
    };
    cmd_numeric(check, &opts).map_err(|e| e.to_string())
}

fn recipes_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../recipes")
}

fn example_reproduction() -> Outcome {
    let mut lines = Vec::new();
    for n in 1..=3 {
        let r = cmd_verify_example(n, 8, 10, 1).map_err(|e| e.to_string())?;
        lines.push(checks(&r, |_| true)?);
    }
    for (file, gap) in [("example1", "0"), ("example2", "-3"), ("example3", "-1/2")] {
        let f = RecipeFile::load(&recipes_dir().join(format!("{}.recipe", file))).map_err(|e| e.to_string())?;
        let r = cmd_invariants(&f, 1).map_err(|e| e.to_string())?;
        checks(&r, |_| true)?;
        let got = r.fields.iter().find(|f| f.key == "ht_gap").map(|f| f.value.clone());
        require(
            got == Some(Scalar::Exact(parse_q(gap))),
            format!("{}: gap {:?}, want {}", file, got, gap),
        )?;
    }
    lines.push("recipes example1..3 match".into());
    Ok(lines)
}

fn parse_q(s: &str) -> invariant_core::BigRational {
    s.parse().unwrap()
}

fn multi_taub_nut_invariants() -> Outcome {
    for k in 1..=8u32 {
        let r = ht_gap(&SpaceRecipe::multi_taub_nut(k)).map_err(|e| e.to_string())?;
        let k = i64::from(k);
        require(r.chi == rational(k, 1), format!("chi(MTN({})) = {}", k, r.chi))?;
        require(r.tau == rational(1 - k, 1), format!("tau(MTN({})) = {}", k, r.tau))?;
        require(
            r.eta_half_adiabatic == rational(k - 3, 3),
            format!("eta/2(MTN({})) = {}", k, r.eta_half_adiabatic),
        )?;
    }
    Ok(vec!["k = 1..8 exact".into()])
}

fn ricci_flatness() -> Outcome {
    (1..=2)
        .map(|k| checks(&numeric(NumericCheck::RicciFlat, k)?, |_| true).map(|s| format!("k={} {}", k, s)))
        .collect()
}

fn self_duality() -> Outcome {
    Ok(vec![checks(&numeric(NumericCheck::SelfDual, 1)?, |_| true)?])
}

fn gauss_bonnet() -> Outcome {
    (1..=2)
        .map(|k| checks(&numeric(NumericCheck::GaussBonnet, k)?, |_| true).map(|s| format!("k={} {}", k, s)))
        .collect()
}

fn signature_integral() -> Outcome {
    Ok(vec![checks(&numeric(NumericCheck::SignatureIntegral, 1)?, |_| true)?])
}

fn oracle_catalog() -> Outcome {
    let opts = FdOptions::default();
    let err = |e: curvature_engine::CurvatureError| e.to_string();
    let s4 = ReferenceMetric::RoundS4 { radius: 1.0 };
    let gb = integrate_box(&s4, euler_integrand(&s4, opts), &s4.domain(), [12, 12, 12, 8]).map_err(|e| e.to_string())?;
    require((gb.value - 2.0).abs() <= 0.04, format!("S4 Gauss-Bonnet {}", gb.value))?;

    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let mut worst_scalar = 0.0f64;
    for _ in 0..20 {
        let c = Vec4::new(rng.gen_range(0.3..2.8), rng.gen_range(0.3..2.8), rng.gen_range(0.3..2.8), rng.gen_range(0.0..6.0));
        let b = riemann(&s4, &s4.point(c), &opts).map_err(err)?;
        worst_scalar = worst_scalar.max((b.scalar - 12.0).abs());
    }
    require(worst_scalar < 1e-4, format!("S4 scalar curvature off by {:e}", worst_scalar))?;

    let flat = ReferenceMetric::FlatR4;
    let mut worst_flat = 0.0f64;
    for _ in 0..20 {
        let c = Vec4::from_fn(|_, _| rng.gen_range(-5.0..5.0));
        worst_flat = worst_flat.max(riemann(&flat, &flat.point(c), &opts).map_err(err)?.riemann_norm());
    }
    require(worst_flat < 1e-10, format!("flat |Rm| = {:e}", worst_flat))?;

    let r2s2 = ReferenceMetric::R2xS2 { radius: 1.0 };
    let mut worst_pf = 0.0f64;
    for _ in 0..20 {
        let c = Vec4::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0), rng.gen_range(0.2..2.9), rng.gen_range(0.0..6.0));
        worst_pf = worst_pf.max(characteristic_forms(&r2s2, &r2s2.point(c), &opts).map_err(err)?.euler_pfaffian.abs());
    }
    require(worst_pf < 1e-8, format!("R2xS2 Pfaffian {:e}", worst_pf))?;
    Ok(vec![format!(
        "S4 GB {:.5}, |S-12| {:.1e}, flat {:.1e}, R2xS2 Pf {:.1e}",
        gb.value, worst_scalar, worst_flat, worst_pf
    )])
}

fn connection_decay() -> Outcome {
    let r = numeric(NumericCheck::CsDecay, 1)?;
    let slopes: Vec<String> = r
        .checks
        .iter()
        .filter(|c| c.name.starts_with("slope."))
        .map(|c| match c.computed {
            Scalar::Real(x) => format!("{:.3}", x),
            _ => "?".into(),
        })
        .collect();
    Ok(vec![checks(&r, |n| n.starts_with("slope."))?, format!("slopes {}", slopes.join(" "))])
}

fn chern_simons_dichotomy() -> Outcome {
    let decay = numeric(NumericCheck::CsDecay, 1)?;
    let counter = numeric(NumericCheck::CsCounterexample, 1)?;
    Ok(vec![
        checks(&decay, |n| n.starts_with("cs."))?,
        checks(&counter, |_| true)?,
    ])
}

fn invariant_suites() -> Outcome {
    let opts = FdOptions::default();
    let err = |e: curvature_engine::CurvatureError| e.to_string();
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    let mut points = 0;
    for k in 1..=3 {
        let m = MultiTaubNut::with_default_layout(k);
        for _ in 0..10 {
            let x = Vec3::from_fn(|_, _| rng.gen_range(-2.0..2.0));
            let Ok(p) = m.chart_point(&x, rng.gen_range(0.0..TAU)) else { continue };
            let b = riemann(&m, &p, &opts).map_err(err)?;
            let scale = 1.0 + b.lowered.iter().flatten().flatten().flatten().fold(0.0f64, |a, v| a.max(v.abs()));
            require(b.bianchi_residual() < 1e-5, format!("Bianchi {:e}", b.bianchi_residual()))?;
            require(
                b.antisymmetry_residual() < 1e-6 * scale && b.pair_symmetry_residual() < 1e-6 * scale,
                "Riemann symmetries",
            )?;
            require(
                b.reassembly_residual() < 1e-5 * (1.0 + b.riemann_norm()),
                format!("reassembly {:e}", b.reassembly_residual()),
            )?;
            let jet = metric_jet(&m, &p, &opts).map_err(err)?;
            let gamma = christoffel(&m, &p, &opts).map_err(err)?;
            let comp = metric_compatibility_residual(&jet, &gamma);
            require(comp < 1e-5, format!("compatibility {:e}", comp))?;
            points += 1;
        }
    }
    for _ in 0..200 {
        let angle = |rng: &mut ChaCha8Rng| {
            if rng.gen_bool(0.5) {
                let d = rng.gen_range(1..=24);
                Angle::pi_fraction(rng.gen_range(1..2 * d), d)
            } else {
                Angle::Radians(rng.gen_range(1e-3..TAU - 1e-3))
            }
        };
        let (a, b) = (angle(&mut rng), angle(&mut rng));
        let d1 = signature_defect(&AnglePair::new(a.clone(), b.clone()).unwrap()).map_err(|e| e.to_string())?;
        let d2 = signature_defect(&AnglePair::new(b, a).unwrap()).map_err(|e| e.to_string())?;
        require(d1.exact == d2.exact && d1.value.cmp(&d2.value) == Some(0), "defect symmetry")?;
        require(hp::is_negligible(&d1.imaginary), "defect reality")?;
    }
    let m = MultiTaubNut::with_default_layout(2);
    let plan = IntegrationPlan::for_space(&m, 6.0).with_grid(Grid {
        radial: 16,
        polar: 8,
        azimuthal: 16,
        ..Grid::default()
    });
    let f = euler_integrand(&m, opts);
    let a = integrate_density(&m, &f, &plan).map_err(|e| e.to_string())?;
    let b = integrate_density(&m, &f, &plan).map_err(|e| e.to_string())?;
    require(a.value.to_bits() == b.value.to_bits(), "quadrature is not bit-reproducible")?;
    require(points >= 20, format!("only {} usable sample points", points))?;
    Ok(vec![format!("curvature identities at {} seeded points, 200 defect pairs, quadrature bits", points)])
}

const CRITERIA: [Criterion; 10] = [
    Criterion { id: 1, name: "example reproduction", budget: Duration::from_secs(1), run: example_reproduction },
    Criterion { id: 2, name: "multi-Taub-NUT invariants", budget: Duration::from_secs(1), run: multi_taub_nut_invariants },
    Criterion { id: 3, name: "Ricci-flatness", budget: Duration::from_secs(60), run: ricci_flatness },
    Criterion { id: 4, name: "half conformal flatness", budget: Duration::from_secs(60), run: self_duality },
    Criterion { id: 5, name: "Gauss-Bonnet", budget: Duration::from_secs(300), run: gauss_bonnet },
    Criterion { id: 6, name: "signature integral", budget: Duration::from_secs(300), run: signature_integral },
    Criterion { id: 7, name: "oracle catalog", budget: Duration::from_secs(120), run: oracle_catalog },
    Criterion { id: 8, name: "connection-difference decay", budget: Duration::from_secs(120), run: connection_decay },
    Criterion { id: 9, name: "Chern-Simons dichotomy", budget: Duration::from_secs(300), run: chern_simons_dichotomy },
    Criterion { id: 10, name: "invariant suites", budget: Duration::from_secs(600), run: invariant_suites },
];

fn main() -> ExitCode {
    // libtest flags such as --nocapture are accepted and ignored.
    let mut failed = 0;
    for c in &CRITERIA {
        let start = Instant::now();
        let outcome = (c.run)();
        let took = start.elapsed();
        let (pass, detail) = match outcome {
            Ok(lines) if took <= c.budget => (true, lines.join("; ")),
            Ok(lines) => (false, format!("over budget {:?}; {}", c.budget, lines.join("; "))),
            Err(e) => (false, e),
        };
        failed += usize::from(!pass);
        println!(
            "{} {:>2} {:<30} {:>8.2}s  {}",
            if pass { "PASS" } else { "FAIL" },
            c.id,
            c.name,
            took.as_secs_f64(),
            detail
        );
    }
    println!("acceptance: {}/{} criteria passed", CRITERIA.len() - failed, CRITERIA.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
