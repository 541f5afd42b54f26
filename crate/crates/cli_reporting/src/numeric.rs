//! `numeric <check>`: pointwise and integrated curvature checks on
//! multi-Taub-NUT, and the collar Chern-Simons experiments.

use std::f64::consts::PI;

use curvature_engine::{christoffel, riemann, FdOptions};
use invariant_core::{ht_gap, SpaceRecipe};
use model_geometry::{ChartPoint, Mat4, MetricField, MonopoleConfig, MultiTaubNut, ReferenceMetric, Vec3};
use quadrature::{euler_integrand, l_integrand, radius_sweep, FiberRule, Grid, IntegrationPlan, SweepFit};
use num_traits::ToPrimitive;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use transgression_lab::connection::{connection_difference, log_log_slope};
use transgression_lab::counterexample::l2_counterexample;
use transgression_lab::transgression::DEFAULT_EPS;
use transgression_lab::{build_collar, cs_limit, CollarModel, CollarParams, MetricFamily, MetricKind, Polynomial};

use crate::error::CliError;
use crate::recipe_file::NumericSection;
use crate::report::{Check, Report, Scalar};

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum NumericCheck {
    RicciFlat,
    SelfDual,
    GaussBonnet,
    SignatureIntegral,
    CsDecay,
    CsCounterexample,
    Hyperkahler,
}

impl NumericCheck {
    pub const ALL: [NumericCheck; 7] = [
        NumericCheck::RicciFlat,
        NumericCheck::SelfDual,
        NumericCheck::GaussBonnet,
        NumericCheck::SignatureIntegral,
        NumericCheck::CsDecay,
        NumericCheck::CsCounterexample,
        NumericCheck::Hyperkahler,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            NumericCheck::RicciFlat => "ricci-flat",
            NumericCheck::SelfDual => "self-dual",
            NumericCheck::GaussBonnet => "gauss-bonnet",
            NumericCheck::SignatureIntegral => "signature-integral",
            NumericCheck::CsDecay => "cs-decay",
            NumericCheck::CsCounterexample => "cs-counterexample",
            NumericCheck::Hyperkahler => "hyperkahler",
        }
    }
}

pub const RICCI_TOL: f64 = 1e-4;
pub const DUALITY_TOL: f64 = 1e-4;
pub const SLOPE_TOL: f64 = 0.15;
pub const CS_VANISHING_TOL: f64 = 1e-2;

#[derive(Debug, Clone, PartialEq)]
pub struct NumericOptions {
    pub k: usize,
    pub monopoles: Option<Vec<[f64; 3]>>,
    /// Middle radius of the sweep R/2, 3R/4, R, 3R/2.
    pub radius: f64,
    pub grid: Grid,
    pub eps: Vec<f64>,
    /// Sample points for the pointwise checks; the check's default when None.
    pub points: Option<usize>,
    pub step_fraction: f64,
    pub collar: Option<String>,
    pub seed: u64,
}

impl Default for NumericOptions {
    fn default() -> Self {
        Self {
            k: 1,
            monopoles: None,
            radius: 20.0,
            grid: Grid {
                radial: 32,
                polar: 16,
                azimuthal: 32,
                ..Grid::default()
            },
            eps: DEFAULT_EPS.to_vec(),
            points: None,
            step_fraction: FdOptions::default().step_fraction,
            collar: None,
            seed: 1,
        }
    }
}

/// "RADIALxPOLARxAZIMUTHAL".
pub fn parse_grid(s: &str) -> Result<Grid, CliError> {
    let n: Vec<usize> = s
        .split('x')
        .map(|p| p.trim().parse::<usize>())
        .collect::<Result<_, _>>()
        .map_err(|_| CliError::Config(format!("grid {:?} is not RADIALxPOLARxAZIMUTHAL", s)))?;
    match n[..] {
        [radial, polar, azimuthal] => Ok(Grid {
            radial,
            polar,
            azimuthal,
            fiber: FiberRule::Invariant { theta: 0.37 },
        }),
        _ => Err(CliError::Config(format!("grid {:?} is not RADIALxPOLARxAZIMUTHAL", s))),
    }
}

impl NumericOptions {
    /// Defaults overridden by a recipe file's [numeric] section.
    pub fn from_section(section: &NumericSection) -> Result<Self, CliError> {
        let mut o = Self::default();
        if let Some(k) = section.k {
            o.k = k;
        }
        o.monopoles = section.monopoles.clone();
        if let Some(r) = section.radius {
            o.radius = r;
        }
        if let Some(g) = &section.grid {
            o.grid = parse_grid(g)?;
        }
        if let Some(e) = &section.eps {
            o.eps = e.clone();
        }
        o.points = section.points.or(o.points);
        if let Some(s) = section.step_fraction {
            o.step_fraction = s;
        }
        o.collar = section.collar.clone();
        if let Some(s) = section.seed {
            o.seed = s;
        }
        Ok(o)
    }

    fn fd(&self) -> FdOptions {
        FdOptions::with_fraction(self.step_fraction)
    }

    pub fn space(&self) -> Result<MultiTaubNut, CliError> {
        match &self.monopoles {
            Some(pts) => {
                let cfg = MonopoleConfig::new(pts.iter().map(|p| Vec3::new(p[0], p[1], p[2])).collect())?;
                Ok(MultiTaubNut::new(cfg))
            }
            None if (1..=64).contains(&self.k) => Ok(MultiTaubNut::with_default_layout(self.k)),
            None => Err(CliError::Config(format!("k = {} outside 1..=64", self.k))),
        }
    }

    fn validate(&self) -> Result<(), CliError> {
        if !(self.step_fraction > 0.0 && self.step_fraction < 0.1) {
            return Err(CliError::Config(format!("step fraction {} outside (0, 0.1)", self.step_fraction)));
        }
        if !(self.radius.is_finite() && self.radius > 0.0) {
            return Err(CliError::Config(format!("radius {} must be positive", self.radius)));
        }
        if self.points == Some(0) {
            return Err(CliError::Config("need at least one sample point".into()));
        }
        Ok(())
    }

    fn validate_eps(&self) -> Result<(), CliError> {
        let e = &self.eps;
        if e.len() < 3 || e.iter().any(|x| !(*x > 0.0 && *x < 0.5)) || e.windows(2).any(|w| !(w[1] < w[0])) {
            return Err(CliError::Config(format!(
                "eps list {:?} must hold at least 3 strictly decreasing values in (0, 1/2)",
                e
            )));
        }
        Ok(())
    }
}

/// Seeded base points in a box around the monopoles, kept off the NUTs.
pub fn sample_points(space: &MultiTaubNut, n: usize, seed: u64) -> Result<Vec<ChartPoint>, CliError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let half = space.config().extent() + 2.0;
    let mut out = Vec::with_capacity(n);
    while out.len() < n {
        let x = Vec3::new(
            rng.gen_range(-half..half),
            rng.gen_range(-half..half),
            rng.gen_range(-half..half),
        );
        if space.config().nearest(&x).1 < 1e-3 {
            continue;
        }
        out.push(space.chart_point(&x, rng.gen_range(0.0..2.0 * PI))?);
    }
    Ok(out)
}

fn preset(name: &str) -> Result<CollarModel, CliError> {
    let params = CollarParams::preset(name).ok_or_else(|| {
        CliError::Config(format!(
            "unknown collar {:?}; presets: {}",
            name,
            CollarParams::PRESETS.join(", ")
        ))
    })?;
    Ok(build_collar(params)?)
}

fn space_fields(report: &mut Report, opts: &NumericOptions, space: &MultiTaubNut) {
    report.number("k", Scalar::Int(space.config().k() as i64), 0.0);
    report.real("step_fraction", opts.step_fraction, 0.0);
}

pub fn cmd_numeric(check: NumericCheck, opts: &NumericOptions) -> Result<Report, CliError> {
    opts.validate()?;
    let mut report = Report::new(format!("numeric {}", check.name()), opts.seed);
    match check {
        NumericCheck::RicciFlat => ricci_flat(&mut report, opts)?,
        NumericCheck::SelfDual => self_dual(&mut report, opts)?,
        NumericCheck::GaussBonnet => integral(&mut report, opts, Polynomial::Euler)?,
        NumericCheck::SignatureIntegral => integral(&mut report, opts, Polynomial::L)?,
        NumericCheck::CsDecay => cs_decay(&mut report, opts)?,
        NumericCheck::CsCounterexample => cs_counterexample(&mut report, opts)?,
        NumericCheck::Hyperkahler => hyperkahler(&mut report, opts)?,
    }
    Ok(report)
}

fn ricci_flat(report: &mut Report, opts: &NumericOptions) -> Result<(), CliError> {
    let space = opts.space()?;
    let n = opts.points.unwrap_or(100);
    space_fields(report, opts, &space);
    report.number("points", Scalar::Int(n as i64), 0.0);
    let mut max_ricci: f64 = 0.0;
    let mut max_riemann: f64 = 0.0;
    for p in sample_points(&space, n, opts.seed)? {
        let b = riemann(&space, &p, &opts.fd())?;
        max_ricci = max_ricci.max(b.ricci_norm());
        max_riemann = max_riemann.max(b.riemann_norm());
    }
    // the curvature itself is far from zero
    report.real("max_riemann_norm", max_riemann, RICCI_TOL);
    report.check(Check::below("max_ricci_norm", max_ricci, RICCI_TOL));
    Ok(())
}

fn self_dual(report: &mut Report, opts: &NumericOptions) -> Result<(), CliError> {
    let space = opts.space()?;
    let n = opts.points.unwrap_or(50);
    space_fields(report, opts, &space);
    report.number("points", Scalar::Int(n as i64), 0.0);
    let mut worst: f64 = 0.0;
    let mut plus_vanishes = 0;
    for p in sample_points(&space, n, opts.seed)? {
        let b = riemann(&space, &p, &opts.fd())?;
        let (wp, wm) = (b.weyl_plus.norm(), b.weyl_minus.norm());
        worst = worst.max(wp.min(wm) / wp.max(wm));
        if wp < wm {
            plus_vanishes += 1;
        }
    }
    report.number("points_with_w_plus_vanishing", Scalar::Int(plus_vanishes), 0.0);
    report.check(Check::below("max_weyl_ratio", worst, DUALITY_TOL));
    Ok(())
}

fn sweep_fields(report: &mut Report, fit: &SweepFit) {
    for r in &fit.results {
        report.real(&format!("integral.r{}", r.r_used), r.value, r.error_estimate);
    }
    report.real("tail_coefficient", fit.c1, fit.residual);
    report.real("fit_residual", fit.residual, 0.0);
}

fn integral(report: &mut Report, opts: &NumericOptions, poly: Polynomial) -> Result<(), CliError> {
    let space = opts.space()?;
    let k = space.config().k();
    space_fields(report, opts, &space);
    report.text(
        "grid",
        format!("{}x{}x{}", opts.grid.radial, opts.grid.polar, opts.grid.azimuthal),
    );
    let r = opts.radius;
    let radii = [0.5 * r, 0.75 * r, r, 1.5 * r];
    report.real("radius", r, 0.0);
    let plan = IntegrationPlan::for_space(&space, radii[0]).with_grid(opts.grid);
    // targets come from the exact layer
    let exact = ht_gap(&SpaceRecipe::multi_taub_nut(k as u32))?;
    let (fit, expected, rel, name) = match poly {
        Polynomial::Euler => (
            radius_sweep(&space, euler_integrand(&space, opts.fd()), &plan, &radii)?,
            &exact.chi,
            if k == 1 { 0.05 } else { 0.07 },
            "euler_integral",
        ),
        Polynomial::L => (
            radius_sweep(&space, l_integrand(&space, opts.fd()), &plan, &radii)?,
            exact.corrected_tau.as_rational().expect("multi-Taub-NUT data is rational"),
            0.10,
            "l_integral",
        ),
    };
    sweep_fields(report, &fit);
    report.real("limit_error_estimate", fit.limit.error_estimate, 0.0);
    report.exact("expected_exact", expected);
    let want = expected.to_f64().unwrap_or(f64::NAN);
    report.check(Check::within(name, fit.limit.value, want, rel * want.abs()));
    Ok(())
}

fn slope_name(pair: (MetricKind, MetricKind)) -> String {
    format!("slope.{}.{}", pair.0, pair.1)
}

fn cs_decay(report: &mut Report, opts: &NumericOptions) -> Result<(), CliError> {
    opts.validate_eps()?;
    let slope_collar = opts.collar.as_deref().unwrap_or("sphere-over-circle-perturbed");
    report.text("collar", slope_collar);
    report.text("eps", format!("{:?}", opts.eps));
    let m = preset(slope_collar)?;
    for pair in [
        (MetricKind::ExactPhi, MetricKind::AsymptoticPhi),
        (MetricKind::ExactD, MetricKind::AsymptoticD),
        (MetricKind::AsymptoticD, MetricKind::AuxiliaryEpsD),
    ] {
        let diffs = opts
            .eps
            .iter()
            .map(|&e| connection_difference(&m, pair, e))
            .collect::<Result<Vec<_>, _>>()?;
        for d in &diffs {
            report.real(&format!("sup_norm.{}.{}.eps{}", pair.0, pair.1, d.eps), d.sup_norm, 0.0);
        }
        report.check(Check::within(slope_name(pair), log_log_slope(&diffs), 1.0, SLOPE_TOL));
    }
    // fibred (dim F = 1) corrections and d-metric corrections vanish
    let cases: Vec<(&str, MetricFamily)> = match &opts.collar {
        Some(name) => {
            let mut c = vec![(name.as_str(), MetricFamily::D)];
            if m.fiber_dim() == 1 {
                c.insert(0, (name.as_str(), MetricFamily::Phi));
            }
            c
        }
        None => vec![
            ("hopf", MetricFamily::Phi),
            ("hopf-perturbed", MetricFamily::Phi),
            ("hopf-perturbed", MetricFamily::D),
            ("sphere-over-circle-perturbed", MetricFamily::D),
        ],
    };
    for (name, family) in cases {
        let model = preset(name)?;
        for poly in [Polynomial::Euler, Polynomial::L] {
            let c = cs_limit(&model, poly, family, &opts.eps)?;
            let fam = match family {
                MetricFamily::Phi => "phi",
                MetricFamily::D => "d",
            };
            report.check(Check::below(
                format!("cs.{}.{}.{}", name, fam, poly),
                c.correction.abs(),
                CS_VANISHING_TOL,
            ));
        }
    }
    Ok(())
}

fn cs_counterexample(report: &mut Report, opts: &NumericOptions) -> Result<(), CliError> {
    opts.validate_eps()?;
    let names: Vec<&str> = match &opts.collar {
        Some(n) => vec![n.as_str()],
        None => vec!["sphere-over-circle", "sphere-over-circle-perturbed"],
    };
    report.text("eps", format!("{:?}", opts.eps));
    // χ(R² × S²) from the closed-form catalog
    let chi = ReferenceMetric::R2xS2 { radius: 1.0 }.euler_characteristic() as f64;
    for name in names {
        let m = preset(name)?;
        if m.fiber_dim() != 2 {
            return Err(CliError::Config(format!(
                "cs-counterexample needs a 2-dimensional fibre; {:?} has dim F = {}",
                name,
                m.fiber_dim()
            )));
        }
        let c = cs_limit(&m, Polynomial::Euler, MetricFamily::Phi, &opts.eps)?;
        for r in &c.results {
            report.real(&format!("transgression.{}.eps{}", name, r.eps), r.value, r.error_estimate);
        }
        report.check(Check::within(format!("cs.{}.euler", name), c.correction, chi, 0.05 * chi));
        let first = c.results.first().unwrap().value.abs();
        let last = c.results.last().unwrap().value.abs();
        // an O(ε) sequence would give about ε_last/ε_first
        report.check(Check::within(format!("non_decay.{}", name), last / first, 1.0, 0.25));
    }
    // frame model of the L₂ transgression in dimension 8
    let eps: Vec<f64> = (0..5).map(|i| 0.1 / f64::from(1 << i)).collect();
    let l2 = l2_counterexample(opts.seed, &eps);
    for (e, v) in &l2.values {
        report.real(&format!("l2_density.eps{}", e), *v, 1e-12 * v.abs());
    }
    report.real("l2_leading", l2.leading, 1e-12 * l2.leading.abs());
    let ratio = l2.ratios.last().copied().unwrap_or(f64::NAN);
    report.check(Check::within("l2.non_decay_ratio", ratio, 1.0, 0.1));
    let last = l2.values.last().unwrap().1;
    report.check(Check::within("l2.leading_term", last, l2.leading, 0.05 * l2.leading.abs()));
    Ok(())
}

/// J² = −1, J₁J₂ = J₃, g(J·, J·) = g and ∇J = 0 at seeded points.
fn hyperkahler(report: &mut Report, opts: &NumericOptions) -> Result<(), CliError> {
    let space = opts.space()?;
    let n = opts.points.unwrap_or(20);
    space_fields(report, opts, &space);
    report.number("points", Scalar::Int(n as i64), 0.0);
    let id = Mat4::identity();
    let mut algebra: f64 = 0.0;
    let mut parallel: f64 = 0.0;
    let h = 1e-5;
    for p in sample_points(&space, n, opts.seed)? {
        let g = space.metric(&p)?;
        let js = space.hyperkahler_triple(&p)?;
        for j in &js {
            algebra = algebra.max((j * j + id).amax());
            algebra = algebra.max((j.transpose() * g * j - g).amax() / g.amax());
        }
        algebra = algebra.max((js[0] * js[1] - js[2]).amax());
        let gamma = christoffel(&space, &p, &opts.fd())?;
        let dj: Vec<[Mat4; 3]> = (0..4)
            .map(|mu| {
                let plus = space.hyperkahler_triple(&p.shifted(mu, h))?;
                let minus = space.hyperkahler_triple(&p.shifted(mu, -h))?;
                Ok([0, 1, 2].map(|i| (plus[i] - minus[i]) / (2.0 * h)))
            })
            .collect::<Result<_, CliError>>()?;
        for (i, j) in js.iter().enumerate() {
            let mut scale: f64 = 0.0;
            let mut worst: f64 = 0.0;
            for mu in 0..4 {
                for a in 0..4 {
                    for b in 0..4 {
                        // ∇_μ J^a_b = ∂_μ J^a_b + Γ^a_{μν} J^ν_b − Γ^ν_{μb} J^a_ν
                        let mut v = dj[mu][i][(a, b)];
                        scale = scale.max(v.abs());
                        for nu in 0..4 {
                            let t1 = gamma.get(a, mu, nu) * j[(nu, b)];
                            let t2 = gamma.get(nu, mu, b) * j[(a, nu)];
                            scale = scale.max(t1.abs()).max(t2.abs());
                            v += t1 - t2;
                        }
                        worst = worst.max(v.abs());
                    }
                }
            }
            parallel = parallel.max(worst / scale.max(1.0));
        }
    }
    report.check(Check::below("algebra_residual", algebra, 1e-10));
    report.check(Check::below("parallel_residual", parallel, 1e-5));
    Ok(())
}
