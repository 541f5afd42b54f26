use curvature_engine::{CurvatureError, FdOptions};
use model_geometry::*;
use quadrature::*;

fn light() -> Grid {
    Grid {
        radial: 32,
        polar: 16,
        azimuthal: 32,
        ..Grid::default()
    }
}

#[test]
fn gauss_legendre_three_points() {
    let (x, w) = gauss_legendre(3);
    let s = (0.6f64).sqrt();
    assert!((x[0] + s).abs() < 1e-15 && x[1].abs() < 1e-15 && (x[2] - s).abs() < 1e-15);
    assert!((w[0] - 5.0 / 9.0).abs() < 1e-15 && (w[1] - 8.0 / 9.0).abs() < 1e-15);
}

#[test]
fn gauss_legendre_is_exact_to_degree_2n_minus_1() {
    for n in [1usize, 2, 5, 8, 16, 33] {
        let (x, w) = gauss_legendre(n);
        assert!((w.iter().sum::<f64>() - 2.0).abs() < 1e-13);
        for d in 0..2 * n {
            let got: f64 = x.iter().zip(&w).map(|(x, w)| w * x.powi(d as i32)).sum();
            let want = if d % 2 == 1 { 0.0 } else { 2.0 / (d as f64 + 1.0) };
            assert!((got - want).abs() < 1e-13, "n={} d={}: {}", n, d, got);
        }
    }
}

#[test]
fn zero_density_integrates_to_zero() {
    let m = MultiTaubNut::with_default_layout(2);
    let plan = IntegrationPlan::for_space(&m, 5.0).with_grid(light());
    let r = integrate_density(&m, |_: &ChartPoint| Ok(0.0), &plan).unwrap();
    assert_eq!(r.value, 0.0);
    assert_eq!(r.error_estimate, 0.0);
}

#[test]
fn constant_density_gives_box_volume() {
    let flat = ReferenceMetric::FlatR4;
    let r = integrate_box(&flat, |_: &ChartPoint| Ok(1.0), &flat.domain(), [8, 8, 8, 8]).unwrap();
    assert!((r.value - 16.0).abs() < 1e-10);
    let mut dom = flat.domain();
    dom[0] = Interval { lo: 0.0, hi: 3.0, periodic: false };
    dom[3] = Interval { lo: 0.0, hi: 0.5, periodic: true };
    let r = integrate_box(&flat, |_: &ChartPoint| Ok(1.0), &dom, [8, 8, 8, 8]).unwrap();
    assert!((r.value - 3.0 * 2.0 * 2.0 * 0.5).abs() < 1e-10);
}

#[test]
fn round_s4_gauss_bonnet() {
    let s4 = ReferenceMetric::RoundS4 { radius: 1.0 };
    let r = integrate_box(&s4, euler_integrand(&s4, FdOptions::default()), &s4.domain(), [12, 12, 12, 8]).unwrap();
    assert!((r.value - 2.0).abs() < 0.04, "{:?}", r);
    // Volume 8π²/3.
    let vol = integrate_box(&s4, |_: &ChartPoint| Ok(1.0), &s4.domain(), [12, 12, 12, 8]).unwrap();
    assert!((vol.value - 8.0 * std::f64::consts::PI.powi(2) / 3.0).abs() < 1e-10);
}

#[test]
fn s2_times_s2_gauss_bonnet() {
    let m = ReferenceMetric::S2xS2 { r1: 1.0, r2: 1.5 };
    let r = integrate_box(&m, euler_integrand(&m, FdOptions::default()), &m.domain(), [12, 8, 12, 8]).unwrap();
    assert!((r.value - 4.0).abs() < 0.04, "{:?}", r);
}

#[test]
fn taub_nut_gauss_bonnet_at_fixed_radius() {
    let m = MultiTaubNut::with_default_layout(1);
    let plan = IntegrationPlan::for_space(&m, 20.0).with_grid(light());
    let r = integrate_density(&m, euler_integrand(&m, FdOptions::default()), &plan).unwrap();
    assert!((r.value - 1.0).abs() < 0.05, "{:?}", r);
    assert!(r.error_estimate > 0.0 && r.error_estimate < 0.05);
}

#[test]
fn taub_nut_signature_sweep() {
    let m = MultiTaubNut::with_default_layout(1);
    let plan = IntegrationPlan::for_space(&m, 10.0).with_grid(light());
    let fit = radius_sweep(&m, l_integrand(&m, FdOptions::default()), &plan, &[10.0, 15.0, 20.0, 30.0]).unwrap();
    assert!(fit.limit.extrapolated);
    assert!((fit.limit.value + 2.0 / 3.0).abs() < 2.0 / 30.0, "{:?}", fit);
}

#[test]
fn two_centre_gauss_bonnet_sweep() {
    let m = MultiTaubNut::with_default_layout(2);
    let plan = IntegrationPlan::for_space(&m, 10.0).with_grid(light());
    let fit = radius_sweep(&m, euler_integrand(&m, FdOptions::default()), &plan, &[10.0, 15.0, 20.0, 30.0]).unwrap();
    assert!((fit.limit.value - 2.0).abs() < 0.14, "{:?}", fit);
}

#[test]
fn one_over_r_extrapolation_in_plan() {
    let m = MultiTaubNut::with_default_layout(1);
    let plan = IntegrationPlan {
        extrapolation: Extrapolation::OneOverR,
        ..IntegrationPlan::for_space(&m, 20.0).with_grid(light())
    };
    let r = integrate_density(&m, euler_integrand(&m, FdOptions::default()), &plan).unwrap();
    assert!(r.extrapolated);
    assert!((r.value - 1.0).abs() < 0.05);
}

fn synthetic(c0: f64, c1: f64, radii: &[f64]) -> Vec<IntegralResult> {
    radii
        .iter()
        .map(|&r| IntegralResult {
            value: c0 + c1 / r,
            error_estimate: 0.0,
            r_used: r,
            extrapolated: false,
        })
        .collect()
}

#[test]
fn fit_recovers_exact_tail() {
    let fit = fit_one_over_r(&synthetic(-0.75, 3.2, &[10.0, 15.0, 20.0, 30.0])).unwrap();
    assert!((fit.limit.value + 0.75).abs() < 1e-6);
    assert!((fit.c1 - 3.2).abs() < 1e-6);
    assert!(fit.limit.error_estimate >= 0.0);
}

#[test]
fn fit_rejects_inconsistent_data() {
    let mut data = synthetic(1.0, 1.0, &[10.0, 15.0, 20.0, 30.0]);
    data[1].value += 0.1;
    for d in &mut data {
        d.error_estimate = 1e-4;
    }
    assert!(matches!(fit_one_over_r(&data), Err(QuadratureError::BadFit { .. })));
    assert!(fit_one_over_r(&data[..2]).is_err());
    let m = MultiTaubNut::with_default_layout(1);
    let plan = IntegrationPlan::for_space(&m, 10.0).with_grid(light());
    assert!(radius_sweep(&m, |_: &ChartPoint| Ok(0.0), &plan, &[10.0, 30.0, 20.0]).is_err());
}

#[test]
fn non_finite_samples_are_reported() {
    let m = MultiTaubNut::with_default_layout(1);
    let plan = IntegrationPlan::for_space(&m, 5.0).with_grid(light());
    let r = integrate_density(&m, |_: &ChartPoint| Ok(f64::NAN), &plan);
    assert!(matches!(r, Err(QuadratureError::NonFinite { .. })));
    let r = integrate_density(
        &m,
        |_: &ChartPoint| Err(CurvatureError::NonFinite),
        &plan,
    );
    assert!(matches!(r, Err(QuadratureError::Curvature(_))));
}

#[test]
fn plans_are_validated() {
    let m = MultiTaubNut::with_default_layout(2);
    let ok = IntegrationPlan::for_space(&m, 10.0);
    assert!(ok.validate(&m).is_ok());
    assert!(IntegrationPlan { outer_radius: 1.5, ..ok }.validate(&m).is_err());
    assert!(IntegrationPlan { nut_ball_radius: 5.0, ..ok }.validate(&m).is_err());
    let g = Grid { polar: 4, ..Grid::default() };
    assert!(ok.with_grid(g).validate(&m).is_err());
    let g = Grid { fiber: FiberRule::Trapezoid(4), ..Grid::default() };
    assert!(ok.with_grid(g).validate(&m).is_err());
}

#[test]
fn string_exclusion_adds_to_error_estimate() {
    let m = MultiTaubNut::with_default_layout(1);
    let base = IntegrationPlan::for_space(&m, 8.0).with_grid(light());
    let cut = IntegrationPlan { string_exclusion_angle: 0.05, ..base };
    let f = euler_integrand(&m, FdOptions::default());
    let a = integrate_density(&m, &f, &base).unwrap();
    let b = integrate_density(&m, &f, &cut).unwrap();
    assert!(b.error_estimate > a.error_estimate);
    assert!((a.value - b.value).abs() < b.error_estimate);
}
