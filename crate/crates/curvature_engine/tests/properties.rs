use std::f64::consts::PI;

use curvature_engine::forms::{euler_form, hirzebruch_l2, pontryagin_1, pontryagin_2, Form};
use curvature_engine::*;
use model_geometry::*;
use proptest::prelude::*;

fn opts() -> FdOptions {
    FdOptions::default()
}

/// A catalog metric or a multi-Taub-NUT, with a sample point in its domain.
fn any_sample() -> impl Strategy<Value = (usize, [f64; 4])> {
    (0usize..6, prop::array::uniform4(0.0f64..1.0))
}

fn build(which: usize, u: [f64; 4]) -> (Box<dyn MetricField>, ChartPoint) {
    if which < 4 {
        let m = ReferenceMetric::catalog()[which];
        let d = m.domain();
        // Stay away from coordinate singularities at the ends of polar ranges.
        let c = Vec4::from_fn(|a, _| d[a].lo + (0.1 + 0.8 * u[a]) * (d[a].hi - d[a].lo));
        let p = m.point(c);
        (Box::new(m), p)
    } else {
        let m = MultiTaubNut::with_default_layout(which - 3);
        let x = Vec3::new(4.0 * u[0] - 2.0, 4.0 * u[1] - 2.0, 4.0 * u[2] - 2.0 + 1e-3);
        let p = m.chart_point(&x, 2.0 * PI * u[3]).unwrap();
        (Box::new(m), p)
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn first_bianchi_identity((which, u) in any_sample()) {
        let (m, p) = build(which, u);
        let b = riemann(&*m, &p, &opts()).unwrap();
        prop_assert!(b.bianchi_residual() < 1e-5);
    }

    #[test]
    fn metric_compatibility((which, u) in any_sample()) {
        let (m, p) = build(which, u);
        let jet = metric_jet(&*m, &p, &opts()).unwrap();
        let gamma = christoffel(&*m, &p, &opts()).unwrap();
        prop_assert!(metric_compatibility_residual(&jet, &gamma) < 1e-5);
        prop_assert!(gamma.asymmetry < 1e-8);
    }

    #[test]
    fn riemann_symmetries((which, u) in any_sample()) {
        let (m, p) = build(which, u);
        let b = riemann(&*m, &p, &opts()).unwrap();
        let scale = 1.0 + b.lowered.iter().flatten().flatten().flatten().fold(0.0f64, |a, v| a.max(v.abs()));
        prop_assert!(b.antisymmetry_residual() < 1e-6 * scale);
        prop_assert!(b.pair_symmetry_residual() < 1e-6 * scale);
    }

    #[test]
    fn decomposition_consistency((which, u) in any_sample()) {
        let (m, p) = build(which, u);
        let b = riemann(&*m, &p, &opts()).unwrap();
        prop_assert!(b.traceless_ricci.trace().abs() < 1e-8);
        prop_assert!((b.scalar - b.frame_ricci.trace()).abs() < 1e-12);
        // Coordinate and frame scalars agree.
        let ginv = m.metric(&p).unwrap().try_inverse().unwrap();
        let coord = (ginv.component_mul(&b.ricci.transpose())).sum();
        prop_assert!((coord - b.scalar).abs() < 1e-5 * (1.0 + b.scalar.abs()));
        prop_assert!(b.weyl_trace_residual() < 1e-6 * (1.0 + b.riemann_norm()));
        prop_assert!(b.reassembly_residual() < 1e-5 * (1.0 + b.riemann_norm()));
    }

    #[test]
    fn route_agreement((which, u) in any_sample()) {
        let (m, p) = build(which, u);
        let f = characteristic_forms(&*m, &p, &opts());
        prop_assert!(f.is_ok(), "{:?}", f);
    }

    #[test]
    fn wedge_is_graded_commutative(a in prop::collection::vec(-1.0f64..1.0, 16), b in prop::collection::vec(-1.0f64..1.0, 16)) {
        let fa = Form::one_form(&a[..4]);
        let fb = Form::two_form(4, |i, j| b[i * 4 + j]);
        let ga = Form::one_form(&b[..4]);
        // 1-forms anticommute, 2-forms commute with everything.
        prop_assert!((&fa.wedge(&ga) + &ga.wedge(&fa)).max_abs() < 1e-14);
        prop_assert!((&fa.wedge(&fb) - &fb.wedge(&fa)).max_abs() < 1e-14);
        let assoc = &fa.wedge(&ga).wedge(&fb) - &fa.wedge(&ga.wedge(&fb));
        prop_assert!(assoc.max_abs() < 1e-14);
    }
}

#[test]
fn second_order_convergence_on_s4() {
    let s4 = ReferenceMetric::RoundS4 { radius: 1.0 };
    let p = s4.point(Vec4::new(1.0, 0.7, 1.3, 0.2));
    let exact = 3.0 / (4.0 * PI * PI);
    let err = |f: f64| {
        let e = euler_density(&s4, &p, &FdOptions::with_fraction(f)).unwrap();
        (e - exact).abs()
    };
    let (e1, e2, e3) = (err(2e-2), err(1e-2), err(5e-3));
    assert!(e2 < 0.3 * e1 && e3 < 0.3 * e2, "{} {} {}", e1, e2, e3);
    assert!(e2 / e1 > 0.2 && e3 / e2 > 0.2, "{} {} {}", e1, e2, e3);
}

#[test]
fn characteristic_classes_of_block_curvature() {
    // Ω = diag(x₁J, …, x₄J) for commuting 2-forms x_i:
    // p₁ = Σx_i²/4π², p₂ = Σ_{i<j} x_i²x_j²/16π⁴, Pf(Ω/2π) = ∏x_i/16π⁴.
    let kappa = [0.7, -1.3, 0.4, 2.1];
    let mu = [0.5, 0.9, -1.1, 0.3];
    let x = |i: usize| {
        let j = (i + 1) % 4;
        &Form::basis(8, &[2 * i, 2 * i + 1]).scale(kappa[i])
            + &Form::basis(8, &[2 * j, 2 * j + 1]).scale(mu[i])
    };
    let omega = FormMatrix::from_fn(8, |a, b| {
        if a / 2 != b / 2 || a == b {
            Form::zero(8)
        } else if a < b {
            x(a / 2)
        } else {
            x(a / 2).scale(-1.0)
        }
    });
    let p1 = pontryagin_1(&omega);
    let p2 = pontryagin_2(&omega);
    let mut want1 = Form::zero(8);
    let mut want2 = Form::zero(8);
    for i in 0..4 {
        want1 += &x(i).wedge(&x(i)).scale(1.0 / (4.0 * PI * PI));
        for j in i + 1..4 {
            want2 += &x(i).wedge(&x(i)).wedge(&x(j)).wedge(&x(j)).scale(1.0 / (16.0 * PI.powi(4)));
        }
    }
    assert!(want1.max_abs() > 1e-3 && want2.max_abs() > 1e-6);
    assert!((&p1 - &want1).max_abs() < 1e-15);
    assert!((&p2 - &want2).max_abs() < 1e-15);
    let e = euler_form(&omega);
    let prod = x(0).wedge(&x(1)).wedge(&x(2)).wedge(&x(3));
    assert!((e.top() - prod.top() / (16.0 * PI.powi(4))).abs() < 1e-15);
    let l2 = hirzebruch_l2(&p1, &p2);
    let want_l2 = (7.0 * want2.top() - want1.wedge(&want1).top()) / 45.0;
    assert!((l2.top() - want_l2).abs() < 1e-15);
}
