use curvature_engine::forms::{euler_form, hirzebruch_l2, pontryagin_1, pontryagin_2, Form, FormMatrix};
use curvature_engine::FdOptions;
use model_geometry::{ChartId, ChartPoint, Mat4, MetricField, Vec4};
use proptest::prelude::*;
use transgression_lab::connection::auxiliary_boundary_gap;
use transgression_lab::counterexample::{l2_form, l2_linear_part};
use transgression_lab::frames::{adapted_frame, slice_geometry};
use transgression_lab::transgression::polarized;
use transgression_lab::*;

fn preset(name: &str) -> CollarModel {
    build_collar(CollarParams::preset(name).unwrap()).unwrap()
}

fn antisym_one_forms(v: &[f64]) -> [[[f64; 3]; 4]; 4] {
    let mut t = [[[0.0; 3]; 4]; 4];
    let mut it = v.iter();
    for a in 0..4 {
        for b in a + 1..4 {
            for k in 0..3 {
                let x = *it.next().unwrap();
                t[a][b][k] = x;
                t[b][a][k] = -x;
            }
        }
    }
    t
}

fn antisym_two_forms(v: &[f64]) -> [[[[f64; 3]; 3]; 4]; 4] {
    let mut o = [[[[0.0; 3]; 3]; 4]; 4];
    let mut it = v.iter();
    for a in 0..4 {
        for b in a + 1..4 {
            for (k, l) in [(0, 1), (0, 2), (1, 2)] {
                let x = *it.next().unwrap();
                o[a][b][k][l] = x;
                o[a][b][l][k] = -x;
                o[b][a][k][l] = -x;
                o[b][a][l][k] = x;
            }
        }
    }
    o
}

fn as_form_matrices(theta: &[[[f64; 3]; 4]; 4], omega: &[[[[f64; 3]; 3]; 4]; 4]) -> (FormMatrix, FormMatrix) {
    let t = FormMatrix::from_fn(4, |a, b| Form::one_form(&theta[a][b]));
    let o = FormMatrix::from_fn(4, |a, b| Form::two_form(3, |k, l| omega[a][b][k][l]));
    (t, o)
}

fn random_matrix(n: usize, dim: usize, v: &[f64], degree: usize) -> FormMatrix {
    let mut it = v.iter().cycle();
    let mut upper = vec![vec![Form::zero(dim); n]; n];
    for (a, row) in upper.iter_mut().enumerate() {
        for entry in row.iter_mut().skip(a + 1) {
            *entry = if degree == 1 {
                let c: Vec<f64> = (0..dim).map(|_| *it.next().unwrap()).collect();
                Form::one_form(&c)
            } else {
                let c: Vec<Vec<f64>> = (0..dim).map(|_| (0..dim).map(|_| *it.next().unwrap()).collect()).collect();
                Form::two_form(dim, |p, q| c[p][q])
            };
        }
    }
    FormMatrix::from_fn(n, |a, b| match a.cmp(&b) {
        std::cmp::Ordering::Less => upper[a][b].clone(),
        std::cmp::Ordering::Equal => Form::zero(dim),
        std::cmp::Ordering::Greater => upper[b][a].scale(-1.0),
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    /// 2P(θ, Ω) is the θ-linear (3-form) part of P(Ω + θ).
    #[test]
    fn polarization_matches_form_algebra(
        t in prop::collection::vec(-1.0f64..1.0, 18),
        o in prop::collection::vec(-1.0f64..1.0, 18),
    ) {
        let theta = antisym_one_forms(&t);
        let omega = antisym_two_forms(&o);
        let (tm, om) = as_form_matrices(&theta, &omega);
        let sum = om.add(&tm);
        let e = euler_form(&sum).degree_part(3).top();
        prop_assert!((2.0 * polarized(Polynomial::Euler, &theta, &omega) - e).abs() < 1e-12);
        let l = pontryagin_1(&sum).scale(1.0 / 3.0).degree_part(3).top();
        prop_assert!((2.0 * polarized(Polynomial::L, &theta, &omega) - l).abs() < 1e-12);
    }

    #[test]
    fn exact_d_is_x_squared_exact_phi(
        x in 0.01f64..0.99, y in 0.1f64..3.0, p in 0.1f64..3.0, q in 0.0f64..6.28,
    ) {
        for name in ["hopf-perturbed", "sphere-over-circle-perturbed"] {
            let m = preset(name);
            let c = Vec4::new(x, y, p, q);
            let phi = m.components(MetricKind::ExactPhi, 0.0, &c);
            let d = m.components(MetricKind::ExactD, 0.0, &c);
            prop_assert!((d - phi * (x * x)).abs().max() <= 1e-12 * d.abs().max());
            let phi = m.components(MetricKind::AsymptoticPhi, 0.0, &c);
            let d = m.components(MetricKind::AsymptoticD, 0.0, &c);
            prop_assert!((d - phi * (x * x)).abs().max() <= 1e-12 * d.abs().max());
        }
    }

    #[test]
    fn auxiliary_identity(eps in 0.005f64..0.5, u in prop::array::uniform3(0.1f64..3.0)) {
        let m = preset("sphere-over-circle-perturbed");
        for kind in [MetricKind::AuxiliaryEps, MetricKind::AuxiliaryProductEps, MetricKind::AuxiliaryEpsD] {
            prop_assert!(auxiliary_boundary_gap(&m, kind, eps, &u).unwrap() < 1e-12);
        }
    }

    #[test]
    fn collar_metrics_are_positive_definite(
        x in 0.005f64..0.99, y in 0.1f64..3.0, p in 0.1f64..3.0, q in 0.0f64..6.28, eps in 0.01f64..0.4,
    ) {
        for name in CollarParams::PRESETS {
            let m = preset(name);
            for kind in MetricKind::ALL {
                let g = m.components(kind, eps, &Vec4::new(x, y, p, q));
                prop_assert!((g - g.transpose()).abs().max() <= 1e-14 * g.abs().max());
                prop_assert!(g.cholesky().is_some(), "{} {}", name, kind);
            }
        }
    }

    #[test]
    fn adapted_frames_are_orthonormal_and_triangular(
        x in 0.02f64..0.9, y in 0.2f64..2.9, p in 0.2f64..2.9, q in 0.0f64..6.28,
    ) {
        for name in ["hopf-perturbed", "sphere-over-circle-perturbed"] {
            let m = preset(name);
            let g = m.components(MetricKind::ExactPhi, 0.0, &Vec4::new(x, y, p, q));
            let f = adapted_frame(&g, m.base_dim()).unwrap();
            prop_assert!((f.transpose() * g * f - Mat4::identity()).abs().max() < 1e-9);
            prop_assert!(f[(0, 0)] > 0.0);
            prop_assert!(f.determinant() > 0.0);
        }
    }

    #[test]
    fn connection_forms_are_antisymmetric(
        x in 0.02f64..0.5, u in prop::array::uniform3(0.3f64..2.8),
    ) {
        let m = preset("sphere-over-circle-perturbed");
        let g = m.metric(MetricKind::ExactPhi, 0.0);
        let s = slice_geometry(&g, x, &u, &FdOptions::default()).unwrap();
        for a in 0..4 {
            for b in 0..4 {
                for k in 0..3 {
                    prop_assert!((s.omega[a][b][k] + s.omega[b][a][k]).abs() < 1e-9);
                    for l in 0..3 {
                        prop_assert!((s.curvature[a][b][k][l] + s.curvature[b][a][k][l]).abs() < 1e-6);
                        prop_assert!((s.curvature[a][b][k][l] + s.curvature[a][b][l][k]).abs() < 1e-6);
                    }
                }
            }
        }
        let gm = g.metric(&ChartPoint::new(ChartId::Collar, Vec4::new(x, u[0], u[1], u[2]))).unwrap();
        prop_assert!((s.frame.transpose() * gm * s.frame - Mat4::identity()).abs().max() < 1e-9);
    }

    #[test]
    fn linear_fit_recovers_lines(c0 in -5.0f64..5.0, c1 in -5.0f64..5.0) {
        let eps = [0.2, 0.1, 0.05, 0.025];
        let v: Vec<f64> = eps.iter().map(|e| c0 + c1 * e).collect();
        let f = fit_linear(&eps, &v).unwrap();
        prop_assert!((f.intercept - c0).abs() < 1e-10 && (f.slope - c1).abs() < 1e-9);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(6))]

    /// The trace formula for L₂ against L₂ = (7p₂ − p₁²)/45.
    #[test]
    fn l2_trace_formula(v in prop::collection::vec(-1.0f64..1.0, 64)) {
        let omega = random_matrix(8, 8, &v, 2);
        let a = l2_form(&omega).top();
        let b = hirzebruch_l2(&pontryagin_1(&omega), &pontryagin_2(&omega)).top();
        prop_assert!((a - b).abs() <= 1e-12 * (1.0 + b.abs()), "{} vs {}", a, b);
    }

    /// The θ-linear part of L₂(Ω + θ) on a 7-dimensional coframe.
    #[test]
    fn l2_linear_part_is_the_derivative(v in prop::collection::vec(-1.0f64..1.0, 64), w in prop::collection::vec(-1.0f64..1.0, 16)) {
        let omega = random_matrix(8, 7, &v, 2);
        let theta = random_matrix(8, 7, &w, 1);
        let a = l2_linear_part(&theta, &omega).top();
        let b = l2_form(&omega.add(&theta)).degree_part(7).top();
        prop_assert!((a - b).abs() <= 1e-12 * (1.0 + b.abs()), "{} vs {}", a, b);
    }
}
