use std::f64::consts::PI;

use curvature_engine::forms::{euler_form, pontryagin_1};
use curvature_engine::*;
use model_geometry::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn opts() -> FdOptions {
    FdOptions::default()
}

/// Random base points of a multi-Taub-NUT, kept off the monopoles.
fn sample_points(m: &MultiTaubNut, n: usize, seed: u64) -> Vec<ChartPoint> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::new();
    while out.len() < n {
        let x = Vec3::new(
            rng.gen_range(-3.0..3.0),
            rng.gen_range(-3.0..3.0),
            rng.gen_range(-3.0..3.0),
        );
        if m.config().nearest(&x).1 < 1e-3 {
            continue;
        }
        out.push(m.chart_point(&x, rng.gen_range(0.0..2.0 * PI)).unwrap());
    }
    out
}

#[test]
fn flat_space_has_no_curvature() {
    let flat = ReferenceMetric::FlatR4;
    let p = flat.point(Vec4::new(0.3, -0.2, 0.1, 0.5));
    let gamma = christoffel(&flat, &p, &opts()).unwrap();
    assert!(gamma.max_abs() < 1e-12);
    let b = riemann(&flat, &p, &opts()).unwrap();
    assert!(b.riemann_norm() < 1e-10);
    assert!(b.scalar.abs() < 1e-10);
    let (wp, wm) = weyl_duality_defect(&flat, &p, &opts()).unwrap();
    assert!(wp < 1e-10 && wm < 1e-10);
    assert!(euler_density(&flat, &p, &opts()).unwrap().abs() < 1e-10);
    assert!(L_density(&flat, &p, &opts()).unwrap().abs() < 1e-10);
}

#[test]
fn round_sphere_factor_christoffel() {
    let m = ReferenceMetric::S2xS2 { r1: 1.0, r2: 1.0 };
    for phi in [0.3, 0.9, 1.4, 2.2] {
        let p = m.point(Vec4::new(phi, 1.0, 1.1, 0.4));
        let g = christoffel(&m, &p, &opts()).unwrap();
        assert!((g.get(0, 1, 1) + phi.sin() * phi.cos()).abs() < 1e-7);
        assert!((g.get(1, 0, 1) - phi.cos() / phi.sin()).abs() < 1e-7);
    }
}

/// ∂_a g for k = 1 in the string-down gauge from closed-form ∂V and ∂ω.
fn analytic_dg(p: Vec3, x: Vec3) -> [Mat4; 4] {
    let d = x - p;
    let r = d.norm();
    let v = 1.0 + 0.5 / r;
    let q = r * (r + d.z);
    let c = -1.0 / (2.0 * q);
    let w = Vec3::new(-d.y * c, d.x * c, 0.0);
    let mut out = [Mat4::zeros(); 4];
    for a in 0..3 {
        let dv = -0.5 * d[a] / (r * r * r);
        let dq = d[a] * (r + d.z) / r + d[a] + if a == 2 { r } else { 0.0 };
        let dc = 0.5 * dq / (q * q);
        let mut dw = Vec3::new(-d.y * dc, d.x * dc, 0.0);
        if a == 0 {
            dw.y += c;
        }
        if a == 1 {
            dw.x -= c;
        }
        let mut m = Mat4::zeros();
        for i in 0..3 {
            for j in 0..3 {
                let delta = if i == j { dv } else { 0.0 };
                m[(i, j)] = delta + (dw[i] * w[j] + w[i] * dw[j]) / v - w[i] * w[j] * dv / (v * v);
            }
            m[(i, 3)] = dw[i] / v - w[i] * dv / (v * v);
            m[(3, i)] = m[(i, 3)];
        }
        m[(3, 3)] = -dv / (v * v);
        out[a] = m;
    }
    out
}

#[test]
fn taub_nut_christoffel_matches_analytic_gradient() {
    let m = MultiTaubNut::with_default_layout(1);
    let p = m.config().points()[0];
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..20 {
        // Below the monopole's string-down gauge is singular, so stay above.
        let x = p + Vec3::new(
            rng.gen_range(-2.0..2.0),
            rng.gen_range(-2.0..2.0),
            rng.gen_range(0.3..2.0),
        );
        let pt = ChartPoint::new(ChartId::GibbonsHawking(Gauge::all_down()), Vec4::new(x.x, x.y, x.z, 0.4));
        let fd = christoffel(&m, &pt, &opts()).unwrap();
        let g = m.metric(&pt).unwrap();
        let ginv = g.try_inverse().unwrap();
        let dg = analytic_dg(p, x);
        for al in 0..4 {
            for be in 0..4 {
                for mu in 0..4 {
                    let mut exact = 0.0;
                    for nu in 0..4 {
                        exact += 0.5
                            * ginv[(al, nu)]
                            * (dg_at(&dg, be)[(mu, nu)] + dg_at(&dg, mu)[(nu, be)] - dg_at(&dg, nu)[(be, mu)]);
                    }
                    assert!(
                        (fd.get(al, be, mu) - exact).abs() < 1e-6,
                        "Γ^{}_{}{} at {:?}: {} vs {}",
                        al,
                        be,
                        mu,
                        x,
                        fd.get(al, be, mu),
                        exact
                    );
                }
            }
        }
    }
}

fn dg_at(dg: &[Mat4; 4], a: usize) -> Mat4 {
    // Nothing depends on θ.
    if a == 3 {
        Mat4::zeros()
    } else {
        dg[a]
    }
}

#[test]
fn round_s4_is_constant_curvature() {
    let s4 = ReferenceMetric::RoundS4 { radius: 1.0 };
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for _ in 0..20 {
        let c = Vec4::new(
            rng.gen_range(0.3..2.8),
            rng.gen_range(0.3..2.8),
            rng.gen_range(0.3..2.8),
            rng.gen_range(0.0..6.0),
        );
        let b = riemann(&s4, &s4.point(c), &opts()).unwrap();
        assert!((b.scalar - 12.0).abs() < 1e-5, "{}", b.scalar);
        assert!(b.weyl_plus.norm() < 1e-5 && b.weyl_minus.norm() < 1e-5);
        assert!(b.traceless_ricci.norm() < 1e-5);
        let f = CharacteristicForms::from_bundle(&b).unwrap();
        assert!(f.l_density.abs() < 1e-6);
        // 3/4π² integrates to 2 over volume 8π²/3.
        assert!((f.euler_density - 3.0 / (4.0 * PI * PI)).abs() < 1e-6);
    }
}

#[test]
fn scalar_curvature_of_catalog() {
    for m in ReferenceMetric::catalog() {
        let p = m.point(Vec4::new(1.1, 0.8, 1.3, 0.6));
        let b = riemann(&m, &p, &opts()).unwrap();
        assert!((b.scalar - m.scalar_curvature()).abs() < 1e-4, "{}", m.name());
    }
}

#[test]
fn r2_times_s2_has_vanishing_pfaffian() {
    let m = ReferenceMetric::R2xS2 { radius: 1.0 };
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    for _ in 0..20 {
        let c = Vec4::new(
            rng.gen_range(-1.0..1.0),
            rng.gen_range(-1.0..1.0),
            rng.gen_range(0.2..2.9),
            rng.gen_range(0.0..6.0),
        );
        let f = characteristic_forms(&m, &m.point(c), &opts()).unwrap();
        assert!(f.euler_pfaffian.abs() < 1e-8);
        assert!(f.euler_density.abs() < 1e-8);
    }
}

#[test]
fn product_of_spheres_routes_agree() {
    // Unequal radii make the traceless Ricci part nonzero.
    let m = ReferenceMetric::S2xS2 { r1: 1.0, r2: 2.0 };
    let f = characteristic_forms(&m, &m.point(Vec4::new(1.0, 0.2, 2.0, 0.3)), &opts()).unwrap();
    // χ = 4 over volume 4π·16π.
    assert!((f.euler_density - 4.0 / (64.0 * PI * PI)).abs() < 1e-7);
    assert!((f.euler_pfaffian - f.euler_density).abs() < 1e-9);
    assert!(f.sd_asd_densities.z_sq > 0.1);
    assert!(f.l_density.abs() < 1e-8);
}

#[test]
fn taub_nut_is_ricci_flat() {
    for (k, seed) in [(1usize, 11u64), (2, 12)] {
        let m = MultiTaubNut::with_default_layout(k);
        for p in sample_points(&m, 100, seed) {
            let b = riemann(&m, &p, &opts()).unwrap();
            assert!(b.ricci_norm() < 1e-4, "k={} {:?}: {}", k, p, b.ricci_norm());
        }
    }
}

#[test]
fn taub_nut_is_half_conformally_flat() {
    let m = MultiTaubNut::with_default_layout(1);
    let mut plus_vanishes = 0;
    for p in sample_points(&m, 50, 21) {
        let (wp, wm) = weyl_duality_defect(&m, &p, &opts()).unwrap();
        assert!(wp.min(wm) < 1e-4 * wp.max(wm), "{:?}: {} {}", p, wp, wm);
        if wp < wm {
            plus_vanishes += 1;
        }
    }
    // The vanishing side is the one carrying the Kähler forms.
    assert_eq!(plus_vanishes, 50);
}

#[test]
fn kahler_forms_are_self_dual_where_w_plus_vanishes() {
    let m = MultiTaubNut::with_default_layout(2);
    let basis = curvature_engine::riemann::two_form_basis();
    for p in sample_points(&m, 10, 31) {
        let b = riemann(&m, &p, &opts()).unwrap();
        let g = m.metric(&p).unwrap();
        let e = &b.frame;
        for j in m.hyperkahler_triple(&p).unwrap() {
            // ω(X, Y) = g(JX, Y) on the frame.
            let w = e.transpose() * (g * j).transpose() * e;
            let asd: f64 = (3..6)
                .map(|i| {
                    let c: f64 = (0..4)
                        .flat_map(|a| (0..4).map(move |c| (a, c)))
                        .map(|(a, c)| 0.5 * basis[i][a][c] * w[(a, c)])
                        .sum();
                    c * c
                })
                .sum();
            assert!(asd.sqrt() < 1e-8 * w.norm(), "{}", asd.sqrt());
        }
        assert!(b.weyl_plus.norm() < 1e-4 * b.weyl_minus.norm());
    }
}

#[test]
fn taub_nut_densities_have_definite_sign() {
    let m = MultiTaubNut::with_default_layout(1);
    for p in sample_points(&m, 20, 41) {
        let f = characteristic_forms(&m, &p, &opts()).unwrap();
        // Ricci-flat and W⁺ = 0: e = |W⁻|²/8π² and L = −|W⁻|²/12π².
        assert!(f.euler_density > 0.0);
        assert!(f.l_density < 0.0);
        assert!((f.l_density + 2.0 / 3.0 * f.euler_density).abs() < 1e-4 * f.euler_density);
    }
}

#[test]
fn pontryagin_and_pfaffian_forms_on_taub_nut() {
    let m = MultiTaubNut::with_default_layout(2);
    for p in sample_points(&m, 5, 51) {
        let b = riemann(&m, &p, &opts()).unwrap();
        let r = &b.frame_riemann;
        let omega = FormMatrix::curvature(4, |a, c, d, e| r[a][c][d][e]);
        let n = b.norms();
        let p1 = pontryagin_1(&omega).top();
        let e = euler_form(&omega).top();
        assert!((p1 - (n.w_plus_sq - n.w_minus_sq) / (4.0 * PI * PI)).abs() < 1e-6 * n.w_minus_sq);
        assert!((e - n.w_minus_sq / (8.0 * PI * PI)).abs() < 1e-6 * n.w_minus_sq);
    }
}

#[test]
fn singular_metric_is_rejected() {
    struct Degenerate;
    impl MetricField for Degenerate {
        fn name(&self) -> String {
            "degenerate".into()
        }
        fn metric(&self, _p: &ChartPoint) -> Result<Mat4, GeometryError> {
            Ok(Mat4::from_diagonal(&Vec4::new(1.0, 1.0, 1.0, 1e-12)))
        }
    }
    let p = ChartPoint::new(ChartId::Coordinates, Vec4::zeros());
    assert!(matches!(
        riemann(&Degenerate, &p, &opts()),
        Err(CurvatureError::SingularMetric { .. })
    ));
}

#[test]
fn route_mismatch_is_reported() {
    // A tensor without the Bianchi symmetry breaks the norms route.
    let m = ReferenceMetric::RoundS4 { radius: 1.0 };
    let mut b = riemann(&m, &m.point(Vec4::new(1.0, 1.0, 1.0, 1.0)), &opts()).unwrap();
    b.frame_riemann[0][1][2][3] += 0.5;
    b.frame_riemann[1][0][2][3] -= 0.5;
    b.frame_riemann[0][1][3][2] -= 0.5;
    b.frame_riemann[1][0][3][2] += 0.5;
    assert!(matches!(
        CharacteristicForms::from_bundle(&b),
        Err(CurvatureError::RouteMismatch { .. })
    ));
}

#[test]
fn richardson_option_improves_sphere() {
    let s4 = ReferenceMetric::RoundS4 { radius: 1.0 };
    let p = s4.point(Vec4::new(1.0, 0.8, 1.2, 0.0));
    let coarse = FdOptions::with_fraction(1e-2);
    let rich = FdOptions {
        richardson: true,
        ..coarse
    };
    let a = riemann(&s4, &p, &coarse).unwrap().scalar;
    let b = riemann(&s4, &p, &rich).unwrap().scalar;
    assert!((b - 12.0).abs() < 0.1 * (a - 12.0).abs());
}
