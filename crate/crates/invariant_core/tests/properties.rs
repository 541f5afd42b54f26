use invariant_core::recipe::examples;
use invariant_core::*;
use proptest::prelude::*;

fn q(n: i64, d: i64) -> BigRational {
    rational(n, d)
}

/// Angles p/q·π strictly inside (0, 2π).
fn pi_angle() -> impl Strategy<Value = Angle> {
    (1i64..=24).prop_flat_map(|den| (1..2 * den).prop_map(move |num| Angle::pi_fraction(num, den)))
}

fn radian_angle() -> impl Strategy<Value = Angle> {
    (1e-3f64..(std::f64::consts::TAU - 1e-3)).prop_map(Angle::Radians)
}

fn any_angle() -> impl Strategy<Value = Angle> {
    prop_oneof![pi_angle(), radian_angle()]
}

proptest! {
    #[test]
    fn defect_symmetry(a in any_angle(), b in any_angle()) {
        let d1 = signature_defect(&AnglePair::new(a.clone(), b.clone()).unwrap()).unwrap();
        let d2 = signature_defect(&AnglePair::new(b, a).unwrap()).unwrap();
        prop_assert_eq!(&d1.exact, &d2.exact);
        prop_assert_eq!(d1.value.cmp(&d2.value), Some(0));
    }

    #[test]
    fn defect_reality(a in any_angle(), b in any_angle()) {
        let d = signature_defect(&AnglePair::new(a, b).unwrap()).unwrap();
        prop_assert!(hp::is_negligible(&d.imaginary));
    }

    #[test]
    fn exact_defect_agrees_with_float(a in pi_angle(), b in pi_angle()) {
        let pair = AnglePair::new(a, b).unwrap();
        let d = signature_defect(&pair).unwrap();
        let direct = pair.defect_hp();
        let diff = d.exact.eval().sub(&direct, hp::PREC, hp::RM);
        let scale = 1.0 + hp::to_f64(&direct).abs();
        prop_assert!(hp::to_f64(&diff).abs() < 1e-60 * scale);
    }

    #[test]
    fn eta_identity(e in -100i64..=100) {
        let b = CircleBundleSpec { euler_number: e };
        let lhs = adiabatic_eta_half(&b) + q(i64::from(epsilon_of(&b)), 1);
        prop_assert_eq!(lhs, q(e, 3));
    }

    #[test]
    fn quotient_averaging(k in 1u32..=20) {
        let chi_q = euler_char(&examples::m1(k)).unwrap();
        let chi_0 = euler_char(&SpaceRecipe::multi_taub_nut(k)).unwrap();
        prop_assert_eq!(chi_q * q(i64::from(k), 1), chi_0);
    }

    #[test]
    fn surgery_neutrality(k in 1u32..=8, n in 0u32..=12, l in 0u32..=5) {
        let x = examples::x1(k, l);
        prop_assert_eq!(signature(&x.clone().surgery(n)).unwrap(), signature(&x).unwrap());
    }

    #[test]
    fn exact_reports_are_reproducible(k in 1u32..=8, l in 0u32..=10, surg in any::<bool>()) {
        let r = if surg { examples::x2(k, l) } else { examples::x1(k, l) };
        let a = ht_gap(&r).unwrap();
        let b = ht_gap(&r).unwrap();
        prop_assert!(a.is_exact());
        prop_assert_eq!(&a.ht_gap.exact, &b.ht_gap.exact);
        prop_assert_eq!(&a.corrected_tau.exact, &b.corrected_tau.exact);
        prop_assert_eq!(a.ht_gap.value.cmp(&b.ht_gap.value), Some(0));
        prop_assert_eq!(a.verdict, b.verdict);
    }

    #[test]
    fn verdict_matches_gap_sign(k in 1u32..=8, l in 0u32..=10) {
        let r = ht_gap(&examples::x2(k, l)).unwrap();
        let g = r.ht_gap.as_rational().unwrap().clone();
        let expected = if g < q(0, 1) {
            Verdict::ObstructionViolated
        } else if g == q(0, 1) {
            Verdict::Equality
        } else {
            Verdict::NoObstruction
        };
        prop_assert_eq!(r.verdict, expected);
    }
}

#[test]
fn monotone_blow_up_law() {
    for k in 1..=8 {
        for l in 0..10u32 {
            let a = ht_gap(&examples::x1(k, l)).unwrap();
            let b = ht_gap(&examples::x1(k, l + 1)).unwrap();
            let step = a.ht_gap.as_rational().unwrap() - b.ht_gap.as_rational().unwrap();
            assert_eq!(step, q(1, 2));
        }
    }
}
