use cli_reporting::{Check, Report, Scalar};
use invariant_core::{ht_gap, rational, Atom, DualReal, ExactReal, SpaceRecipe};

#[test]
fn status_follows_checks() {
    let mut r = Report::new("demo", 3);
    r.real("x", 1.5, 1e-3);
    r.check(Check::within("close", 1.0005, 1.0, 1e-3));
    r.check(Check::below("small", 2e-5, 1e-4));
    assert!(r.passed());
    assert!(r.render().ends_with("status: PASS (2/2 checks passed)\n"));
    r.check(Check::exact("exact", Scalar::Exact(rational(1, 3)), Scalar::Exact(rational(2, 6))));
    r.check(Check::within("far", 1.1, 1.0, 1e-3));
    assert_eq!((r.failures(), r.exit_code()), (1, 1));
    let text = r.render();
    assert!(text.contains("FAIL  far") && text.contains("PASS  exact"), "{}", text);
    let j = r.to_json_value();
    assert_eq!(j["status"], "fail");
    assert_eq!(j["check.exact.computed"], "1/3");
    assert_eq!(j["check.far.pass"], false);
    assert_eq!(j["x.tolerance"], 1e-3);
    assert!(r.to_json().ends_with("}\n"));
}

#[test]
fn irrational_values_are_decimals_with_tolerance() {
    let d = DualReal::new(ExactReal::atom(rational(-1, 2), Atom::Sqrt3));
    let (v, tol) = Scalar::from_dual(&d);
    let Scalar::Decimal(s) = v else { panic!("{:?}", v) };
    assert!(s.starts_with("-8.66025403784438646763723170752936183471402626905190314027903489"), "{}", s);
    assert_eq!(s.parse::<f64>().unwrap(), -0.75f64.sqrt());
    assert!(tol > 0.0 && tol < 1e-59);
    let (v, tol) = Scalar::from_dual(&ht_gap(&SpaceRecipe::multi_taub_nut(2)).unwrap().ht_gap);
    assert!(matches!(v, Scalar::Exact(_)));
    assert_eq!(tol, 0.0);
}
