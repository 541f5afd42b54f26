//! High-precision reals backing the irrational parts of defect sums.

use astro_float::{BigFloat, Consts, Radix, RoundingMode};
use num_bigint::BigInt;
use num_rational::BigRational;

/// Working precision in bits (about 77 decimal digits, comfortably above 64).
pub const PREC: usize = 256;
pub const RM: RoundingMode = RoundingMode::ToEven;

/// Magnitude below which a high-precision value is treated as "numerically zero".
pub const ZERO_TOL_EXP: i32 = -50;

pub fn consts() -> Consts {
    Consts::new().expect("astro-float constant cache")
}

pub fn from_bigint(n: &BigInt) -> BigFloat {
    BigFloat::parse(&n.to_string(), Radix::Dec, PREC, RM, &mut consts())
}

pub fn from_rational(q: &BigRational) -> BigFloat {
    from_bigint(q.numer()).div(&from_bigint(q.denom()), PREC, RM)
}

pub fn from_f64(x: f64) -> BigFloat {
    BigFloat::from_f64(x, PREC)
}

pub fn zero() -> BigFloat {
    BigFloat::from_word(0, PREC)
}

pub fn sqrt3() -> BigFloat {
    BigFloat::from_word(3, PREC).sqrt(PREC, RM)
}

/// cot(q·π) for rational q.
pub fn cot_pi_fraction(q: &BigRational) -> BigFloat {
    let mut cc = consts();
    let x = cc.pi(PREC, RM).mul(&from_rational(q), PREC, RM);
    cot(&x, &mut cc)
}

/// cot(x) for x in radians.
pub fn cot_radians(x: f64) -> BigFloat {
    let mut cc = consts();
    cot(&from_f64(x), &mut cc)
}

fn cot(x: &BigFloat, cc: &mut Consts) -> BigFloat {
    let c = x.cos(PREC, RM, cc);
    let s = x.sin(PREC, RM, cc);
    c.div(&s, PREC, RM)
}

/// Decimal rendering with `digits` significant digits.
pub fn to_decimal(x: &BigFloat, digits: usize) -> String {
    if x.is_zero() {
        return "0".to_string();
    }
    let mut cc = consts();
    let mut y = x.clone();
    // Round to roughly the requested number of digits before formatting.
    let bits = ((digits as f64) * std::f64::consts::LOG2_10).ceil() as usize + 2;
    let _ = y.set_precision(bits.max(8), RM);
    y.format(Radix::Dec, RM, &mut cc).unwrap_or_else(|_| "NaN".to_string())
}

pub fn to_f64(x: &BigFloat) -> f64 {
    if x.is_zero() {
        return 0.0;
    }
    let mut cc = consts();
    let s = x
        .format(Radix::Dec, RM, &mut cc)
        .unwrap_or_else(|_| "NaN".to_string());
    s.parse::<f64>().unwrap_or(f64::NAN)
}

/// True when |x| < 10^ZERO_TOL_EXP.
pub fn is_negligible(x: &BigFloat) -> bool {
    if x.is_zero() {
        return true;
    }
    let tol = BigFloat::parse(
        &format!("1e{}", ZERO_TOL_EXP),
        Radix::Dec,
        PREC,
        RM,
        &mut consts(),
    );
    x.abs().cmp(&tol).map(|c| c < 0).unwrap_or(false)
}

pub fn is_negative(x: &BigFloat) -> bool {
    x.is_negative() && !x.is_zero()
}
