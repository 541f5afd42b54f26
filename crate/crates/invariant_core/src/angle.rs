//! Rotation angles at isolated fixed points and their signature defects.

use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::str::FromStr;

use astro_float::BigFloat;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::InvariantError;
use crate::exact::{Atom, ExactReal};
use crate::hp;

/// An angle either as an exact rational multiple of π or as raw radians.
#[derive(Debug, Clone)]
pub enum Angle {
    /// q·π
    PiFraction(BigRational),
    Radians(f64),
}

impl Angle {
    pub fn pi_fraction(num: i64, den: i64) -> Self {
        Angle::PiFraction(BigRational::new(num.into(), den.into()))
    }

    pub fn radians(&self) -> f64 {
        match self {
            Angle::PiFraction(q) => q.to_f64().unwrap_or(f64::NAN) * std::f64::consts::PI,
            Angle::Radians(x) => *x,
        }
    }

    /// Strictly inside (0, 2π).
    fn in_open_range(&self) -> bool {
        match self {
            Angle::PiFraction(q) => q.is_positive() && q < &BigRational::from_integer(2.into()),
            Angle::Radians(x) => x.is_finite() && *x > 0.0 && *x < std::f64::consts::TAU,
        }
    }

    /// cot(θ/2) in closed form when θ/2 is one of the tabulated multiples of π.
    pub fn half_cot_exact(&self) -> Option<SurdCot> {
        let Angle::PiFraction(q) = self else {
            return None;
        };
        let h = q / BigRational::from_integer(2.into());
        let d = h.denom().clone();
        let n = h.numer().clone();
        let r = |a: i64, b: i64| BigRational::new(a.into(), b.into());
        let table: Option<(BigRational, bool)> = match (n.to_string().as_str(), d.to_string().as_str()) {
            ("1", "6") => Some((r(1, 1), true)),
            ("1", "4") => Some((r(1, 1), false)),
            ("1", "3") => Some((r(1, 3), true)),
            ("1", "2") => Some((r(0, 1), false)),
            ("2", "3") => Some((r(-1, 3), true)),
            ("3", "4") => Some((r(-1, 1), false)),
            ("5", "6") => Some((r(-1, 1), true)),
            _ => None,
        };
        table.map(|(coeff, sqrt3)| SurdCot { coeff, sqrt3 })
    }

    pub fn half_cot_hp(&self) -> BigFloat {
        match self {
            Angle::PiFraction(q) => hp::cot_pi_fraction(&(q / BigRational::from_integer(2.into()))),
            Angle::Radians(x) => hp::cot_radians(x / 2.0),
        }
    }

    fn kind_rank(&self) -> u8 {
        match self {
            Angle::PiFraction(_) => 0,
            Angle::Radians(_) => 1,
        }
    }
}

impl PartialEq for Angle {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for Angle {}

impl PartialOrd for Angle {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Angle {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Angle::PiFraction(a), Angle::PiFraction(b)) => a.cmp(b),
            (Angle::Radians(a), Angle::Radians(b)) => a.total_cmp(b),
            _ => self.kind_rank().cmp(&other.kind_rank()),
        }
    }
}

impl Hash for Angle {
    fn hash<H: Hasher>(&self, state: &mut H) {
        match self {
            Angle::PiFraction(q) => {
                0u8.hash(state);
                q.hash(state);
            }
            Angle::Radians(x) => {
                1u8.hash(state);
                x.to_bits().hash(state);
            }
        }
    }
}

impl fmt::Display for Angle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Angle::PiFraction(q) => write!(f, "{}π", q),
            Angle::Radians(x) => write!(f, "{}rad", x),
        }
    }
}

/// Parses "1/2" (π/2), "0.25" (π/4, exact decimal), "3" (3π) or "1.2rad".
impl FromStr for Angle {
    type Err = InvariantError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let t = s.trim();
        let bad = || InvariantError::AngleSyntax(s.to_string());
        if let Some(rad) = t.strip_suffix("rad") {
            let x: f64 = rad.trim().parse().map_err(|_| bad())?;
            return Ok(Angle::Radians(x));
        }
        if let Some((n, d)) = t.split_once('/') {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(bad());
            }
            return Ok(Angle::PiFraction(BigRational::new(n, d)));
        }
        parse_decimal(t).map(Angle::PiFraction).ok_or_else(bad)
    }
}

fn parse_decimal(t: &str) -> Option<BigRational> {
    let (neg, body) = match t.strip_prefix('-') {
        Some(b) => (true, b),
        None => (false, t),
    };
    let (int, frac) = body.split_once('.').unwrap_or((body, ""));
    if int.is_empty() && frac.is_empty() {
        return None;
    }
    if !int.chars().chain(frac.chars()).all(|c| c.is_ascii_digit()) {
        return None;
    }
    let digits: BigInt = format!("{}{}", if int.is_empty() { "0" } else { int }, frac)
        .parse()
        .ok()?;
    let den = num_traits::pow(BigInt::from(10), frac.len());
    let q = BigRational::new(digits, den);
    Some(if neg { -q } else { q })
}

/// coeff·√3^(sqrt3 as 0/1)
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SurdCot {
    pub coeff: BigRational,
    pub sqrt3: bool,
}

/// Rotation angles (θ₁, θ₂) at an isolated fixed point.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct AnglePair {
    pub theta1: Angle,
    pub theta2: Angle,
}

impl AnglePair {
    pub fn new(theta1: Angle, theta2: Angle) -> Result<Self, InvariantError> {
        for th in [&theta1, &theta2] {
            if !th.in_open_range() {
                return Err(InvariantError::DegenerateAngle(th.to_string()));
            }
        }
        Ok(Self { theta1, theta2 })
    }

    pub fn pi_fractions(a: (i64, i64), b: (i64, i64)) -> Result<Self, InvariantError> {
        Self::new(Angle::pi_fraction(a.0, a.1), Angle::pi_fraction(b.0, b.1))
    }

    /// Same pair with the angles in ascending order.
    pub fn canonical(&self) -> Self {
        if self.theta1 <= self.theta2 {
            self.clone()
        } else {
            Self {
                theta1: self.theta2.clone(),
                theta2: self.theta1.clone(),
            }
        }
    }

    /// −cot(θ₁/2)·cot(θ₂/2) at working precision.
    pub fn defect_hp(&self) -> BigFloat {
        complex_cot_product(self).0
    }
}

impl fmt::Display for AnglePair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.theta1, self.theta2)
    }
}

/// The fixed-point contribution to the G-signature formula.
#[derive(Debug, Clone)]
pub struct DefectValue {
    /// Angles whose half-angle cotangents multiply to the defect.
    pub exact_form: [Angle; 2],
    pub exact: ExactReal,
    pub value: BigFloat,
    /// Imaginary part of ∏(−i)cot(θⱼ/2); zero in dimension 4.
    pub imaginary: BigFloat,
}

/// def = (−i)²·cot(θ₁/2)·cot(θ₂/2) = −cot(θ₁/2)·cot(θ₂/2).
pub fn signature_defect(angles: &AnglePair) -> Result<DefectValue, InvariantError> {
    let pair = AnglePair::new(angles.theta1.clone(), angles.theta2.clone())?.canonical();
    let c1 = pair.theta1.half_cot_exact();
    let c2 = pair.theta2.half_cot_exact();
    let exact = match (&c1, &c2) {
        (Some(a), _) | (_, Some(a)) if a.coeff.is_zero() => ExactReal::zero(),
        (Some(a), Some(b)) => {
            let coeff = -(&a.coeff * &b.coeff);
            match (a.sqrt3, b.sqrt3) {
                (true, true) => ExactReal::from_rational(coeff * BigRational::from_integer(3.into())),
                (false, false) => ExactReal::from_rational(coeff),
                _ => ExactReal::atom(coeff, Atom::Sqrt3),
            }
        }
        _ => ExactReal::atom(BigRational::one(), Atom::Defect(pair.clone())),
    };
    let (re, imaginary) = complex_cot_product(&pair);
    let value = if exact.is_rational() { exact.eval() } else { re };
    Ok(DefectValue {
        exact_form: [pair.theta1, pair.theta2],
        exact,
        value,
        imaginary,
    })
}

/// ∏ⱼ (−i)·cot(θⱼ/2) as (re, im), multiplied out factor by factor.
fn complex_cot_product(pair: &AnglePair) -> (BigFloat, BigFloat) {
    let (p, rm) = (hp::PREC, hp::RM);
    let mut re = hp::from_rational(&BigRational::one());
    let mut im = hp::zero();
    for th in [&pair.theta1, &pair.theta2] {
        let c = th.half_cot_hp();
        // (re + i·im)·(−i·c) = im·c − i·re·c
        let nre = im.mul(&c, p, rm);
        let nim = re.mul(&c, p, rm).neg();
        re = nre;
        im = nim;
    }
    (re, im)
}
