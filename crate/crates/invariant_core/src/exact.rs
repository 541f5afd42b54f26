//! Exact reals of the form q₀ + Σ qᵢ·aᵢ, with rational coefficients and a
//! fixed set of irrational atoms.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use astro_float::BigFloat;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use crate::angle::AnglePair;
use crate::hp;

/// Irrational building blocks. Two equal atoms always denote the same real,
/// so coefficients on equal atoms cancel exactly.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Atom {
    Sqrt3,
    /// −cot(θ₁/2)·cot(θ₂/2) for a pair whose defect has no closed form in the table.
    Defect(AnglePair),
}

impl Atom {
    pub fn eval(&self) -> BigFloat {
        match self {
            Atom::Sqrt3 => hp::sqrt3(),
            Atom::Defect(pair) => pair.defect_hp(),
        }
    }
}

impl fmt::Display for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Atom::Sqrt3 => write!(f, "√3"),
            Atom::Defect(p) => write!(f, "def{}", p),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ExactReal {
    rational: BigRational,
    terms: BTreeMap<Atom, BigRational>,
}

impl ExactReal {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn from_rational(q: BigRational) -> Self {
        Self {
            rational: q,
            terms: BTreeMap::new(),
        }
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_rational(BigRational::from_integer(n.into()))
    }

    pub fn atom(coeff: BigRational, atom: Atom) -> Self {
        let mut out = Self::zero();
        out.push_term(atom, coeff);
        out
    }

    fn push_term(&mut self, atom: Atom, coeff: BigRational) {
        if coeff.is_zero() {
            return;
        }
        let slot = self.terms.entry(atom.clone()).or_insert_with(BigRational::zero);
        *slot += coeff;
        if slot.is_zero() {
            self.terms.remove(&atom);
        }
    }

    pub fn rational_part(&self) -> &BigRational {
        &self.rational
    }

    pub fn irrational_terms(&self) -> impl Iterator<Item = (&Atom, &BigRational)> {
        self.terms.iter()
    }

    pub fn is_rational(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        self.is_rational().then_some(&self.rational)
    }

    pub fn is_zero(&self) -> bool {
        self.is_rational() && self.rational.is_zero()
    }

    pub fn scale(&self, q: &BigRational) -> Self {
        if q.is_zero() {
            return Self::zero();
        }
        Self {
            rational: &self.rational * q,
            terms: self.terms.iter().map(|(a, c)| (a.clone(), c * q)).collect(),
        }
    }

    /// High-precision evaluation.
    pub fn eval(&self) -> BigFloat {
        let mut acc = hp::from_rational(&self.rational);
        for (atom, c) in &self.terms {
            let t = atom.eval().mul(&hp::from_rational(c), hp::PREC, hp::RM);
            acc = acc.add(&t, hp::PREC, hp::RM);
        }
        acc
    }

    pub fn to_f64(&self) -> f64 {
        hp::to_f64(&self.eval())
    }

    /// Sign of the value: exact when rational, otherwise read off the
    /// high-precision value. `None` when the value is irrational but
    /// numerically indistinguishable from zero.
    pub fn signum(&self) -> Option<i8> {
        if let Some(q) = self.as_rational() {
            return Some(if q.is_zero() {
                0
            } else if q.is_positive() {
                1
            } else {
                -1
            });
        }
        let v = self.eval();
        if hp::is_negligible(&v) {
            None
        } else if hp::is_negative(&v) {
            Some(-1)
        } else {
            Some(1)
        }
    }
}

impl From<BigRational> for ExactReal {
    fn from(q: BigRational) -> Self {
        Self::from_rational(q)
    }
}

impl Add for &ExactReal {
    type Output = ExactReal;
    fn add(self, rhs: &ExactReal) -> ExactReal {
        let mut out = self.clone();
        out.rational += &rhs.rational;
        for (a, c) in &rhs.terms {
            out.push_term(a.clone(), c.clone());
        }
        out
    }
}

impl Add for ExactReal {
    type Output = ExactReal;
    fn add(self, rhs: ExactReal) -> ExactReal {
        &self + &rhs
    }
}

impl Neg for &ExactReal {
    type Output = ExactReal;
    fn neg(self) -> ExactReal {
        ExactReal {
            rational: -&self.rational,
            terms: self.terms.iter().map(|(a, c)| (a.clone(), -c)).collect(),
        }
    }
}

impl Neg for ExactReal {
    type Output = ExactReal;
    fn neg(self) -> ExactReal {
        -&self
    }
}

impl Sub for &ExactReal {
    type Output = ExactReal;
    fn sub(self, rhs: &ExactReal) -> ExactReal {
        self + &(-rhs)
    }
}

impl Sub for ExactReal {
    type Output = ExactReal;
    fn sub(self, rhs: ExactReal) -> ExactReal {
        &self - &rhs
    }
}

impl Mul<&BigRational> for &ExactReal {
    type Output = ExactReal;
    fn mul(self, rhs: &BigRational) -> ExactReal {
        self.scale(rhs)
    }
}

impl fmt::Display for ExactReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "{}", self.rational);
        }
        let mut first = true;
        if !self.rational.is_zero() {
            write!(f, "{}", self.rational)?;
            first = false;
        }
        for (a, c) in &self.terms {
            if c.is_negative() {
                write!(f, "{}", if first { "-" } else { " - " })?;
            } else if !first {
                write!(f, " + ")?;
            }
            let m = c.abs();
            if m.is_integer() && m.numer() == &1.into() {
                write!(f, "{}", a)?;
            } else {
                write!(f, "({})·{}", m, a)?;
            }
            first = false;
        }
        Ok(())
    }
}
