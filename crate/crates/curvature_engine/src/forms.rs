//! Exterior algebra on an orthonormal coframe, for assembling
//! characteristic forms from curvature 2-forms in any dimension up to 8.

use std::f64::consts::PI;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

pub const MAX_DIM: usize = 8;

/// A (possibly inhomogeneous) form. Coefficient `i` belongs to the basis
/// element e^{a₁}∧…∧e^{a_p} whose indices are the set bits of `i`, in
/// increasing order.
#[derive(Debug, Clone, PartialEq)]
pub struct Form {
    dim: usize,
    coeffs: Vec<f64>,
}

/// Sign of e^A ∧ e^B relative to e^{A∪B}; zero if A and B overlap.
fn wedge_sign(a: usize, b: usize) -> f64 {
    if a & b != 0 {
        return 0.0;
    }
    let mut swaps = 0;
    let mut rest = b;
    while rest != 0 {
        let j = rest.trailing_zeros();
        swaps += (a >> (j + 1)).count_ones();
        rest &= rest - 1;
    }
    if swaps % 2 == 0 {
        1.0
    } else {
        -1.0
    }
}

impl Form {
    pub fn zero(dim: usize) -> Self {
        assert!(dim <= MAX_DIM, "forms are limited to dimension {}", MAX_DIM);
        Self {
            dim,
            coeffs: vec![0.0; 1 << dim],
        }
    }

    pub fn constant(dim: usize, c: f64) -> Self {
        let mut f = Self::zero(dim);
        f.coeffs[0] = c;
        f
    }

    /// e^{i₁}∧…∧e^{i_p} for the given index sequence (any order).
    pub fn basis(dim: usize, indices: &[usize]) -> Self {
        let mut f = Self::constant(dim, 1.0);
        for &i in indices {
            f = f.wedge(&Self::one_form_axis(dim, i));
        }
        f
    }

    fn one_form_axis(dim: usize, i: usize) -> Self {
        assert!(i < dim);
        let mut f = Self::zero(dim);
        f.coeffs[1 << i] = 1.0;
        f
    }

    /// Σ cᵢ eⁱ.
    pub fn one_form(coeffs: &[f64]) -> Self {
        let mut f = Self::zero(coeffs.len());
        for (i, c) in coeffs.iter().enumerate() {
            f.coeffs[1 << i] = *c;
        }
        f
    }

    /// Σ_{a<b} c(a, b) e^a∧e^b.
    pub fn two_form(dim: usize, c: impl Fn(usize, usize) -> f64) -> Self {
        let mut f = Self::zero(dim);
        for a in 0..dim {
            for b in a + 1..dim {
                f.coeffs[1 << a | 1 << b] = c(a, b);
            }
        }
        f
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn coeff(&self, mask: usize) -> f64 {
        self.coeffs[mask]
    }

    /// Coefficient of e^{i₁}∧…∧e^{i_p} (indices in any order).
    pub fn component(&self, indices: &[usize]) -> f64 {
        let b = Self::basis(self.dim, indices);
        let mask = indices.iter().fold(0usize, |m, &i| m | 1 << i);
        if b.coeffs[mask] == 0.0 {
            return 0.0;
        }
        self.coeffs[mask] * b.coeffs[mask]
    }

    /// Coefficient of the volume form e⁰∧…∧e^{n−1}.
    pub fn top(&self) -> f64 {
        self.coeffs[(1 << self.dim) - 1]
    }

    /// The part of degree p.
    pub fn degree_part(&self, p: usize) -> Form {
        let mut f = Self::zero(self.dim);
        for (m, c) in self.coeffs.iter().enumerate() {
            if m.count_ones() as usize == p {
                f.coeffs[m] = *c;
            }
        }
        f
    }

    pub fn wedge(&self, other: &Form) -> Form {
        assert_eq!(self.dim, other.dim);
        let mut out = Self::zero(self.dim);
        for (a, ca) in self.coeffs.iter().enumerate() {
            if *ca == 0.0 {
                continue;
            }
            for (b, cb) in other.coeffs.iter().enumerate() {
                if *cb == 0.0 || a & b != 0 {
                    continue;
                }
                out.coeffs[a | b] += wedge_sign(a, b) * ca * cb;
            }
        }
        out
    }

    pub fn scale(&self, s: f64) -> Form {
        Form {
            dim: self.dim,
            coeffs: self.coeffs.iter().map(|c| c * s).collect(),
        }
    }

    pub fn max_abs(&self) -> f64 {
        self.coeffs.iter().fold(0.0, |m, c| m.max(c.abs()))
    }
}

impl Add for &Form {
    type Output = Form;
    fn add(self, rhs: &Form) -> Form {
        assert_eq!(self.dim, rhs.dim);
        Form {
            dim: self.dim,
            coeffs: self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a + b).collect(),
        }
    }
}

impl Sub for &Form {
    type Output = Form;
    fn sub(self, rhs: &Form) -> Form {
        self + &(-rhs)
    }
}

impl Neg for &Form {
    type Output = Form;
    fn neg(self) -> Form {
        self.scale(-1.0)
    }
}

impl AddAssign<&Form> for Form {
    fn add_assign(&mut self, rhs: &Form) {
        assert_eq!(self.dim, rhs.dim);
        for (a, b) in self.coeffs.iter_mut().zip(&rhs.coeffs) {
            *a += b;
        }
    }
}

impl Mul<f64> for &Form {
    type Output = Form;
    fn mul(self, s: f64) -> Form {
        self.scale(s)
    }
}

/// Square matrix whose entries are forms, e.g. connection 1-forms ω^a_b or
/// curvature 2-forms Ω^a_b.
#[derive(Debug, Clone, PartialEq)]
pub struct FormMatrix {
    n: usize,
    entries: Vec<Form>,
}

impl FormMatrix {
    pub fn zero(n: usize, dim: usize) -> Self {
        Self {
            n,
            entries: vec![Form::zero(dim); n * n],
        }
    }

    pub fn from_fn(n: usize, f: impl Fn(usize, usize) -> Form) -> Self {
        let mut entries = Vec::with_capacity(n * n);
        for a in 0..n {
            for b in 0..n {
                entries.push(f(a, b));
            }
        }
        Self { n, entries }
    }

    /// Ω^a_b = ½ R_{abcd} e^c∧e^d on an orthonormal frame.
    pub fn curvature(n: usize, r: impl Fn(usize, usize, usize, usize) -> f64) -> Self {
        Self::from_fn(n, |a, b| Form::two_form(n, |c, d| r(a, b, c, d)))
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn get(&self, a: usize, b: usize) -> &Form {
        &self.entries[a * self.n + b]
    }

    pub fn get_mut(&mut self, a: usize, b: usize) -> &mut Form {
        &mut self.entries[a * self.n + b]
    }

    /// Matrix product with entries multiplied by ∧.
    pub fn wedge(&self, other: &FormMatrix) -> FormMatrix {
        assert_eq!(self.n, other.n);
        let n = self.n;
        let dim = self.entries[0].dim();
        let mut out = FormMatrix::zero(n, dim);
        for a in 0..n {
            for b in 0..n {
                let mut acc = Form::zero(dim);
                for c in 0..n {
                    acc += &self.get(a, c).wedge(other.get(c, b));
                }
                *out.get_mut(a, b) = acc;
            }
        }
        out
    }

    pub fn add(&self, other: &FormMatrix) -> FormMatrix {
        FormMatrix::from_fn(self.n, |a, b| self.get(a, b) + other.get(a, b))
    }

    pub fn scale(&self, s: f64) -> FormMatrix {
        FormMatrix::from_fn(self.n, |a, b| self.get(a, b).scale(s))
    }

    pub fn trace(&self) -> Form {
        let dim = self.entries[0].dim();
        let mut t = Form::zero(dim);
        for a in 0..self.n {
            t += self.get(a, a);
        }
        t
    }

    /// Pfaffian of an antisymmetric matrix of even-degree forms, by
    /// expansion along the first row.
    pub fn pfaffian(&self) -> Form {
        let idx: Vec<usize> = (0..self.n).collect();
        pfaffian_rec(self, &idx)
    }
}

fn pfaffian_rec(m: &FormMatrix, idx: &[usize]) -> Form {
    let dim = m.entries[0].dim();
    if idx.is_empty() {
        return Form::constant(dim, 1.0);
    }
    if idx.len() % 2 == 1 {
        return Form::zero(dim);
    }
    let mut out = Form::zero(dim);
    let first = idx[0];
    for j in 1..idx.len() {
        let rest: Vec<usize> = idx[1..]
            .iter()
            .enumerate()
            .filter(|&(k, _)| k + 1 != j)
            .map(|(_, &v)| v)
            .collect();
        let sign = if j % 2 == 1 { 1.0 } else { -1.0 };
        let term = m.get(first, idx[j]).wedge(&pfaffian_rec(m, &rest));
        out += &term.scale(sign);
    }
    out
}

/// p₁ = −tr(Ω²)/8π².
pub fn pontryagin_1(omega: &FormMatrix) -> Form {
    omega.wedge(omega).trace().scale(-1.0 / (8.0 * PI * PI))
}

/// p₂ = [(tr Ω²)² − 2 tr Ω⁴]/128π⁴.
pub fn pontryagin_2(omega: &FormMatrix) -> Form {
    let o2 = omega.wedge(omega);
    let t2 = o2.trace();
    let t4 = o2.wedge(&o2).trace();
    (&t2.wedge(&t2) - &t4.scale(2.0)).scale(1.0 / (128.0 * PI.powi(4)))
}

/// Euler form Pf(Ω/2π) for an even-dimensional frame bundle.
pub fn euler_form(omega: &FormMatrix) -> Form {
    let m = omega.size() / 2;
    omega.pfaffian().scale(1.0 / (2.0 * PI).powi(m as i32))
}

/// L₁ = p₁/3.
pub fn hirzebruch_l1(p1: &Form) -> Form {
    p1.scale(1.0 / 3.0)
}

/// L₂ = (7p₂ − p₁²)/45.
pub fn hirzebruch_l2(p1: &Form, p2: &Form) -> Form {
    (&p2.scale(7.0) - &p1.wedge(p1)).scale(1.0 / 45.0)
}
