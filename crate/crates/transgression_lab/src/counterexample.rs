//! Frame-level model of the L₂ transgression on a 7-dimensional boundary
//! with dim N = 4 and dim F = 3.
//!
//! Only the structure of θ = ω₁ − ω₀ and of the interpolation curvature
//! Ω_t matters, so both are assembled directly as matrices of forms on the
//! coframe (dy¹..dy⁴, dz¹..dz³) with frame indices (0, base 1..4, fibre 5..7):
//!   θ_{0i} = dy^i,
//!   Ω_t(0, i) = t Σ_k dy^k ∧ ω_{ki},
//!   Ω_t(i, j) = ʰΩ_{ij} − t² dy^i ∧ dy^j,
//!   Ω_t(a, b) = ᵏΩ_{ab} + α_{ab}, with α ∈ dy ∧ dz,
//! plus ε times random forms in every entry.

use std::f64::consts::PI;

use curvature_engine::forms::{Form, FormMatrix};
use quadrature::Rule;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const DIM: usize = 7;
const FRAME: usize = 8;
const NB: usize = 4;

/// c in P(θ, Ω_t) = c [Σ θ_{0i} ∧ Ω_t(0, i)] ∧ [Σ Ω_t(a, b) ∧ Ω_t(a, b)] at ε = 0.
pub fn leading_constant() -> f64 {
    1.0 / (9.0 * (2.0 * PI).powi(4))
}

/// L₂(Ω/2π) = (2π)⁻⁴/360 [5 (tr Ω²)² − 14 tr Ω⁴].
pub fn l2_form(omega: &FormMatrix) -> Form {
    let o2 = omega.wedge(omega);
    let t2 = o2.trace();
    let t4 = o2.wedge(&o2).trace();
    (&t2.wedge(&t2).scale(5.0) - &t4.scale(14.0)).scale(1.0 / (360.0 * (2.0 * PI).powi(4)))
}

/// The part of L₂(Ω + sθ) linear in s, i.e. 4 P(θ, Ω, Ω, Ω):
/// (2π)⁻⁴/360 [20 tr Ω² ∧ tr θΩ − 56 tr θΩ³].
pub fn l2_linear_part(theta: &FormMatrix, omega: &FormMatrix) -> Form {
    let o2 = omega.wedge(omega);
    let t2 = o2.trace();
    let tw = theta.wedge(omega);
    let t1 = tw.trace();
    let t3 = tw.wedge(&o2).trace();
    (&t2.wedge(&t1).scale(20.0) - &t3.scale(56.0)).scale(1.0 / (360.0 * (2.0 * PI).powi(4)))
}

fn dy(i: usize) -> usize {
    i - 1
}

fn random_one_form(rng: &mut ChaCha8Rng, support: &[usize]) -> Form {
    let mut c = [0.0; DIM];
    for &k in support {
        c[k] = rng.gen_range(-1.0..1.0);
    }
    Form::one_form(&c)
}

fn random_two_form(rng: &mut ChaCha8Rng, allowed: impl Fn(usize, usize) -> bool) -> Form {
    let mut c = [[0.0; DIM]; DIM];
    for (a, row) in c.iter_mut().enumerate() {
        for (b, v) in row.iter_mut().enumerate().skip(a + 1) {
            if allowed(a, b) {
                *v = rng.gen_range(-1.0..1.0);
            }
        }
    }
    Form::two_form(DIM, |a, b| c[a][b])
}

/// Antisymmetric matrix from its upper triangle.
fn antisymmetric(upper: &[Vec<Form>]) -> FormMatrix {
    FormMatrix::from_fn(FRAME, |a, b| match a.cmp(&b) {
        std::cmp::Ordering::Less => upper[a][b].clone(),
        std::cmp::Ordering::Equal => Form::zero(DIM),
        std::cmp::Ordering::Greater => upper[b][a].scale(-1.0),
    })
}

/// Random data for the model: base connection and curvature, fibre
/// curvature, the mixed term α and the O(ε) noise.
#[derive(Debug, Clone)]
pub struct CounterexampleModel {
    omega_base: Vec<Vec<Form>>,
    curv_base: Vec<Vec<Form>>,
    curv_fibre: Vec<Vec<Form>>,
    alpha: Vec<Vec<Form>>,
    noise_theta: Vec<Vec<Form>>,
    noise_omega: Vec<Vec<Form>>,
}

impl CounterexampleModel {
    /// `mixed = false` drops α, which removes the non-decaying term.
    pub fn random(seed: u64, mixed: bool) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let ys: Vec<usize> = (1..=NB).map(dy).collect();
        let is_y = |k: usize| k < NB;
        let all: Vec<usize> = (0..DIM).collect();
        let zero = || vec![vec![Form::zero(DIM); FRAME]; FRAME];
        let mut omega_base = zero();
        let mut curv_base = zero();
        let mut curv_fibre = zero();
        let mut alpha = zero();
        let mut noise_theta = zero();
        let mut noise_omega = zero();
        for a in 0..FRAME {
            for b in a + 1..FRAME {
                let base_pair = (1..=NB).contains(&a) && (1..=NB).contains(&b);
                let fibre_pair = a > NB && b > NB;
                if base_pair {
                    omega_base[a][b] = random_one_form(&mut rng, &ys);
                    curv_base[a][b] = random_two_form(&mut rng, |p, q| is_y(p) && is_y(q));
                }
                if fibre_pair {
                    curv_fibre[a][b] = random_two_form(&mut rng, |p, q| !is_y(p) && !is_y(q));
                    if mixed {
                        alpha[a][b] = random_two_form(&mut rng, |p, q| is_y(p) && !is_y(q));
                    }
                }
                noise_theta[a][b] = random_one_form(&mut rng, &all);
                noise_omega[a][b] = random_two_form(&mut rng, |_, _| true);
            }
        }
        Self {
            omega_base,
            curv_base,
            curv_fibre,
            alpha,
            noise_theta,
            noise_omega,
        }
    }

    fn base_connection(&self, k: usize, i: usize) -> Form {
        match k.cmp(&i) {
            std::cmp::Ordering::Less => self.omega_base[k][i].clone(),
            std::cmp::Ordering::Equal => Form::zero(DIM),
            std::cmp::Ordering::Greater => self.omega_base[i][k].scale(-1.0),
        }
    }

    pub fn theta(&self, eps: f64) -> FormMatrix {
        let mut upper = vec![vec![Form::zero(DIM); FRAME]; FRAME];
        for (a, row) in upper.iter_mut().enumerate() {
            for (b, entry) in row.iter_mut().enumerate().skip(a + 1) {
                let mut f = self.noise_theta[a][b].scale(eps);
                if a == 0 && b <= NB {
                    f += &Form::basis(DIM, &[dy(b)]);
                }
                *entry = f;
            }
        }
        antisymmetric(&upper)
    }

    pub fn omega_t(&self, t: f64, eps: f64) -> FormMatrix {
        let mut upper = vec![vec![Form::zero(DIM); FRAME]; FRAME];
        for (a, row) in upper.iter_mut().enumerate() {
            for (b, entry) in row.iter_mut().enumerate().skip(a + 1) {
                let mut f = self.noise_omega[a][b].scale(eps);
                if a == 0 && b <= NB {
                    for k in 1..=NB {
                        f += &Form::basis(DIM, &[dy(k)]).wedge(&self.base_connection(k, b)).scale(t);
                    }
                } else if a >= 1 && b <= NB {
                    f += &self.curv_base[a][b];
                    f += &Form::basis(DIM, &[dy(a), dy(b)]).scale(-t * t);
                } else if a > NB {
                    f += &self.curv_fibre[a][b];
                    f += &self.alpha[a][b];
                }
                *entry = f;
            }
        }
        antisymmetric(&upper)
    }

    /// Coefficient of dy¹∧…∧dy⁴∧dz¹∧dz²∧dz³ in ∫₀¹ 4P(θ, Ω_t) dt.
    pub fn density(&self, eps: f64, t_nodes: usize) -> f64 {
        let rule = Rule::gauss(t_nodes, 0.0, 1.0);
        let theta = self.theta(eps);
        rule.nodes
            .iter()
            .zip(&rule.weights)
            .map(|(&t, &w)| w * l2_linear_part(&theta, &self.omega_t(t, eps)).top())
            .sum()
    }

    /// The same coefficient for c [Σ θ_{0i} ∧ Ω_t(0, i)] ∧ [Σ Ω_t(a, b) ∧ Ω_t(a, b)] at ε = 0.
    pub fn leading_density(&self, t_nodes: usize) -> f64 {
        let rule = Rule::gauss(t_nodes, 0.0, 1.0);
        let theta = self.theta(0.0);
        let mut total = 0.0;
        for (&t, &w) in rule.nodes.iter().zip(&rule.weights) {
            let om = self.omega_t(t, 0.0);
            let mut horizontal = Form::zero(DIM);
            for i in 1..=NB {
                horizontal += &theta.get(0, i).wedge(om.get(0, i));
            }
            let mut vertical = Form::zero(DIM);
            for a in NB + 1..FRAME {
                for b in NB + 1..FRAME {
                    vertical += &om.get(a, b).wedge(om.get(a, b));
                }
            }
            total += w * leading_constant() * horizontal.wedge(&vertical).top();
        }
        total
    }
}

/// Density values along a halving sequence of ε, with successive ratios.
#[derive(Debug, Clone, PartialEq)]
pub struct CounterexampleReport {
    pub values: Vec<(f64, f64)>,
    pub leading: f64,
    /// value(ε_{k+1}) / value(ε_k); an O(ε) integrand would give ratios near ε_{k+1}/ε_k.
    pub ratios: Vec<f64>,
}

pub fn l2_counterexample(seed: u64, eps_list: &[f64]) -> CounterexampleReport {
    let model = CounterexampleModel::random(seed, true);
    let values: Vec<(f64, f64)> = eps_list.iter().map(|&e| (e, model.density(e, 6))).collect();
    let ratios = values.windows(2).map(|w| w[1].1 / w[0].1).collect();
    CounterexampleReport {
        values,
        leading: model.leading_density(6),
        ratios,
    }
}
