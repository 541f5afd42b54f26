//! Boundary conditions on the perturbation A at x = 0⁺:
//! (i)  A(x²∂_x, ·) ≡ 0 and A(xY₁, xY₂) = O(x),
//! (ii) V₁·A(V₂, xY) − V₂·A(V₁, xY) − A([V₁, V₂], xY) = 0 at x = 0,
//! for vertical V and horizontal lifts Y of base vectors.

use model_geometry::{Mat4, Vec4};

use crate::model::CollarModel;

/// Where the conditions are evaluated in place of x = 0.
pub const BOUNDARY_X: f64 = 1e-6;
/// Residuals above this make the model inadmissible.
pub const ADMISSIBLE_TOL: f64 = 1e-6;
const FD_STEP: f64 = 1e-5;

#[derive(Debug, Clone, PartialEq)]
pub struct BoundaryReport {
    /// max |antisymmetrized fibre derivative| of condition (ii).
    pub residual_ii: f64,
    /// max |A(x²∂_x, ·)|.
    pub a_normal_max: f64,
    /// max |A(xY₁, xY₂)| at x = 0⁺.
    pub a_base_at_zero: f64,
    pub admissible: bool,
}

/// Sample points on W away from the fibre and base poles.
fn samples(model: &CollarModel) -> Vec<Vec4> {
    let angles: Vec<f64> = (0..6).map(|k| 0.35 + 0.4 * k as f64).collect();
    let periodic: Vec<f64> = (0..6).map(|k| 0.2 + 1.05 * k as f64).collect();
    let mut out = Vec::new();
    for &s in &angles {
        for &t in &periodic {
            for &r in &periodic {
                let c = if model.base_dim() == 1 {
                    Vec4::new(BOUNDARY_X, t, s, r)
                } else {
                    Vec4::new(BOUNDARY_X, s, t, r)
                };
                out.push(c);
            }
        }
    }
    out
}

/// N^a_j with η^a = dz^a + N^a_j dy^j, read off τ: τ_{aj} = τ_{ab}N^b_j.
fn fibre_shift(model: &CollarModel, c: &Vec4) -> Mat4 {
    let nb = model.base_dim();
    let tau = model.tau(c);
    let nf = 3 - nb;
    let mut n = Mat4::zeros();
    let fib: Vec<usize> = (1 + nb..4).collect();
    let base: Vec<usize> = (1..=nb).collect();
    let tff = block_inverse(&tau, &fib);
    for &j in &base {
        for (ia, &a) in fib.iter().enumerate() {
            n[(a, j)] = (0..nf).map(|ib| tff[ia][ib] * tau[(fib[ib], j)]).sum();
        }
    }
    n
}

/// Inverse of the (idx × idx) block of m, for blocks of size 1 or 2.
fn block_inverse(m: &Mat4, idx: &[usize]) -> Vec<Vec<f64>> {
    match idx {
        [a] => vec![vec![1.0 / m[(*a, *a)]]],
        [a, b] => {
            let det = m[(*a, *a)] * m[(*b, *b)] - m[(*a, *b)] * m[(*b, *a)];
            vec![
                vec![m[(*b, *b)] / det, -m[(*a, *b)] / det],
                vec![-m[(*b, *a)] / det, m[(*a, *a)] / det],
            ]
        }
        _ => unreachable!("fibre dimension is 1 or 2"),
    }
}

/// β_j(∂_{z_a}) = A(∂_{z_a}, xY_j^H) with Y_j^H = ∂_{y_j} − N^b_j ∂_{z_b}.
fn beta(model: &CollarModel, c: &Vec4, j: usize, a: usize) -> f64 {
    let am = model.a_components(c);
    let n = fibre_shift(model, c);
    let x = c[0];
    // In the basis {x²∂_x, x∂_y, ∂_z}, xY^H = (x∂_y) − x N^b ∂_{z_b}.
    am[(a, j)] - x * (model.base_dim() + 1..4).map(|b| n[(b, j)] * am[(a, b)]).sum::<f64>()
}

pub fn boundary_condition_check(model: &CollarModel) -> BoundaryReport {
    let nb = model.base_dim();
    let fib: Vec<usize> = (1 + nb..4).collect();
    let mut residual_ii: f64 = 0.0;
    let mut a_normal_max: f64 = 0.0;
    let mut a_base_at_zero: f64 = 0.0;
    if model.has_a() {
        for c in samples(model) {
            let am = model.a_components(&c);
            for k in 0..4 {
                a_normal_max = a_normal_max.max(am[(0, k)].abs());
            }
            for i in 1..=nb {
                for j in 1..=nb {
                    a_base_at_zero = a_base_at_zero.max(am[(i, j)].abs());
                }
            }
            let d = |j: usize, a: usize, along: usize| {
                let mut p = c;
                let mut m = c;
                p[along] += FD_STEP;
                m[along] -= FD_STEP;
                (beta(model, &p, j, a) - beta(model, &m, j, a)) / (2.0 * FD_STEP)
            };
            for j in 1..=nb {
                for (k, &a) in fib.iter().enumerate() {
                    for &b in &fib[k + 1..] {
                        residual_ii = residual_ii.max((d(j, b, a) - d(j, a, b)).abs());
                    }
                }
            }
        }
    }
    let admissible = residual_ii <= ADMISSIBLE_TOL && a_normal_max <= ADMISSIBLE_TOL && a_base_at_zero <= ADMISSIBLE_TOL;
    BoundaryReport {
        residual_ii,
        a_normal_max,
        a_base_at_zero,
        admissible,
    }
}
