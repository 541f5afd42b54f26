//! Riemann tensor, Ricci tensor and the Λ⁺/Λ⁻ block decomposition of the
//! curvature operator.

use nalgebra::{Matrix3, Matrix6};

use model_geometry::{ChartPoint, Mat4, MetricField, Vec4};

use crate::christoffel::{christoffel_first_kind, christoffel_from_jet, ChristoffelData};
use crate::error::CurvatureError;
use crate::jet::{metric_jet, FdOptions, MetricJet};

pub type Rank4 = [[[[f64; 4]; 4]; 4]; 4];
pub type Mat3 = Matrix3<f64>;
pub type Mat6 = Matrix6<f64>;

/// Index pairs (a, b) and (c, d) of e^{ab} ± e^{cd}.
pub const SD_PAIRS: [[(usize, usize); 2]; 3] = [[(0, 1), (2, 3)], [(0, 2), (3, 1)], [(0, 3), (1, 2)]];

/// Orthonormal basis of Λ² as antisymmetric component arrays ω^{ab}:
/// entries 0..3 are (e^{01} + e^{23})/√2 and cyclic (self-dual), entries
/// 3..6 the same with a minus sign (anti-self-dual).
pub fn two_form_basis() -> [[[f64; 4]; 4]; 6] {
    let s = std::f64::consts::FRAC_1_SQRT_2;
    let mut out = [[[0.0; 4]; 4]; 6];
    for (i, [(a, b), (c, d)]) in SD_PAIRS.iter().copied().enumerate() {
        for (k, sign) in [(i, 1.0), (i + 3, -1.0)] {
            out[k][a][b] = s;
            out[k][b][a] = -s;
            out[k][c][d] = sign * s;
            out[k][d][c] = -sign * s;
        }
    }
    out
}

/// Pointwise squared norms entering the characteristic integrands.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CurvatureNorms {
    /// Frobenius norm² of the W⁺ block.
    pub w_plus_sq: f64,
    pub w_minus_sq: f64,
    /// ½ Σ Z_ab² on an orthonormal frame.
    pub z_sq: f64,
    pub s_sq: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CurvatureBundle {
    /// R^α_{βμν} in chart coordinates.
    pub riemann: Rank4,
    /// R_{αβμν} in chart coordinates.
    pub lowered: Rank4,
    /// Coordinate Ricci tensor.
    pub ricci: Mat4,
    pub scalar: f64,
    /// Columns are the orthonormal frame vectors, positively oriented.
    pub frame: Mat4,
    /// R_{abcd} on the frame.
    pub frame_riemann: Rank4,
    pub frame_ricci: Mat4,
    /// Z = Ric − (S/4)·Id on the frame.
    pub traceless_ricci: Mat4,
    pub weyl_plus: Mat3,
    pub weyl_minus: Mat3,
    /// Curvature operator on Λ² in the basis of `two_form_basis`.
    pub curvature_operator: Mat6,
    /// Sign applied to the last frame vector to match the chart orientation.
    pub orientation: f64,
    pub step: Vec4,
}

/// Lowered Riemann tensor from second derivatives of g and the Christoffel symbols.
pub fn lowered_riemann(jet: &MetricJet, gamma: &ChristoffelData) -> Rank4 {
    let first = christoffel_first_kind(&jet.dg);
    let h = &jet.ddg;
    let mut r = [[[[0.0; 4]; 4]; 4]; 4];
    for a in 0..4 {
        for b in 0..4 {
            for m in 0..4 {
                for n in 0..4 {
                    let second = 0.5
                        * (h[b][m][(a, n)] + h[a][n][(b, m)] - h[a][m][(b, n)] - h[b][n][(a, m)]);
                    let mut quad = 0.0;
                    for s in 0..4 {
                        quad += first[s][b][m] * gamma.symbols[s][a][n]
                            - first[s][b][n] * gamma.symbols[s][a][m];
                    }
                    r[a][b][m][n] = second + quad;
                }
            }
        }
    }
    r
}

/// Modified Gram-Schmidt on ∂₀, …, ∂₃ in that order; the last vector is
/// flipped when `orientation` is negative.
pub fn orthonormal_frame(g: &Mat4, orientation: f64) -> Mat4 {
    let mut e = Mat4::identity();
    for a in 0..4 {
        let mut v = e.column(a).into_owned();
        for b in 0..a {
            let eb = e.column(b).into_owned();
            let proj = (v.transpose() * g * eb)[(0, 0)];
            v -= eb * proj;
        }
        let n = (v.transpose() * g * v)[(0, 0)].sqrt();
        e.set_column(a, &(v / n));
    }
    if orientation < 0.0 {
        let last = -e.column(3).into_owned();
        e.set_column(3, &last);
    }
    e
}

/// T_{abcd} = T_{αβμν} E^α_a E^β_b E^μ_c E^ν_d, one index at a time.
pub fn to_frame(t: &Rank4, e: &Mat4) -> Rank4 {
    let mut a = [[[[0.0; 4]; 4]; 4]; 4];
    let mut b = [[[[0.0; 4]; 4]; 4]; 4];
    // Contract the last index, then cycle it to the front; four rounds
    // bring every index back to its slot.
    let mut src = *t;
    for _ in 0..4 {
        for i in 0..4 {
            for j in 0..4 {
                for k in 0..4 {
                    for l in 0..4 {
                        let mut acc = 0.0;
                        for c in 0..4 {
                            acc += src[i][j][k][c] * e[(c, l)];
                        }
                        a[l][i][j][k] = acc;
                    }
                }
            }
        }
        std::mem::swap(&mut a, &mut b);
        src = b;
    }
    src
}

/// ℛ_{ij} = ¼ ω_i^{ab} R_{abcd} ω_j^{cd}.
pub fn curvature_operator(frame_riemann: &Rank4) -> Mat6 {
    // Each basis form has four nonzero entries ±1/√2.
    let basis = two_form_basis();
    let support: Vec<Vec<(usize, usize, f64)>> = basis
        .iter()
        .map(|w| {
            (0..4)
                .flat_map(|a| (0..4).map(move |b| (a, b)))
                .filter(|&(a, b)| w[a][b] != 0.0)
                .map(|(a, b)| (a, b, w[a][b]))
                .collect()
        })
        .collect();
    let mut out = Mat6::zeros();
    for i in 0..6 {
        for j in 0..6 {
            let mut acc = 0.0;
            for &(a, b, wi) in &support[i] {
                for &(c, d, wj) in &support[j] {
                    acc += wi * frame_riemann[a][b][c][d] * wj;
                }
            }
            out[(i, j)] = 0.25 * acc;
        }
    }
    out
}

impl CurvatureBundle {
    pub fn from_jet(jet: &MetricJet, orientation: f64) -> Result<Self, CurvatureError> {
        let gamma = christoffel_from_jet(jet)?;
        Ok(Self::from_parts(jet, &gamma, orientation))
    }

    pub fn from_parts(jet: &MetricJet, gamma: &ChristoffelData, orientation: f64) -> Self {
        let lowered = lowered_riemann(jet, gamma);
        let ginv = jet.g.try_inverse().unwrap_or_else(Mat4::zeros);
        let mut riemann = [[[[0.0; 4]; 4]; 4]; 4];
        for a in 0..4 {
            for b in 0..4 {
                for m in 0..4 {
                    for n in 0..4 {
                        riemann[a][b][m][n] = (0..4).map(|r| ginv[(a, r)] * lowered[r][b][m][n]).sum();
                    }
                }
            }
        }
        let ricci = Mat4::from_fn(|b, n| (0..4).map(|a| riemann[a][b][a][n]).sum());
        let ricci = (ricci + ricci.transpose()) * 0.5;

        let frame = orthonormal_frame(&jet.g, orientation);
        let frame_riemann = to_frame(&lowered, &frame);
        let frame_ricci = Mat4::from_fn(|b, d| (0..4).map(|a| frame_riemann[a][b][a][d]).sum());
        let frame_ricci = (frame_ricci + frame_ricci.transpose()) * 0.5;
        let scalar = frame_ricci.trace();
        let traceless_ricci = frame_ricci - Mat4::identity() * (scalar / 4.0);

        let op = curvature_operator(&frame_riemann);
        let op = (op + op.transpose()) * 0.5;
        let shift = Mat3::identity() * (scalar / 12.0);
        let weyl_plus = op.fixed_view::<3, 3>(0, 0).into_owned() - shift;
        let weyl_minus = op.fixed_view::<3, 3>(3, 3).into_owned() - shift;

        Self {
            riemann,
            lowered,
            ricci,
            scalar,
            frame,
            frame_riemann,
            frame_ricci,
            traceless_ricci,
            weyl_plus,
            weyl_minus,
            curvature_operator: op,
            orientation: if orientation < 0.0 { -1.0 } else { 1.0 },
            step: jet.steps,
        }
    }

    pub fn norms(&self) -> CurvatureNorms {
        CurvatureNorms {
            w_plus_sq: self.weyl_plus.norm_squared(),
            w_minus_sq: self.weyl_minus.norm_squared(),
            z_sq: 0.5 * self.traceless_ricci.norm_squared(),
            s_sq: self.scalar * self.scalar,
        }
    }

    /// Frobenius norm of the Ricci tensor on the orthonormal frame.
    pub fn ricci_norm(&self) -> f64 {
        self.frame_ricci.norm()
    }

    /// Frobenius norm of R_{abcd} on the orthonormal frame.
    pub fn riemann_norm(&self) -> f64 {
        self.frame_riemann
            .iter()
            .flatten()
            .flatten()
            .flatten()
            .map(|v| v * v)
            .sum::<f64>()
            .sqrt()
    }

    /// max |R_{a[bcd]}| on the frame.
    pub fn bianchi_residual(&self) -> f64 {
        let r = &self.frame_riemann;
        let mut worst: f64 = 0.0;
        for a in 0..4 {
            for b in 0..4 {
                for c in 0..4 {
                    for d in 0..4 {
                        let s = r[a][b][c][d] + r[a][c][d][b] + r[a][d][b][c];
                        worst = worst.max(s.abs());
                    }
                }
            }
        }
        worst
    }

    /// max over both antisymmetries of R_{abcd} (coordinate components).
    pub fn antisymmetry_residual(&self) -> f64 {
        let r = &self.lowered;
        let mut worst: f64 = 0.0;
        for a in 0..4 {
            for b in 0..4 {
                for c in 0..4 {
                    for d in 0..4 {
                        worst = worst
                            .max((r[a][b][c][d] + r[b][a][c][d]).abs())
                            .max((r[a][b][c][d] + r[a][b][d][c]).abs());
                    }
                }
            }
        }
        worst
    }

    /// max |R_{abcd} − R_{cdab}| (coordinate components).
    pub fn pair_symmetry_residual(&self) -> f64 {
        let r = &self.lowered;
        let mut worst: f64 = 0.0;
        for a in 0..4 {
            for b in 0..4 {
                for c in 0..4 {
                    for d in 0..4 {
                        worst = worst.max((r[a][b][c][d] - r[c][d][a][b]).abs());
                    }
                }
            }
        }
        worst
    }

    /// Frame Riemann tensor rebuilt from (W⁺, W⁻, Z, S):
    /// R = W + ½ Z ⊙ δ + (S/24) δ ⊙ δ with ⊙ the Kulkarni-Nomizu product.
    pub fn reassemble(&self) -> Rank4 {
        let basis = two_form_basis();
        let mut w6 = Mat6::zeros();
        w6.fixed_view_mut::<3, 3>(0, 0).copy_from(&self.weyl_plus);
        w6.fixed_view_mut::<3, 3>(3, 3).copy_from(&self.weyl_minus);
        let z = &self.traceless_ricci;
        let s = self.scalar;
        let d = |i: usize, j: usize| if i == j { 1.0 } else { 0.0 };
        let mut out = [[[[0.0; 4]; 4]; 4]; 4];
        for a in 0..4 {
            for b in 0..4 {
                for c in 0..4 {
                    for e in 0..4 {
                        let mut w = 0.0;
                        for i in 0..6 {
                            for j in 0..6 {
                                w += w6[(i, j)] * basis[i][a][b] * basis[j][c][e];
                            }
                        }
                        let zpart = 0.5
                            * (z[(a, c)] * d(b, e) - z[(a, e)] * d(b, c) + z[(b, e)] * d(a, c)
                                - z[(b, c)] * d(a, e));
                        let spart = s / 12.0 * (d(a, c) * d(b, e) - d(a, e) * d(b, c));
                        out[a][b][c][e] = w + zpart + spart;
                    }
                }
            }
        }
        out
    }

    /// max |R_{abcd} − reassembled| on the frame.
    pub fn reassembly_residual(&self) -> f64 {
        let re = self.reassemble();
        let mut worst: f64 = 0.0;
        for a in 0..4 {
            for b in 0..4 {
                for c in 0..4 {
                    for d in 0..4 {
                        worst = worst.max((re[a][b][c][d] - self.frame_riemann[a][b][c][d]).abs());
                    }
                }
            }
        }
        worst
    }

    /// |tr W⁺| + |tr W⁻|.
    pub fn weyl_trace_residual(&self) -> f64 {
        self.weyl_plus.trace().abs() + self.weyl_minus.trace().abs()
    }
}

pub fn riemann<M: MetricField + ?Sized>(
    metric: &M,
    point: &ChartPoint,
    opts: &FdOptions,
) -> Result<CurvatureBundle, CurvatureError> {
    let jet = metric_jet(metric, point, opts)?;
    CurvatureBundle::from_jet(&jet, metric.orientation(point.chart))
}
