//! Model collars [0, 1)_x × W over a fibration F → W → N, with the
//! product, asymptotic, exact and auxiliary metrics built from one set of
//! data (h, τ, A, B).
//!
//! Chart coordinates are (x, y, z): the base coordinates y first, then the
//! fibre coordinates z. Base S¹ is y ∈ [0, 2π); base S² is (φ, ψ). Fibre S¹
//! is θ ∈ [0, 2π); fibre S² is (φ_F, ψ_F).

use std::fmt;
use std::sync::Arc;

use model_geometry::{ChartId, ChartPoint, GeometryError, Mat4, MetricField, Vec4};

use crate::error::LabError;

/// Symmetric bilinear form on ᵠTM given by its components in the basis
/// {x²∂_x, x∂_{y^i}, ∂_{z^a}}, as a function of the chart coordinates.
pub type FormField = Arc<dyn Fn(&Vec4) -> Mat4 + Send + Sync>;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Base {
    Circle { radius: f64 },
    Sphere { radius: f64 },
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Fiber {
    Circle { length: f64 },
    Sphere { radius: f64 },
}

impl Base {
    pub fn dim(&self) -> usize {
        match self {
            Base::Circle { .. } => 1,
            Base::Sphere { .. } => 2,
        }
    }
}

impl Fiber {
    pub fn dim(&self) -> usize {
        match self {
            Fiber::Circle { .. } => 1,
            Fiber::Sphere { .. } => 2,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum MetricKind {
    /// g̃_φ = dx²/x⁴ + φ*h/x² + τ
    ProductPhi,
    /// ĝ_φ = g̃_φ + xA
    AsymptoticPhi,
    /// g_φ = ĝ_φ + x²B
    ExactPhi,
    /// g̃_d = x² g̃_φ
    ProductD,
    /// ĝ_d = x² ĝ_φ
    AsymptoticD,
    /// g_d = x² g_φ
    ExactD,
    /// ĝ_ε = dx²/ε⁴ + φ*h/ε² + κ with κ = τ + xA
    AuxiliaryEps,
    /// ε² ĝ_ε, which agrees with ĝ_d on {x = ε}
    AuxiliaryEpsD,
    /// g_ε = dx²/ε⁴ + φ*h/ε² + τ
    AuxiliaryProductEps,
}

impl MetricKind {
    pub const ALL: [MetricKind; 9] = [
        MetricKind::ProductPhi,
        MetricKind::AsymptoticPhi,
        MetricKind::ExactPhi,
        MetricKind::ProductD,
        MetricKind::AsymptoticD,
        MetricKind::ExactD,
        MetricKind::AuxiliaryEps,
        MetricKind::AuxiliaryEpsD,
        MetricKind::AuxiliaryProductEps,
    ];

    pub fn is_auxiliary(&self) -> bool {
        matches!(
            self,
            MetricKind::AuxiliaryEps | MetricKind::AuxiliaryEpsD | MetricKind::AuxiliaryProductEps
        )
    }

    /// True for the fibred cusp (d) family, whose frames are {x∂_x, e_i, e_a/x}.
    pub fn is_d(&self) -> bool {
        matches!(
            self,
            MetricKind::ProductD | MetricKind::AsymptoticD | MetricKind::ExactD | MetricKind::AuxiliaryEpsD
        )
    }
}

impl fmt::Display for MetricKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            MetricKind::ProductPhi => "product-phi",
            MetricKind::AsymptoticPhi => "asymptotic-phi",
            MetricKind::ExactPhi => "exact-phi",
            MetricKind::ProductD => "product-d",
            MetricKind::AsymptoticD => "asymptotic-d",
            MetricKind::ExactD => "exact-d",
            MetricKind::AuxiliaryEps => "auxiliary-eps",
            MetricKind::AuxiliaryEpsD => "auxiliary-eps-d",
            MetricKind::AuxiliaryProductEps => "auxiliary-product-eps",
        };
        f.write_str(s)
    }
}

/// Input to `build_collar`.
#[derive(Clone)]
pub struct CollarParams {
    pub base: Base,
    pub fiber: Fiber,
    /// Connection of W → N: degree of the circle bundle over S² (η = dθ +
    /// ½·twist·cos φ dψ), or the rotation rate of the fibre along a base
    /// circle (η = dψ_F + twist·dy, resp. dθ + twist·dy).
    pub twist: f64,
    /// Fibre size varies over the base as (1 + modulation·cos y) resp.
    /// (1 + modulation·cos φ).
    pub modulation: f64,
    pub a: Option<FormField>,
    pub b: Option<FormField>,
}

impl fmt::Debug for CollarParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("CollarParams")
            .field("base", &self.base)
            .field("fiber", &self.fiber)
            .field("twist", &self.twist)
            .field("modulation", &self.modulation)
            .field("a", &self.a.is_some())
            .field("b", &self.b.is_some())
            .finish()
    }
}

impl CollarParams {
    pub fn new(base: Base, fiber: Fiber) -> Self {
        Self {
            base,
            fiber,
            twist: 0.0,
            modulation: 0.0,
            a: None,
            b: None,
        }
    }

    pub fn with_twist(mut self, twist: f64) -> Self {
        self.twist = twist;
        self
    }

    pub fn with_modulation(mut self, modulation: f64) -> Self {
        self.modulation = modulation;
        self
    }

    pub fn with_a(mut self, a: FormField) -> Self {
        self.a = Some(a);
        self
    }

    pub fn with_b(mut self, b: FormField) -> Self {
        self.b = Some(b);
        self
    }

    /// Named models, selectable from the command line.
    pub fn preset(name: &str) -> Option<Self> {
        let hopf = CollarParams::new(Base::Sphere { radius: 1.0 }, Fiber::Circle { length: 1.0 }).with_twist(1.0);
        let sphere_fibre = CollarParams::new(Base::Circle { radius: 1.0 }, Fiber::Sphere { radius: 1.0 });
        let p = match name {
            "hopf" => hopf,
            "hopf-perturbed" => hopf
                .with_modulation(0.2)
                .with_a(perturbations::admissible_a(1, 1.0))
                .with_b(perturbations::generic_b(1, 1.0)),
            "circle-product" => CollarParams::new(Base::Sphere { radius: 1.0 }, Fiber::Circle { length: 1.0 }),
            "sphere-over-circle" => sphere_fibre,
            "sphere-over-circle-perturbed" => sphere_fibre
                .with_modulation(0.2)
                .with_a(perturbations::admissible_a(2, 0.0))
                .with_b(perturbations::generic_b(2, 0.0)),
            "sphere-over-circle-asymmetric" => sphere_fibre.with_a(perturbations::asymmetric_a(0.5)),
            _ => return None,
        };
        Some(p)
    }

    pub const PRESETS: [&'static str; 6] = [
        "hopf",
        "hopf-perturbed",
        "circle-product",
        "sphere-over-circle",
        "sphere-over-circle-perturbed",
        "sphere-over-circle-asymmetric",
    ];
}

/// Validated collar data shared by all metric kinds.
#[derive(Clone, Debug)]
pub struct CollarModel {
    params: CollarParams,
}

/// Sample points used to validate perturbations.
fn sample_points(nb: usize) -> Vec<Vec4> {
    let mut out = Vec::new();
    for &x in &[0.0, 1e-3, 0.1, 0.3, 0.6] {
        for i in 0..5 {
            for j in 0..5 {
                let s = 0.3 + 0.55 * i as f64;
                let t = 0.2 + 1.2 * j as f64;
                let c = if nb == 1 {
                    Vec4::new(x, t, s, t + 0.4)
                } else {
                    Vec4::new(x, s, t, t + 0.7)
                };
                out.push(c);
            }
        }
    }
    out
}

/// Builds a collar model, checking dimensions and A(x²∂_x, ·) ≡ 0.
pub fn build_collar(params: CollarParams) -> Result<CollarModel, LabError> {
    let nb = params.base.dim();
    let nf = params.fiber.dim();
    if nb + nf != 3 {
        return Err(LabError::InvalidModel(format!(
            "dim N + dim F = {} + {}; the collar must be 4-dimensional",
            nb, nf
        )));
    }
    let positive = match (params.base, params.fiber) {
        (Base::Circle { radius: r } | Base::Sphere { radius: r }, Fiber::Circle { length: l } | Fiber::Sphere { radius: l }) => {
            r > 0.0 && l > 0.0
        }
    };
    if !positive || !params.twist.is_finite() || !(params.modulation.abs() < 1.0) {
        return Err(LabError::InvalidModel(
            "sizes must be positive and |modulation| < 1".into(),
        ));
    }
    if let Some(a) = &params.a {
        for c in sample_points(nb) {
            let m = a(&c);
            let scale = 1.0 + m.abs().max();
            let row = (0..4).map(|j| m[(0, j)].abs().max(m[(j, 0)].abs())).fold(0.0, f64::max);
            if !m.iter().all(|v| v.is_finite()) {
                return Err(LabError::BadPerturbation(format!("A is not finite at {:?}", c.as_slice())));
            }
            if row > 1e-12 * scale {
                return Err(LabError::BadPerturbation(format!(
                    "A(x²∂x, ·) = {:.3e} ≠ 0 at {:?}",
                    row,
                    c.as_slice()
                )));
            }
        }
    }
    Ok(CollarModel { params })
}

impl CollarModel {
    pub fn params(&self) -> &CollarParams {
        &self.params
    }

    pub fn base(&self) -> Base {
        self.params.base
    }

    pub fn fiber(&self) -> Fiber {
        self.params.fiber
    }

    pub fn base_dim(&self) -> usize {
        self.params.base.dim()
    }

    pub fn fiber_dim(&self) -> usize {
        self.params.fiber.dim()
    }

    pub fn has_a(&self) -> bool {
        self.params.a.is_some()
    }

    /// Evaluator for one metric kind; `eps` is only read by the auxiliary kinds.
    pub fn metric(&self, kind: MetricKind, eps: f64) -> CollarMetric<'_> {
        CollarMetric { model: self, kind, eps }
    }

    /// Base metric h on the y-coordinates, embedded in the (y, z) block.
    fn base_block(&self, c: &Vec4) -> Mat4 {
        let mut m = Mat4::zeros();
        match self.params.base {
            Base::Circle { radius } => m[(1, 1)] = radius * radius,
            Base::Sphere { radius } => {
                m[(1, 1)] = radius * radius;
                m[(2, 2)] = radius * radius * c[1].sin().powi(2);
            }
        }
        m
    }

    fn modulation_factor(&self, c: &Vec4) -> f64 {
        1.0 + self.params.modulation * c[1].cos()
    }

    /// Fibre form τ = τ_ab η^a η^b on W, η^a = dz^a + N^a_i dy^i.
    pub fn tau(&self, c: &Vec4) -> Mat4 {
        let f = self.modulation_factor(c);
        let t = self.params.twist;
        // η as rows over the coordinates (x, y, z), and τ_ab on the η's.
        match (self.params.base, self.params.fiber) {
            (Base::Sphere { .. }, Fiber::Circle { length }) => {
                let l2 = (length * f).powi(2);
                let eta = Vec4::new(0.0, 0.0, 0.5 * t * c[1].cos(), 1.0);
                eta * eta.transpose() * l2
            }
            (Base::Circle { .. }, Fiber::Sphere { radius }) => {
                let r2 = (radius * f).powi(2);
                let e1 = Vec4::new(0.0, 0.0, 1.0, 0.0);
                let e2 = Vec4::new(0.0, t, 0.0, 1.0);
                (e1 * e1.transpose() + e2 * e2.transpose() * c[2].sin().powi(2)) * r2
            }
            _ => unreachable!("validated in build_collar"),
        }
    }

    /// Scale factors s with (coordinate components) = s_μ s_ν × (ᵠ-basis components).
    fn phi_scale(&self, x: f64) -> Vec4 {
        let nb = self.base_dim();
        Vec4::from_fn(|m, _| match m {
            0 => 1.0 / (x * x),
            m if m <= nb => 1.0 / x,
            _ => 1.0,
        })
    }

    fn perturbation(&self, field: &Option<FormField>, c: &Vec4, power: i32) -> Mat4 {
        match field {
            None => Mat4::zeros(),
            Some(f) => {
                let x = c[0];
                let s = self.phi_scale(x);
                let m = f(c);
                let sym = (m + m.transpose()) * 0.5;
                Mat4::from_fn(|i, j| x.powi(power) * s[i] * s[j] * sym[(i, j)])
            }
        }
    }

    /// κ = τ + xA on W (the (y, z) block), depending on x.
    pub fn kappa(&self, c: &Vec4) -> Mat4 {
        let mut k = self.tau(c) + self.perturbation(&self.params.a, c, 1);
        for j in 0..4 {
            k[(0, j)] = 0.0;
            k[(j, 0)] = 0.0;
        }
        k
    }

    /// A and B in the ᵠ-basis, as supplied (symmetrised).
    pub fn a_components(&self, c: &Vec4) -> Mat4 {
        match &self.params.a {
            None => Mat4::zeros(),
            Some(f) => {
                let m = f(c);
                (m + m.transpose()) * 0.5
            }
        }
    }

    /// Coordinate components of the metric of `kind` at chart coordinates c.
    pub fn components(&self, kind: MetricKind, eps: f64, c: &Vec4) -> Mat4 {
        let x = c[0];
        let phi_hat = |c: &Vec4| {
            let mut g = self.base_block(c) / (x * x) + self.kappa(c);
            g[(0, 0)] = 1.0 / x.powi(4);
            g
        };
        let aux = |kappa: Mat4| {
            let mut g = self.base_block(c) / (eps * eps) + kappa;
            g[(0, 0)] = 1.0 / eps.powi(4);
            g
        };
        match kind {
            MetricKind::ProductPhi | MetricKind::ProductD => {
                let mut g = self.base_block(c) / (x * x) + self.tau(c);
                g[(0, 0)] = 1.0 / x.powi(4);
                if kind.is_d() {
                    g * (x * x)
                } else {
                    g
                }
            }
            MetricKind::AsymptoticPhi => phi_hat(c),
            MetricKind::AsymptoticD => phi_hat(c) * (x * x),
            MetricKind::ExactPhi => phi_hat(c) + self.perturbation(&self.params.b, c, 2),
            MetricKind::ExactD => (phi_hat(c) + self.perturbation(&self.params.b, c, 2)) * (x * x),
            MetricKind::AuxiliaryEps => aux(self.kappa(c)),
            MetricKind::AuxiliaryEpsD => aux(self.kappa(c)) * (eps * eps),
            MetricKind::AuxiliaryProductEps => aux(self.tau(c)),
        }
    }
}

/// One metric kind of a collar model as a `MetricField` on the collar chart.
#[derive(Clone, Copy)]
pub struct CollarMetric<'a> {
    pub model: &'a CollarModel,
    pub kind: MetricKind,
    pub eps: f64,
}

impl MetricField for CollarMetric<'_> {
    fn name(&self) -> String {
        if self.kind.is_auxiliary() {
            format!("collar {} (eps = {})", self.kind, self.eps)
        } else {
            format!("collar {}", self.kind)
        }
    }

    fn metric(&self, p: &ChartPoint) -> Result<Mat4, GeometryError> {
        if p.chart != ChartId::Collar {
            return Err(GeometryError::WrongChart(p.chart.to_string()));
        }
        let x = p.coords[0];
        if !(x > 0.0 && x < 1.0) {
            return Err(GeometryError::OutOfDomain(format!("x = {} outside (0, 1)", x)));
        }
        Ok(self.model.components(self.kind, self.eps, &p.coords))
    }

    fn coord_scale(&self, p: &ChartPoint) -> Vec4 {
        Vec4::new(p.coords[0], 1.0, 1.0, 1.0)
    }
}

/// Ready-made perturbations in the ᵠ-basis, built from forms that are smooth
/// on W: functions of the polar angles, the round metrics, d(cos φ) and,
/// over a sphere base, the connection form η = dθ + ½t cos φ dψ.
pub mod perturbations {
    use super::{FormField, Mat4, Vec4};
    use std::sync::Arc;

    fn sym(u: &Vec4, v: &Vec4) -> Mat4 {
        (u * v.transpose() + v * u.transpose()) * 0.5
    }

    /// Round metric of the base sphere (φ, ψ) in the ᵠ-coframe.
    fn round_base(c: &Vec4) -> Mat4 {
        let mut m = Mat4::zeros();
        m[(1, 1)] = 1.0;
        m[(2, 2)] = c[1].sin().powi(2);
        m
    }

    /// η in the ᵠ-coframe {dx/x², dφ/x, dψ/x, dθ}.
    fn eta(c: &Vec4, twist: f64) -> Vec4 {
        Vec4::new(0.0, 0.0, 0.5 * twist * c[0] * c[1].cos(), 1.0)
    }

    /// Round metric of the fibre sphere (φ_F, ψ_F).
    fn round_fibre(c: &Vec4) -> Mat4 {
        let mut m = Mat4::zeros();
        m[(2, 2)] = 1.0;
        m[(3, 3)] = c[2].sin().powi(2);
        m
    }

    /// A with A(x²∂x,·) = 0, A(x∂i, x∂j) = O(x) and, for a sphere fibre, a
    /// closed fibre 1-form A(·, x∂_y)|_F, so condition (ii) holds.
    pub fn admissible_a(fiber_dim: usize, twist: f64) -> FormField {
        Arc::new(move |c: &Vec4| {
            let x = c[0];
            if fiber_dim == 1 {
                let e = eta(c, twist);
                let dcos = Vec4::new(0.0, -c[1].sin(), 0.0, 0.0);
                round_base(c) * (0.3 * x * (1.0 + 0.5 * c[1].cos()))
                    + e * e.transpose() * (0.15 * (1.0 + 0.5 * c[1].cos()))
                    + sym(&dcos, &e) * 0.2
            } else {
                let y = c[1];
                let mut m = round_fibre(c) * (0.15 * (1.0 + 0.5 * y.sin()));
                m[(1, 1)] = 0.3 * x * (1.0 + 0.5 * y.cos());
                // d(cos φ_F) times a base function
                let v = Vec4::new(0.0, 0.0, -c[2].sin(), 0.0);
                m + sym(&Vec4::new(0.0, 1.0, 0.0, 0.0), &v) * (0.2 * (2.0 * y).cos())
            }
        })
    }

    /// B with a normal part, a dx⊙(base) cross term and base and fibre
    /// blocks; over a circle the base components depend on the fibre point,
    /// so the exact and asymptotic connections differ at first order in x.
    pub fn generic_b(fiber_dim: usize, twist: f64) -> FormField {
        Arc::new(move |c: &Vec4| {
            let mut m = Mat4::zeros();
            if fiber_dim == 1 {
                let e = eta(c, twist);
                let z = c[1].cos();
                m[(0, 0)] = 0.2 * z;
                m += sym(&Vec4::new(1.0, 0.0, 0.0, 0.0), &Vec4::new(0.0, -c[1].sin(), 0.0, 0.0)) * 0.2;
                m += round_base(c) * (0.25 * (1.0 + 0.6 * z));
                m += e * e.transpose() * (0.2 * (1.0 + 0.5 * z));
            } else {
                let y = c[1];
                let z = c[2].cos();
                m[(0, 0)] = 0.2 * y.cos();
                m[(1, 1)] = 0.25 * (1.0 + 0.6 * z);
                m += sym(&Vec4::new(1.0, 0.0, 0.0, 0.0), &Vec4::new(0.0, 1.0, 0.0, 0.0)) * (0.2 * z);
                m += round_fibre(c) * (0.2 * (1.0 + 0.5 * y.sin()));
                let w = Vec4::new(0.0, 0.0, 0.0, c[2].sin().powi(2));
                m += sym(&Vec4::new(0.0, 1.0, 0.0, 0.0), &w) * (0.2 * z);
            }
            m
        })
    }

    /// For a sphere fibre over a circle: A(∂_{ψF}, x∂_y) = c·sin²φ_F, whose
    /// fibre exterior derivative 2c sin φ_F cos φ_F dφ_F∧dψ_F is nonzero.
    pub fn asymmetric_a(c: f64) -> FormField {
        Arc::new(move |p: &Vec4| {
            let mut m = Mat4::zeros();
            m[(1, 3)] = c * p[2].sin().powi(2);
            m[(3, 1)] = m[(1, 3)];
            m
        })
    }
}
