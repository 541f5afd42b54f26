use model_geometry::{MultiTaubNut, Vec3};

use crate::error::QuadratureError;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Extrapolation {
    None,
    /// Integrate at R/2, 3R/4 and R and fit c₀ + c₁/R.
    OneOverR,
}

/// Treatment of the circle-fibre coordinate θ.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum FiberRule {
    /// The density is invariant under the fibre rotation (true for every
    /// curvature density of a Gibbons-Hawking metric): sample one θ and
    /// multiply by the fibre length.
    Invariant { theta: f64 },
    /// n equally spaced fibre nodes.
    Trapezoid(usize),
}

/// Node counts per coordinate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Grid {
    /// Total radial nodes of the outer patch, in panels of 8.
    pub radial: usize,
    pub polar: usize,
    pub azimuthal: usize,
    pub fiber: FiberRule,
}

impl Default for Grid {
    fn default() -> Self {
        Self {
            radial: 64,
            polar: 32,
            azimuthal: 64,
            fiber: FiberRule::Invariant { theta: 0.37 },
        }
    }
}

impl Grid {
    /// Half the nodes in every direction, used for the error estimate.
    pub fn coarsened(&self) -> Grid {
        let half = |n: usize| (n / 2).max(4);
        Grid {
            radial: half(self.radial),
            polar: half(self.polar),
            azimuthal: half(self.azimuthal),
            fiber: match self.fiber {
                FiberRule::Trapezoid(n) => FiberRule::Trapezoid(half(n)),
                f => f,
            },
        }
    }

    pub fn refined(&self) -> Grid {
        Grid {
            radial: 2 * self.radial,
            polar: 2 * self.polar,
            azimuthal: 2 * self.azimuthal,
            fiber: match self.fiber {
                FiberRule::Trapezoid(n) => FiberRule::Trapezoid(2 * n),
                f => f,
            },
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IntegrationPlan {
    pub outer_radius: f64,
    pub grid: Grid,
    /// Radius of the smooth cut-off balls around the monopoles.
    pub nut_ball_radius: f64,
    /// Half-angle of the vertical cones through each monopole left out of
    /// the ball patches. Samples are taken in a gauge regular at each
    /// point, so the default is 0.
    pub string_exclusion_angle: f64,
    pub extrapolation: Extrapolation,
}

impl IntegrationPlan {
    /// Default plan for a space: balls of radius min(1, δ) and the given
    /// outer radius.
    pub fn for_space(space: &MultiTaubNut, outer_radius: f64) -> Self {
        Self {
            outer_radius,
            grid: Grid::default(),
            nut_ball_radius: space.delta().min(1.0),
            string_exclusion_angle: 0.0,
            extrapolation: Extrapolation::None,
        }
    }

    pub fn with_grid(mut self, grid: Grid) -> Self {
        self.grid = grid;
        self
    }

    pub fn validate(&self, space: &MultiTaubNut) -> Result<(), QuadratureError> {
        let bad = |m: String| Err(QuadratureError::InvalidPlan(m));
        let extent = space.config().extent().max(max_offset(space));
        if !(self.outer_radius > 2.0 * extent) || !self.outer_radius.is_finite() {
            return bad(format!(
                "outer radius {} must exceed twice the monopole extent {}",
                self.outer_radius, extent
            ));
        }
        let g = &self.grid;
        if g.radial < 8 || g.polar < 8 || g.azimuthal < 8 {
            return bad("need at least 8 nodes per coordinate".into());
        }
        if let FiberRule::Trapezoid(n) = g.fiber {
            if n < 8 {
                return bad("need at least 8 fibre nodes".into());
            }
        }
        if !(self.nut_ball_radius > 0.0 && self.nut_ball_radius <= space.delta()) {
            return bad(format!(
                "ball radius {} must lie in (0, {}] so balls stay disjoint",
                self.nut_ball_radius,
                space.delta()
            ));
        }
        if extent + self.nut_ball_radius >= self.outer_radius {
            return bad("balls must lie inside the outer sphere".into());
        }
        if !(0.0..0.5).contains(&self.string_exclusion_angle) {
            return bad("string exclusion angle must lie in [0, 0.5)".into());
        }
        Ok(())
    }
}

/// Centre of the outer patch: the monopole centroid.
pub fn centre(space: &MultiTaubNut) -> Vec3 {
    let pts = space.config().points();
    pts.iter().fold(Vec3::zeros(), |a, p| a + p) / pts.len() as f64
}

/// Largest distance from the centre to a monopole.
pub fn max_offset(space: &MultiTaubNut) -> f64 {
    let c = centre(space);
    space
        .config()
        .points()
        .iter()
        .map(|p| (p - c).norm())
        .fold(0.0, f64::max)
}
