//! Recipe trees: multi-Taub-NUT leaves modified by a cyclic quotient,
//! CP²-bar blow-ups and codimension-3 surgeries.

use std::fmt;

use crate::angle::AnglePair;
use crate::error::InvariantError;

/// An isolated fixed point of the group element with index `element`
/// (0 is the identity).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FixedPointDatum {
    pub element: u32,
    pub angles: AnglePair,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupActionSpec {
    pub order: u32,
    pub fixed_points: Vec<FixedPointDatum>,
}

impl GroupActionSpec {
    pub fn trivial() -> Self {
        Self {
            order: 1,
            fixed_points: Vec::new(),
        }
    }

    /// A free action of a group of the given order.
    pub fn free(order: u32) -> Self {
        Self {
            order,
            fixed_points: Vec::new(),
        }
    }

    pub fn validate(&self) -> Result<(), InvariantError> {
        if self.order == 0 {
            return Err(InvariantError::MalformedRecipe("group order must be ≥ 1".into()));
        }
        for fp in &self.fixed_points {
            if fp.element == 0 {
                return Err(InvariantError::MalformedRecipe(
                    "fixed point attached to the identity element".into(),
                ));
            }
            if fp.element >= self.order {
                return Err(InvariantError::MalformedRecipe(format!(
                    "element {} out of range for a group of order {}",
                    fp.element, self.order
                )));
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CircleBundleSpec {
    pub euler_number: i64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SpaceRecipe {
    MultiTaubNut {
        k: u32,
    },
    Quotient {
        inner: Box<SpaceRecipe>,
        action: GroupActionSpec,
        bundle: CircleBundleSpec,
    },
    /// Connected sum with `l` copies of CP²-bar.
    BlowUps {
        inner: Box<SpaceRecipe>,
        l: u32,
    },
    Surgery {
        inner: Box<SpaceRecipe>,
        count: u32,
    },
}

/// The recipe flattened to the quantities the invariant formulas need.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RecipeSummary {
    pub k: u32,
    pub action: GroupActionSpec,
    pub bundle: CircleBundleSpec,
    pub has_quotient: bool,
    pub blow_ups: u32,
    pub surgeries: u32,
}

impl SpaceRecipe {
    pub fn multi_taub_nut(k: u32) -> Self {
        SpaceRecipe::MultiTaubNut { k }
    }

    pub fn quotient(self, action: GroupActionSpec, bundle: CircleBundleSpec) -> Self {
        SpaceRecipe::Quotient {
            inner: Box::new(self),
            action,
            bundle,
        }
    }

    pub fn blow_ups(self, l: u32) -> Self {
        SpaceRecipe::BlowUps {
            inner: Box::new(self),
            l,
        }
    }

    pub fn surgery(self, count: u32) -> Self {
        SpaceRecipe::Surgery {
            inner: Box::new(self),
            count,
        }
    }

    /// Checks the structural rules and flattens the tree.
    pub fn summarize(&self) -> Result<RecipeSummary, InvariantError> {
        match self {
            SpaceRecipe::MultiTaubNut { k } => {
                if *k == 0 {
                    return Err(InvariantError::MalformedRecipe(
                        "multi-Taub-NUT needs k ≥ 1 monopoles".into(),
                    ));
                }
                Ok(RecipeSummary {
                    k: *k,
                    action: GroupActionSpec::trivial(),
                    bundle: CircleBundleSpec {
                        euler_number: i64::from(*k),
                    },
                    has_quotient: false,
                    blow_ups: 0,
                    surgeries: 0,
                })
            }
            SpaceRecipe::Quotient {
                inner,
                action,
                bundle,
            } => {
                let SpaceRecipe::MultiTaubNut { .. } = inner.as_ref() else {
                    return Err(InvariantError::MalformedRecipe(
                        "a quotient must act directly on a multi-Taub-NUT leaf \
                         (nested quotients and quotients of modified spaces are not supported)"
                            .into(),
                    ));
                };
                let base = inner.summarize()?;
                action.validate()?;
                if bundle.euler_number != i64::from(base.k) {
                    return Err(InvariantError::MalformedRecipe(format!(
                        "boundary circle bundle of a {}-centre multi-Taub-NUT has Euler number {}, got {}",
                        base.k, base.k, bundle.euler_number
                    )));
                }
                Ok(RecipeSummary {
                    action: action.clone(),
                    bundle: *bundle,
                    has_quotient: true,
                    ..base
                })
            }
            SpaceRecipe::BlowUps { inner, l } => {
                let mut s = inner.summarize()?;
                s.blow_ups += l;
                Ok(s)
            }
            SpaceRecipe::Surgery { inner, count } => {
                let mut s = inner.summarize()?;
                s.surgeries += count;
                Ok(s)
            }
        }
    }

    /// Leaf-to-root list of node labels.
    pub fn path(&self) -> Vec<&'static str> {
        let mut out = match self {
            SpaceRecipe::MultiTaubNut { .. } => Vec::new(),
            SpaceRecipe::Quotient { inner, .. }
            | SpaceRecipe::BlowUps { inner, .. }
            | SpaceRecipe::Surgery { inner, .. } => inner.path(),
        };
        out.push(match self {
            SpaceRecipe::MultiTaubNut { .. } => "multi-taub-nut",
            SpaceRecipe::Quotient { .. } => "quotient",
            SpaceRecipe::BlowUps { .. } => "blow-ups",
            SpaceRecipe::Surgery { .. } => "surgery",
        });
        out
    }
}

impl fmt::Display for SpaceRecipe {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SpaceRecipe::MultiTaubNut { k } => write!(f, "MTN({})", k),
            SpaceRecipe::Quotient {
                inner,
                action,
                bundle,
            } => write!(
                f,
                "{}/Z{}[χ(E)={}, {} fixed pts]",
                inner,
                action.order,
                bundle.euler_number,
                action.fixed_points.len()
            ),
            SpaceRecipe::BlowUps { inner, l } => write!(f, "{} # {}·CP²bar", inner, l),
            SpaceRecipe::Surgery { inner, count } => write!(f, "surg^{}({})", count, inner),
        }
    }
}

/// Recipes of the worked examples.
pub mod examples {
    use super::*;

    /// M₁ = M̄₀/Z_k with the free lift of the rotation by 2π/k.
    pub fn m1(k: u32) -> SpaceRecipe {
        SpaceRecipe::multi_taub_nut(k).quotient(
            GroupActionSpec::free(k),
            CircleBundleSpec {
                euler_number: i64::from(k),
            },
        )
    }

    /// X₁ = M₁ # l·CP²-bar.
    pub fn x1(k: u32, l: u32) -> SpaceRecipe {
        m1(k).blow_ups(l)
    }

    /// M₂: one codimension-3 surgery on M₁.
    pub fn m2(k: u32) -> SpaceRecipe {
        m1(k).surgery(1)
    }

    /// X₂ = M₂ # l·CP²-bar.
    pub fn x2(k: u32, l: u32) -> SpaceRecipe {
        m2(k).blow_ups(l)
    }
}
