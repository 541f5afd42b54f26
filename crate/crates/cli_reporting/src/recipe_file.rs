//! TOML recipe files.
//!
//! ```toml
//! [space]
//! variant = "quotient"      # or "multi-taub-nut"
//! k = 4
//! surgeries = 1             # optional
//! l = 5                     # optional, CP²-bar blow-ups
//!
//! [group]
//! order = 4
//! fixed_points = [{ element = 1, angles = ["1/2", "3/2"] }]
//!
//! [bundle]
//! euler_number = 4
//! ```
//!
//! Angles are rational multiples of π ("1/2" is π/2) or radians with a
//! "rad" suffix. Modifications apply in the order quotient, surgeries,
//! blow-ups; a key that is present (even as 0) produces its node.

use std::path::Path;
use std::str::FromStr;

use invariant_core::{fmt_rational, Angle, AnglePair, CircleBundleSpec, FixedPointDatum, GroupActionSpec, SpaceRecipe};
use serde::{Deserialize, Serialize};

use crate::error::CliError;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RecipeFile {
    pub space: SpaceSection,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub group: Option<GroupSection>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub bundle: Option<BundleSection>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub numeric: Option<NumericSection>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Variant {
    MultiTaubNut,
    Quotient,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpaceSection {
    pub variant: Variant,
    pub k: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub surgeries: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub l: Option<u32>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GroupSection {
    pub order: u32,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub fixed_points: Vec<FixedPointEntry>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FixedPointEntry {
    pub element: u32,
    pub angles: [String; 2],
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BundleSection {
    pub euler_number: i64,
}

/// Plan parameters for `numeric`; command-line flags take precedence.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NumericSection {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub k: Option<usize>,
    /// Monopole positions; overrides the default layout for `k`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub monopoles: Option<Vec<[f64; 3]>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub radius: Option<f64>,
    /// "RADIALxPOLARxAZIMUTHAL", e.g. "32x16x32".
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub grid: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub eps: Option<Vec<f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub points: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub step_fraction: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub collar: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
}

/// 1-based line and column of a byte offset.
fn line_column(text: &str, offset: usize) -> (usize, usize) {
    let before = &text[..offset.min(text.len())];
    let line = before.matches('\n').count() + 1;
    let column = before.rsplit('\n').next().map_or(0, |s| s.chars().count()) + 1;
    (line, column)
}

impl FromStr for RecipeFile {
    type Err = CliError;

    fn from_str(text: &str) -> Result<Self, CliError> {
        toml::from_str(text).map_err(|e| {
            let (line, column) = e.span().map_or((1, 1), |s| line_column(text, s.start));
            CliError::Parse {
                line,
                column,
                message: e.message().to_string(),
            }
        })
    }
}

impl RecipeFile {
    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path).map_err(|source| CliError::Io {
            path: path.to_path_buf(),
            source,
        })?;
        text.parse()
    }

    pub fn to_toml(&self) -> String {
        toml::to_string(self).expect("recipe files always serialize")
    }

    pub fn to_recipe(&self) -> Result<SpaceRecipe, CliError> {
        let mut recipe = SpaceRecipe::multi_taub_nut(self.space.k);
        match self.space.variant {
            Variant::MultiTaubNut => {
                if self.group.is_some() || self.bundle.is_some() {
                    return Err(CliError::Config(
                        "[group] and [bundle] need variant = \"quotient\"".into(),
                    ));
                }
            }
            Variant::Quotient => {
                let group = self
                    .group
                    .as_ref()
                    .ok_or_else(|| CliError::Config("variant \"quotient\" needs a [group] section".into()))?;
                let fixed_points = group
                    .fixed_points
                    .iter()
                    .map(|fp| {
                        let pair = AnglePair::new(fp.angles[0].parse()?, fp.angles[1].parse()?)?;
                        Ok(FixedPointDatum {
                            element: fp.element,
                            angles: pair,
                        })
                    })
                    .collect::<Result<Vec<_>, CliError>>()?;
                let bundle = CircleBundleSpec {
                    euler_number: self
                        .bundle
                        .as_ref()
                        .map_or(i64::from(self.space.k), |b| b.euler_number),
                };
                recipe = recipe.quotient(
                    GroupActionSpec {
                        order: group.order,
                        fixed_points,
                    },
                    bundle,
                );
            }
        }
        if let Some(n) = self.space.surgeries {
            recipe = recipe.surgery(n);
        }
        if let Some(l) = self.space.l {
            recipe = recipe.blow_ups(l);
        }
        recipe.summarize()?;
        Ok(recipe)
    }

    /// Inverse of `to_recipe` for trees of the shape it produces.
    pub fn from_recipe(recipe: &SpaceRecipe) -> Result<Self, CliError> {
        let unsupported = || {
            CliError::Config(format!(
                "{} is not expressible as a recipe file (order must be quotient, surgery, blow-ups)",
                recipe
            ))
        };
        let mut node = recipe;
        let mut l = None;
        let mut surgeries = None;
        if let SpaceRecipe::BlowUps { inner, l: n } = node {
            l = Some(*n);
            node = inner;
        }
        if let SpaceRecipe::Surgery { inner, count } = node {
            surgeries = Some(*count);
            node = inner;
        }
        let (variant, k, group, bundle) = match node {
            SpaceRecipe::MultiTaubNut { k } => (Variant::MultiTaubNut, *k, None, None),
            SpaceRecipe::Quotient { inner, action, bundle } => {
                let SpaceRecipe::MultiTaubNut { k } = inner.as_ref() else {
                    return Err(unsupported());
                };
                let fixed_points = action
                    .fixed_points
                    .iter()
                    .map(|fp| FixedPointEntry {
                        element: fp.element,
                        angles: [angle_text(&fp.angles.theta1), angle_text(&fp.angles.theta2)],
                    })
                    .collect();
                (
                    Variant::Quotient,
                    *k,
                    Some(GroupSection {
                        order: action.order,
                        fixed_points,
                    }),
                    Some(BundleSection {
                        euler_number: bundle.euler_number,
                    }),
                )
            }
            _ => return Err(unsupported()),
        };
        Ok(Self {
            space: SpaceSection {
                variant,
                k,
                surgeries,
                l,
            },
            group,
            bundle,
            numeric: None,
        })
    }
}

pub fn angle_text(a: &Angle) -> String {
    match a {
        Angle::PiFraction(q) => fmt_rational(q),
        Angle::Radians(x) => format!("{:?}rad", x),
    }
}
