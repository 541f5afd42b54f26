use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum InvariantError {
    #[error("degenerate rotation angle {0}: fixed point is not isolated (angle must lie in (0, 2π))")]
    DegenerateAngle(String),
    #[error("malformed recipe: {0}")]
    MalformedRecipe(String),
    #[error("gap {0} is numerically zero but not exactly representable; equality cannot be certified")]
    InexactEquality(String),
    #[error("signature is not rational: defect sum {0} has irrational part")]
    NonRationalSignature(String),
    #[error("cannot parse angle {0:?}")]
    AngleSyntax(String),
}
