use thiserror::Error;

use crate::arith::RationalPoint;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("invalid homogeneous vector: {0}")]
    InvalidHomogeneous(String),

    #[error("point {0} lies outside the unit cube")]
    OutsideCube(RationalPoint),

    #[error("vertices are not affinely independent")]
    AffinelyDependent,

    #[error("simplex is not regular")]
    NotRegular,

    #[error("simplex has dimension zero")]
    ZeroDimensional,

    #[error("point {0} lies outside the support of the triangulation")]
    PointOutsideSupport(RationalPoint),

    #[error("point {0} lies outside the domain of the map")]
    PointOutsideDomain(RationalPoint),

    #[error("triangulation is not a closed domain")]
    NotClosedDomain,

    #[error("polyhedron is not contained in the domain of the map")]
    NotASubset,

    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),

    #[error("term of arity {arity} used in dimension {dim}")]
    Arity { arity: usize, dim: usize },

    #[error("syntax error at byte {offset}: {message}")]
    Syntax { offset: usize, message: String },

    #[error("map is not idempotent: f(f(p)) != f(p) at p = {witness}")]
    NotIdempotent { witness: RationalPoint },

    #[error("affine piece on simplex {simplex} has non-integer coefficients")]
    NotIntegral { simplex: usize },

    #[error("pieces disagree at shared vertex {0}")]
    Discontinuous(RationalPoint),

    #[error("vertex image {0} lies outside the unit cube")]
    ImageOutsideCube(RationalPoint),

    #[error("desingularization exceeded {0} blow-ups")]
    BlowUpCap(usize),

    #[error("stage {stage} exceeds the configured cap {cap}")]
    StageCap { stage: usize, cap: usize },

    #[error("unknown fixture `{0}`")]
    UnknownFixture(String),

    #[error("invalid triangulation: {0}")]
    InvalidTriangulation(String),

    #[error("format error: {0}")]
    Format(String),
}
