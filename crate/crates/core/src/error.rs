use thiserror::Error;

use crate::algebra::Signature;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("signature mismatch: Cl({},{}) vs Cl({},{})", .left.p(), .left.q(), .right.p(), .right.q())]
    SignatureMismatch { left: Signature, right: Signature },
    #[error("dimension {0} exceeds the supported maximum of 8")]
    DimensionTooLarge(usize),
    #[error("expected {expected} coefficients, found {found}")]
    CoefficientCount { expected: usize, found: usize },
    #[error("element is not a blade")]
    NotABlade,
    #[error("null blade has no inverse")]
    NullBlade,
    #[error("point at infinity has no Euclidean coordinates")]
    PointAtInfinity,
    #[error("point pair from coincident points")]
    DegeneratePair,
    #[error("point pair is a flat pencil (contains infinity)")]
    FlatPencil,
    #[error("points are collinear")]
    CollinearPoints,
    #[error("points are coplanar")]
    CoplanarPoints,
    #[error("circle center does not lie in the plane of its bivector through the origin")]
    CenterOffPlane,
    #[error("radius must be positive and finite, got {0}")]
    InvalidRadius(f64),
    #[error("{0} must be a nonzero finite vector")]
    InvalidDirection(&'static str),
    #[error("plane bivector must be a unit Euclidean 2-blade")]
    InvalidPlane,
    #[error("{0} is not a {1}")]
    WrongKind(&'static str, &'static str),
    #[error("objects are not coplanar")]
    NotCoplanar,
    #[error("unsupported pair of objects: {0} and {1}")]
    Unsupported(&'static str, &'static str),
    #[error("circles are concentric")]
    ConcentricCircles,
    #[error("spheres are concentric")]
    ConcentricSpheres,
    #[error("meet is not tangent")]
    NotTangent,
    #[error("limit blade deviates from the meet by {0:e} (relative)")]
    TangentMismatch(f64),
    #[error("sweep distance must be positive, got {0}")]
    InvalidDistance(f64),
    #[error("non-finite value in {0}")]
    NonFinite(&'static str),
}
