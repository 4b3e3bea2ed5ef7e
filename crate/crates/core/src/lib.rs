//! Conformal geometric algebra meets of circles, lines, spheres and planes.
//!
//! The crate is layered:
//!
//! - [`algebra`]: dense Clifford algebra Cl(p,q) with the geometric, outer,
//!   contraction and inner products.
//! - [`conformal`]: the conformal model of Euclidean 3-space in Cl(4,1) and
//!   constructors for points, point pairs, lines, circles, planes and spheres.
//! - [`meet`]: the meet `M = (V1 ⌋ J⁻¹) ⌋ V2` for coplanar circle/circle and
//!   circle/line pairs and for sphere/sphere and sphere/plane pairs, with
//!   extraction of the (possibly virtual) intersection.
//! - [`locus`]: sweeps over the center distance and the hyperbolic loci of
//!   virtual intersections.
//! - [`oracle`]: classical radical-line / radical-plane geometry used to
//!   cross-check the algebra.
//! - [`scene`]: scene files and the record formats written by the CLI.

pub mod algebra;
pub mod conformal;
pub mod error;
pub mod locus;
pub mod meet;
pub mod oracle;
pub mod scene;
pub mod vector;

pub use algebra::{BladeCheck, Multivector, Signature};
pub use conformal::{ConformalObject, ObjectKind, Params, PointPairDecomposition};
pub use error::{Error, Result};
pub use vector::EuclideanVector;
