//! Classical intersection geometry by radical lines and radical planes.
//!
//! Nothing here touches the Clifford algebra; these functions are the ground
//! truth the meet computations are checked against. The signed squared
//! half-chord `h²` is reported in every regime, so virtual intersections
//! (`h² < 0`) can be compared as well as real ones.

use crate::error::{Error, Result};
use crate::vector::EuclideanVector;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AnalyticKind {
    TwoPoints,
    OnePoint,
    NoIntersection,
    CircleOfIntersection,
    TangentPoint,
}

#[derive(Clone, Debug, PartialEq)]
pub struct AnalyticResult {
    pub kind: AnalyticKind,
    /// Signed squared half-chord (2D) or squared circle radius (3D).
    pub h_squared: f64,
    /// Foot of the radical line / center of the radical-plane circle.
    pub center: EuclideanVector,
    /// Signed distance from the first center to `center` along the center line.
    pub offset: f64,
    /// Real intersection points (2D only).
    pub points: Vec<EuclideanVector>,
    /// Unit normal of the intersection circle's plane (3D only).
    pub normal: Option<EuclideanVector>,
}

impl AnalyticResult {
    /// Radius of a real intersection circle.
    pub fn radius(&self) -> Option<f64> {
        (self.h_squared >= 0.0 && self.normal.is_some()).then(|| self.h_squared.sqrt())
    }
}

fn unit(v: EuclideanVector, what: &'static str) -> Result<EuclideanVector> {
    v.normalized().ok_or(Error::InvalidDirection(what))
}

fn planar(
    h_squared: f64,
    center: EuclideanVector,
    offset: f64,
    chord: EuclideanVector,
    scale: f64,
    tol: f64,
) -> AnalyticResult {
    let (kind, points) = if h_squared.abs() <= tol * scale {
        (AnalyticKind::OnePoint, vec![center])
    } else if h_squared > 0.0 {
        let h = h_squared.sqrt();
        (
            AnalyticKind::TwoPoints,
            vec![center + chord * h, center - chord * h],
        )
    } else {
        (AnalyticKind::NoIntersection, Vec::new())
    };
    AnalyticResult {
        kind,
        h_squared,
        center,
        offset,
        points,
        normal: None,
    }
}

fn spatial(
    h_squared: f64,
    center: EuclideanVector,
    offset: f64,
    normal: EuclideanVector,
    scale: f64,
    tol: f64,
) -> AnalyticResult {
    let kind = if h_squared.abs() <= tol * scale {
        AnalyticKind::TangentPoint
    } else if h_squared > 0.0 {
        AnalyticKind::CircleOfIntersection
    } else {
        AnalyticKind::NoIntersection
    };
    AnalyticResult {
        kind,
        h_squared,
        center,
        offset,
        points: Vec::new(),
        normal: Some(normal),
    }
}

/// Two coplanar circles with plane normal `normal`.
///
/// Radical line at `a = (d² + r1² - r2²) / 2d` from `c1`, half-chord
/// `h² = r1² - a²`.
pub fn circle_circle_analytic(
    c1: EuclideanVector,
    r1: f64,
    c2: EuclideanVector,
    r2: f64,
    normal: EuclideanVector,
    tol: f64,
) -> Result<AnalyticResult> {
    let d = c1.distance(c2);
    if d == 0.0 {
        return Err(Error::ConcentricCircles);
    }
    let u = (c2 - c1) / d;
    let m = unit(normal, "plane normal")?;
    let a = (d * d + r1 * r1 - r2 * r2) / (2.0 * d);
    let h_squared = r1 * r1 - a * a;
    Ok(planar(h_squared, c1 + u * a, a, m.cross(u), r1 * r1, tol))
}

/// A circle and a coplanar line through `point` with direction `direction`.
pub fn circle_line_analytic(
    c1: EuclideanVector,
    r1: f64,
    point: EuclideanVector,
    direction: EuclideanVector,
    tol: f64,
) -> Result<AnalyticResult> {
    let t = unit(direction, "line direction")?;
    let foot = point + t * (c1 - point).dot(t);
    let d = c1.distance(foot);
    Ok(planar(r1 * r1 - d * d, foot, d, t, r1 * r1, tol))
}

/// Two spheres; the intersection circle lies in the radical plane.
pub fn sphere_sphere_analytic(
    c1: EuclideanVector,
    r1: f64,
    c2: EuclideanVector,
    r2: f64,
    tol: f64,
) -> Result<AnalyticResult> {
    let d = c1.distance(c2);
    if d == 0.0 {
        return Err(Error::ConcentricSpheres);
    }
    let u = (c2 - c1) / d;
    let a = (d * d + r1 * r1 - r2 * r2) / (2.0 * d);
    Ok(spatial(r1 * r1 - a * a, c1 + u * a, a, u, r1 * r1, tol))
}

/// A sphere and the plane through `point` with normal `normal`.
pub fn sphere_plane_analytic(
    c1: EuclideanVector,
    r1: f64,
    point: EuclideanVector,
    normal: EuclideanVector,
    tol: f64,
) -> Result<AnalyticResult> {
    let m = unit(normal, "plane normal")?;
    let s = (c1 - point).dot(m);
    let foot = c1 - m * s;
    Ok(spatial(r1 * r1 - s * s, foot, s.abs(), m, r1 * r1, tol))
}
