//! Full meets `M = (V1 ⌋ J⁻¹) ⌋ V2` of round and flat objects.
//!
//! Four configurations are supported: two coplanar circles, a circle and a
//! coplanar line (join `J = I_c N`), two spheres, and a sphere and a plane
//! (join `J = I N`). The meet is always evaluated with the contraction
//! products; [`closed_form`] holds the explicit expressions used to check it.
//!
//! The input blades follow fixed normalizations so that sign identities such
//! as `M∧n = -V2` hold literally:
//!
//! - circle: `(C - ½r²n) I_c N`, or its translate for planes off the origin,
//! - line: `p̂∧C∧n` with unit `p̂`,
//! - sphere: `(C - ½r²n) I N`,
//! - plane: `C∧I_c∧n` (`α = 1`).
//!
//! The squared radius of the meet is `+M²/(M∧n)²` in the plane and
//! `-M²/(M∧n)²` in space. A negative value is a virtual intersection.

pub mod closed_form;

use crate::algebra::Multivector;
use crate::conformal::{
    circle_from, conformal_point, euclidean, euclidean_part, line_from, n_inf, plane_bivector,
    plane_from, pseudoscalar3, sphere_from, unit_bivector_normal, ConformalObject, ObjectKind,
    Params, GEOMETRY_TOL,
};
use crate::error::{Error, Result};
use crate::vector::EuclideanVector;

/// Default relative tolerance for tangent classification.
pub const TANGENT_TOL: f64 = 1e-9;

/// A meet is degenerate when it vanishes relative to `|V1| |V2|`.
const DEGENERATE_TOL: f64 = 1e-12;

/// Allowed relative deviation of a tangent limit blade from the meet.
pub const LIMIT_TOL: f64 = 1e-8;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Configuration {
    CircleCircle,
    CircleLine,
    SphereSphere,
    SpherePlane,
}

impl Configuration {
    /// True for the configurations living in one plane (join `I_c N`).
    pub fn is_planar(self) -> bool {
        matches!(self, Self::CircleCircle | Self::CircleLine)
    }

    /// True when the second object is a flat.
    pub fn has_flat(self) -> bool {
        matches!(self, Self::CircleLine | Self::SpherePlane)
    }

    pub fn name(self) -> &'static str {
        match self {
            Self::CircleCircle => "circle-circle",
            Self::CircleLine => "circle-line",
            Self::SphereSphere => "sphere-sphere",
            Self::SpherePlane => "sphere-plane",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Classification {
    Real,
    Tangent,
    Virtual,
    Degenerate,
}

impl Classification {
    pub fn name(self) -> &'static str {
        match self {
            Self::Real => "real",
            Self::Tangent => "tangent",
            Self::Virtual => "virtual",
            Self::Degenerate => "degenerate",
        }
    }
}

/// `Tangent` if `|r²| ≤ eps·scale`, otherwise `Real` or `Virtual` by sign.
pub fn classify(r_squared: f64, scale: f64, eps: f64) -> Classification {
    if !r_squared.is_finite() {
        Classification::Degenerate
    } else if r_squared.abs() <= eps * scale {
        Classification::Tangent
    } else if r_squared > 0.0 {
        Classification::Real
    } else {
        Classification::Virtual
    }
}

/// Orientation of the meet read from its carrier.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Orientation {
    /// Unit direction `p̂` of the carrier line (planar configurations).
    Direction(EuclideanVector),
    /// Unit normal `m` of the carrier plane, `I_c = m I` (spatial configurations).
    PlaneNormal(EuclideanVector),
}

impl Orientation {
    pub fn vector(self) -> EuclideanVector {
        match self {
            Self::Direction(v) | Self::PlaneNormal(v) => v,
        }
    }
}

/// A join blade and its inverse.
#[derive(Clone, Debug, PartialEq)]
pub struct JoinBlade {
    join: Multivector,
    inverse: Multivector,
}

impl JoinBlade {
    pub fn new(join: Multivector) -> Result<Self> {
        let inverse = join.blade_inverse()?;
        Ok(Self { join, inverse })
    }

    pub fn join(&self) -> &Multivector {
        &self.join
    }

    pub fn inverse(&self) -> &Multivector {
        &self.inverse
    }
}

/// Everything extracted from one meet.
#[derive(Clone, Debug, PartialEq)]
pub struct MeetOutcome {
    pub configuration: Configuration,
    /// The meet blade `M`.
    pub meet: Multivector,
    /// `M∧n`: the line or plane carrying the (possibly virtual) intersection.
    pub carrier: Multivector,
    pub classification: Classification,
    /// Signed squared radius; `NaN` for degenerate meets.
    pub r_squared: f64,
    /// Midpoint of the point pair or center of the circle.
    pub center: EuclideanVector,
    /// Distance between the centers, or from the center to the flat.
    pub d: f64,
    /// Signed distance from `c1` to `center` along the center line.
    pub d1: f64,
    /// Radius of the first object, the reference scale for classification.
    pub r1: f64,
    pub orientation: Orientation,
}

impl MeetOutcome {
    /// Reclassifies with a different relative tangent tolerance.
    pub fn with_tolerance(mut self, eps: f64) -> Self {
        if self.classification != Classification::Degenerate {
            self.classification = classify(self.r_squared, self.r1 * self.r1, eps);
        }
        self
    }

    /// Real intersection points of a planar meet: two, one when tangent,
    /// none when virtual, degenerate or spatial.
    pub fn points(&self) -> Vec<EuclideanVector> {
        let Orientation::Direction(p_hat) = self.orientation else {
            return Vec::new();
        };
        match self.classification {
            Classification::Real => {
                let r = self.r_squared.sqrt();
                vec![self.center + p_hat * r, self.center - p_hat * r]
            }
            Classification::Tangent => vec![self.center],
            _ => Vec::new(),
        }
    }

    /// `√|r²|`: the real radius, or the modulus of the imaginary one.
    pub fn radius_modulus(&self) -> f64 {
        self.r_squared.abs().sqrt()
    }

    /// `r² + d1² - r1²`, zero on the circle/hyperbola locus.
    pub fn locus_residual(&self) -> f64 {
        self.r_squared + self.d1 * self.d1 - self.r1 * self.r1
    }
}

fn wedge(a: &Multivector, b: &Multivector) -> Multivector {
    a.outer(b).expect("conformal signature")
}

fn circle_data(obj: &ConformalObject) -> Option<(EuclideanVector, f64, EuclideanVector)> {
    match *obj.params() {
        Params::Circle {
            center,
            radius,
            normal,
        } => Some((center, radius, normal)),
        _ => None,
    }
}

fn sphere_data(obj: &ConformalObject) -> Option<(EuclideanVector, f64)> {
    match *obj.params() {
        Params::Sphere { center, radius } => Some((center, radius)),
        _ => None,
    }
}

fn line_data(obj: &ConformalObject) -> Option<(EuclideanVector, EuclideanVector)> {
    match *obj.params() {
        Params::Line { point, direction } => Some((point, direction)),
        _ => None,
    }
}

fn plane_data(obj: &ConformalObject) -> Option<(EuclideanVector, EuclideanVector)> {
    match *obj.params() {
        Params::Plane { point, normal } => Some((point, normal)),
        _ => None,
    }
}

fn close(a: f64, b: f64, scale: f64) -> bool {
    (a - b).abs() <= GEOMETRY_TOL * scale.max(1.0)
}

/// `J = I_c N` translated into the plane through `point` with normal `normal`.
fn plane_join(point: EuclideanVector, normal: EuclideanVector) -> Result<JoinBlade> {
    let flat = plane_from(point, normal)?;
    // C∧I_c∧n = c∧I_c n - I_c N, so the join is minus the unit plane.
    JoinBlade::new(-flat.blade())
}

fn space_join() -> Result<JoinBlade> {
    JoinBlade::new(&pseudoscalar3() * &crate::conformal::minkowski())
}

/// Join blade for one of the four supported configurations.
///
/// Planar pairs must lie in one plane; the join is then `I_c N` with the
/// first circle's plane bivector (translated if that plane misses the origin).
pub fn join_for(v1: &ConformalObject, v2: &ConformalObject) -> Result<JoinBlade> {
    use ObjectKind::*;
    match (v1.kind(), v2.kind()) {
        (Circle, Circle) | (Circle, Line) | (Line, Circle) => {
            let (circle, other) = if v1.kind() == Circle {
                (v1, v2)
            } else {
                (v2, v1)
            };
            let (c, _, m) = circle_data(circle).expect("circle");
            let offset = c.dot(m);
            let scale = c.norm();
            let in_plane = match *other.params() {
                Params::Circle { center, normal, .. } => {
                    m.cross(normal).norm() <= GEOMETRY_TOL
                        && close(center.dot(m), offset, scale.max(center.norm()))
                }
                Params::Line { point, direction } => {
                    direction.dot(m).abs() <= GEOMETRY_TOL
                        && close(point.dot(m), offset, scale.max(point.norm()))
                }
                _ => unreachable!(),
            };
            if !in_plane {
                return Err(Error::NotCoplanar);
            }
            plane_join(m * offset, m)
        }
        (Sphere, Sphere) | (Sphere, Plane) | (Plane, Sphere) => space_join(),
        (a, b) => Err(Error::Unsupported(a.name(), b.name())),
    }
}

/// `M = (V1 ⌋ J⁻¹) ⌋ V2`.
pub fn meet(v1: &Multivector, v2: &Multivector, join: &JoinBlade) -> Result<Multivector> {
    v1.left_contraction(join.inverse())?.left_contraction(v2)
}

/// Circle `-(C + ½r²n)∧{I_c + n(C⌋I_c)}`; equals `(C - ½r²n) I_c N` when the
/// plane contains the origin.
pub fn canonical_circle(
    c: EuclideanVector,
    r: f64,
    normal: EuclideanVector,
) -> Result<Multivector> {
    let plane = plane_bivector(normal)?;
    Ok(-closed_form::unit_circle(c, r * r, &plane))
}

/// Where the first object sits and how big it is.
struct Reference {
    c1: EuclideanVector,
    r1: f64,
    /// Unit vector from `c1` towards the second center or the flat.
    axis: Option<EuclideanVector>,
    d: f64,
    /// `|V1| |V2|`, the size below which the meet counts as zero.
    scale: f64,
}

fn analyze(configuration: Configuration, meet: Multivector, rf: &Reference) -> MeetOutcome {
    let carrier = wedge(&meet, &n_inf());
    let degenerate = MeetOutcome {
        configuration,
        meet: meet.clone(),
        carrier: carrier.clone(),
        classification: Classification::Degenerate,
        r_squared: f64::NAN,
        center: rf.c1,
        d: rf.d,
        d1: 0.0,
        r1: rf.r1,
        orientation: if configuration.is_planar() {
            Orientation::Direction(EuclideanVector::ZERO)
        } else {
            Orientation::PlaneNormal(EuclideanVector::ZERO)
        },
    };
    if !meet.is_finite() || meet.norm_inf() <= DEGENERATE_TOL * rf.scale {
        return degenerate;
    }
    let Ok(flat) = ConformalObject::from_blade(carrier.clone()) else {
        return degenerate;
    };
    let (center, orientation) = match (*flat.params(), configuration.is_planar()) {
        (Params::Line { point, direction }, true) => (
            point + direction * (rf.c1 - point).dot(direction),
            Orientation::Direction(direction),
        ),
        (Params::Plane { point, normal }, false) => (
            rf.c1 - normal * (rf.c1 - point).dot(normal),
            Orientation::PlaneNormal(normal),
        ),
        _ => return degenerate,
    };
    let sign = if configuration.is_planar() { 1.0 } else { -1.0 };
    let m2 = meet.scalar_product(&meet).expect("conformal");
    let k2 = carrier.scalar_product(&carrier).expect("conformal");
    let r_squared = sign * m2 / k2;
    let d1 = rf.axis.map_or(0.0, |u| (center - rf.c1).dot(u));
    MeetOutcome {
        configuration,
        classification: classify(r_squared, rf.r1 * rf.r1, TANGENT_TOL),
        meet,
        carrier,
        r_squared,
        center,
        d: rf.d,
        d1,
        r1: rf.r1,
        orientation,
    }
}

fn two_round_reference(
    c1: EuclideanVector,
    r1: f64,
    c2: EuclideanVector,
    r2: f64,
    v1: &Multivector,
    v2: &Multivector,
) -> Option<Reference> {
    let d = c1.distance(c2);
    let size = c1.norm().max(c2.norm()).max(r1).max(r2);
    if d <= GEOMETRY_TOL * size {
        return None;
    }
    Some(Reference {
        c1,
        r1,
        axis: Some((c2 - c1) / d),
        d,
        scale: v1.norm_inf() * v2.norm_inf(),
    })
}

fn flat_reference(
    c1: EuclideanVector,
    r1: f64,
    foot: EuclideanVector,
    v1: &Multivector,
    v2: &Multivector,
) -> Reference {
    let d = c1.distance(foot);
    let axis = (d > GEOMETRY_TOL * r1).then(|| (foot - c1) / d);
    Reference {
        c1,
        r1,
        axis,
        d,
        scale: v1.norm_inf() * v2.norm_inf(),
    }
}

fn circle_circle_general(
    c1: EuclideanVector,
    r1: f64,
    c2: EuclideanVector,
    r2: f64,
    normal: EuclideanVector,
) -> Result<MeetOutcome> {
    let v1 = canonical_circle(c1, r1, normal)?;
    let v2 = canonical_circle(c2, r2, normal)?;
    let rf = two_round_reference(c1, r1, c2, r2, &v1, &v2).ok_or(Error::ConcentricCircles)?;
    let join = plane_join(normal * c1.dot(normal), normal)?;
    Ok(analyze(
        Configuration::CircleCircle,
        meet(&v1, &v2, &join)?,
        &rf,
    ))
}

/// Meet of two circles with centers in the plane `I_c` through the origin.
pub fn circle_circle(
    c1: EuclideanVector,
    r1: f64,
    c2: EuclideanVector,
    r2: f64,
    plane: &Multivector,
) -> Result<MeetOutcome> {
    let a = circle_from(c1, r1, plane)?;
    let b = circle_from(c2, r2, plane)?;
    join_for(&a, &b)?;
    circle_circle_general(c1, r1, c2, r2, unit_bivector_normal(plane)?)
}

fn circle_line_general(
    c1: EuclideanVector,
    r1: f64,
    normal: EuclideanVector,
    point: EuclideanVector,
    direction: EuclideanVector,
) -> Result<MeetOutcome> {
    let v1 = canonical_circle(c1, r1, normal)?;
    let line = line_from(point, direction)?;
    let (foot_origin, dir) = line_data(&line).expect("line");
    let foot = foot_origin + dir * c1.dot(dir);
    let rf = flat_reference(c1, r1, foot, &v1, line.blade());
    let join = plane_join(normal * c1.dot(normal), normal)?;
    Ok(analyze(
        Configuration::CircleLine,
        meet(&v1, line.blade(), &join)?,
        &rf,
    ))
}

/// Meet of a circle (center in the plane `I_c` through the origin) with a
/// line in the same plane. The line is rescaled to `p̂∧C∧n`.
pub fn circle_line(
    c1: EuclideanVector,
    r1: f64,
    plane: &Multivector,
    line: &ConformalObject,
) -> Result<MeetOutcome> {
    let circle = circle_from(c1, r1, plane)?;
    let (point, direction) = line_data(line).ok_or(Error::WrongKind(line.kind().name(), "line"))?;
    join_for(&circle, line)?;
    circle_line_general(c1, r1, unit_bivector_normal(plane)?, point, direction)
}

/// Meet of two spheres.
pub fn sphere_sphere(
    c1: EuclideanVector,
    r1: f64,
    c2: EuclideanVector,
    r2: f64,
) -> Result<MeetOutcome> {
    let v1 = sphere_from(c1, r1)?;
    let v2 = sphere_from(c2, r2)?;
    let rf = two_round_reference(c1, r1, c2, r2, v1.blade(), v2.blade())
        .ok_or(Error::ConcentricSpheres)?;
    let join = space_join()?;
    Ok(analyze(
        Configuration::SphereSphere,
        meet(v1.blade(), v2.blade(), &join)?,
        &rf,
    ))
}

/// Meet of a sphere with a plane. The plane is rescaled to `α = 1`.
pub fn sphere_plane(c1: EuclideanVector, r1: f64, plane: &ConformalObject) -> Result<MeetOutcome> {
    let v1 = sphere_from(c1, r1)?;
    let (point, normal) =
        plane_data(plane).ok_or(Error::WrongKind(plane.kind().name(), "plane"))?;
    let v2 = plane_from(point, normal)?;
    let (_, m) = plane_data(&v2).expect("plane");
    let foot = c1 - m * (c1 - point).dot(m);
    let rf = flat_reference(c1, r1, foot, v1.blade(), v2.blade());
    let join = space_join()?;
    Ok(analyze(
        Configuration::SpherePlane,
        meet(v1.blade(), v2.blade(), &join)?,
        &rf,
    ))
}

/// Configuration for an ordered pair of object kinds, with a flag telling
/// whether the operands have to be swapped to put the round first.
pub fn configuration_for(a: ObjectKind, b: ObjectKind) -> Result<(Configuration, bool)> {
    use ObjectKind::*;
    match (a, b) {
        (Circle, Circle) => Ok((Configuration::CircleCircle, false)),
        (Circle, Line) => Ok((Configuration::CircleLine, false)),
        (Line, Circle) => Ok((Configuration::CircleLine, true)),
        (Sphere, Sphere) => Ok((Configuration::SphereSphere, false)),
        (Sphere, Plane) => Ok((Configuration::SpherePlane, false)),
        (Plane, Sphere) => Ok((Configuration::SpherePlane, true)),
        _ => Err(Error::Unsupported(a.name(), b.name())),
    }
}

/// Meet of two constructed objects.
///
/// The canonical blades are rebuilt from the cached parameters, so the
/// outcome does not depend on how the objects were scaled. Circles may lie
/// in any common plane. A flat given first is moved to the second slot.
pub fn meet_objects(a: &ConformalObject, b: &ConformalObject, eps: f64) -> Result<MeetOutcome> {
    let (configuration, swap) = configuration_for(a.kind(), b.kind())?;
    let (v1, v2) = if swap { (b, a) } else { (a, b) };
    let outcome = match configuration {
        Configuration::CircleCircle | Configuration::CircleLine => {
            join_for(v1, v2)?;
            let (c1, r1, m) = circle_data(v1).expect("circle");
            if let Some((c2, r2, _)) = circle_data(v2) {
                circle_circle_general(c1, r1, c2, r2, m)?
            } else {
                let (point, direction) = line_data(v2).expect("line");
                circle_line_general(c1, r1, m, point, direction)?
            }
        }
        Configuration::SphereSphere => {
            let (c1, r1) = sphere_data(v1).expect("sphere");
            let (c2, r2) = sphere_data(v2).expect("sphere");
            sphere_sphere(c1, r1, c2, r2)?
        }
        Configuration::SpherePlane => {
            let (c1, r1) = sphere_data(v1).expect("sphere");
            sphere_plane(c1, r1, v2)?
        }
    };
    Ok(outcome.with_tolerance(eps))
}

fn tangent_vector_blade(big_c: &Multivector, p_hat: EuclideanVector) -> Multivector {
    let cp = big_c.scalar_product(&euclidean(p_hat)).expect("conformal");
    let v = &euclidean(p_hat) + &n_inf().scale(cp);
    wedge(&v, big_c)
}

fn tangent_bivector_blade(big_c: &Multivector, plane: &Multivector) -> Multivector {
    let rhs = plane + &(&n_inf() * &big_c.left_contraction(plane).expect("conformal"));
    wedge(big_c, &rhs)
}

/// Limit of the meet blade at a tangency, from the tangent point `C`:
///
/// - two circles: `d {p̂ + (C∗p̂) n}∧C`,
/// - circle and line: `-{p̂ + (C∗p̂) n}∧C` with the line direction `p̂`,
/// - two spheres: `d C∧{I_c + n(C⌋I_c)}` with `I_c = ((c1 - c2)/d) I`,
/// - sphere and plane: `C∧{I_c + n(C⌋I_c)}` with the plane bivector `I_c`.
///
/// Returns the limit blade after checking that it matches the computed meet
/// to [`LIMIT_TOL`] relative.
pub fn tangent_limit(
    outcome: &MeetOutcome,
    v1: &ConformalObject,
    v2: &ConformalObject,
) -> Result<Multivector> {
    if outcome.classification != Classification::Tangent {
        return Err(Error::NotTangent);
    }
    let (round, other) = if v1.kind().is_flat() {
        (v2, v1)
    } else {
        (v1, v2)
    };
    let big_c = conformal_point(outcome.center);
    let wrong = || Error::Unsupported(v1.kind().name(), v2.kind().name());
    let limit = match outcome.configuration {
        Configuration::CircleCircle => {
            let (c1, _, m) = circle_data(round).ok_or_else(wrong)?;
            let (c2, _, _) = circle_data(other).ok_or_else(wrong)?;
            let d = c1.distance(c2);
            let p_hat = &euclidean((c2 - c1) / d) * &plane_bivector(m)?;
            tangent_vector_blade(&big_c, euclidean_part(&p_hat)).scale(d)
        }
        Configuration::CircleLine => {
            let (_, p_hat) = line_data(other).ok_or_else(wrong)?;
            -tangent_vector_blade(&big_c, p_hat)
        }
        Configuration::SphereSphere => {
            let (c1, _) = sphere_data(round).ok_or_else(wrong)?;
            let (c2, _) = sphere_data(other).ok_or_else(wrong)?;
            let d = c1.distance(c2);
            let plane = &euclidean((c1 - c2) / d) * &pseudoscalar3();
            tangent_bivector_blade(&big_c, &plane).scale(d)
        }
        Configuration::SpherePlane => {
            let (_, m) = plane_data(other).ok_or_else(wrong)?;
            tangent_bivector_blade(&big_c, &plane_bivector(m)?)
        }
    };
    let deviation = (&limit - &outcome.meet).norm_inf() / outcome.meet.norm_inf();
    if deviation > LIMIT_TOL {
        return Err(Error::TangentMismatch(deviation));
    }
    Ok(limit)
}
