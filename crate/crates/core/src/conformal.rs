//! The conformal model of Euclidean 3-space in Cl(4,1).
//!
//! Basis order is `e1, e2, e3, e+, e-` with `e+² = 1`, `e-² = -1`. The null
//! vectors are `n = e- + e+` (infinity) and `n̄ = ½(e- - e+)` (origin), so that
//! `n² = n̄² = 0`, `n∗n̄ = -1` and `N = n∧n̄ = e+e-` with `N² = 1`.
//!
//! A Euclidean point `p` embeds as `P = p + ½p²n + n̄`. Such points satisfy
//! `P∗n = -1`; that is the normalization used throughout.
//! (`P∗n̄ = -½p²`, so only the origin is normalized by `n̄`.)
//!
//! Plane orientations are carried as unit normals `m`; the corresponding unit
//! bivector is `I_c = m I` with `I = e1e2e3`, which gives `I_c² = -1`.

use crate::algebra::{blade_grade, Multivector, Signature, BLADE_TOL};
use crate::error::{Error, Result};
use crate::vector::EuclideanVector;

pub const E1: usize = 1;
pub const E2: usize = 2;
pub const E3: usize = 4;
pub const E_PLUS: usize = 8;
pub const E_MINUS: usize = 16;
const EUCLIDEAN_MASK: usize = E1 | E2 | E3;
const MINKOWSKI_MASK: usize = E_PLUS | E_MINUS;

/// Relative tolerance for collinearity, coplanarity and incidence tests.
pub const GEOMETRY_TOL: f64 = 1e-9;

pub fn sig() -> Signature {
    Signature::conformal3()
}

/// Point at infinity `n`.
pub fn n_inf() -> Multivector {
    let mut m = Multivector::zero(sig());
    m.set_coeff(E_MINUS, 1.0);
    m.set_coeff(E_PLUS, 1.0);
    m
}

/// Origin `n̄`.
pub fn n_origin() -> Multivector {
    let mut m = Multivector::zero(sig());
    m.set_coeff(E_MINUS, 0.5);
    m.set_coeff(E_PLUS, -0.5);
    m
}

/// Minkowski plane bivector `N = n∧n̄`.
pub fn minkowski() -> Multivector {
    n_inf().outer(&n_origin()).expect("same signature")
}

/// Euclidean pseudoscalar `I = e1e2e3`.
pub fn pseudoscalar3() -> Multivector {
    Multivector::blade(sig(), EUCLIDEAN_MASK, 1.0)
}

/// Euclidean vector as a grade-1 element of Cl(4,1).
pub fn euclidean(v: EuclideanVector) -> Multivector {
    let mut m = Multivector::zero(sig());
    m.set_coeff(E1, v.x);
    m.set_coeff(E2, v.y);
    m.set_coeff(E3, v.z);
    m
}

/// The `e1, e2, e3` coefficients of a multivector.
pub fn euclidean_part(m: &Multivector) -> EuclideanVector {
    EuclideanVector::new(m.coeff(E1), m.coeff(E2), m.coeff(E3))
}

/// `C = c + ½c²n + n̄`.
pub fn conformal_point(c: EuclideanVector) -> Multivector {
    let mut m = euclidean(c);
    let h = 0.5 * c.norm_squared();
    m.set_coeff(E_PLUS, h - 0.5);
    m.set_coeff(E_MINUS, h + 0.5);
    m
}

/// Unit plane bivector `m I` for a (not necessarily unit) normal `m`.
pub fn plane_bivector(normal: EuclideanVector) -> Result<Multivector> {
    let m = normal
        .normalized()
        .ok_or(Error::InvalidDirection("plane normal"))?;
    Ok(&euclidean(m) * &pseudoscalar3())
}

/// Normal vector dual to a Euclidean bivector, `b = m I`. Not normalized.
pub fn bivector_normal(b: &Multivector) -> EuclideanVector {
    EuclideanVector::new(b.coeff(E2 | E3), -b.coeff(E1 | E3), b.coeff(E1 | E2))
}

/// Euclidean factor `B` of the `B N` terms of a multivector.
pub fn minkowski_factor(m: &Multivector) -> Multivector {
    let mut out = Multivector::zero(sig());
    for (b, &c) in m.coeffs().iter().enumerate() {
        if b & MINKOWSKI_MASK == MINKOWSKI_MASK {
            out.set_coeff(b & EUCLIDEAN_MASK, c);
        }
    }
    out
}

/// Euclidean factor `A` of the `A n` terms of a flat `A n + B N`.
fn infinity_factor(flat: &Multivector) -> Multivector {
    let mut out = Multivector::zero(sig());
    for (b, &c) in flat.coeffs().iter().enumerate() {
        if b & MINKOWSKI_MASK == E_PLUS {
            out.set_coeff(b & EUCLIDEAN_MASK, c);
        }
    }
    out
}

fn wedge(a: &Multivector, b: &Multivector) -> Multivector {
    a.outer(b).expect("conformal signature")
}

/// True when `n ∧ blade` vanishes relative to the size of the blade.
pub fn is_flat(blade: &Multivector) -> bool {
    let scale = blade.norm_inf();
    wedge(&n_inf(), blade).is_zero(GEOMETRY_TOL * scale)
}

/// Center of a round (point pair, circle, sphere), read from `X n X`.
pub fn round_center(x: &Multivector) -> Result<EuclideanVector> {
    let w = &(x * &n_inf()) * x;
    let w = w.grade(1);
    let weight = -w.scalar_product(&n_inf())?;
    if weight.abs() <= BLADE_TOL * w.norm_inf() || weight == 0.0 {
        return Err(Error::PointAtInfinity);
    }
    Ok(euclidean_part(&w) / weight)
}

/// Signed squared radius of a round, `(-1)^k X² / (X∧n)²` for grade `k`.
pub fn round_radius_squared(x: &Multivector) -> Result<f64> {
    let carrier = wedge(x, &n_inf());
    let denom = carrier.scalar_product(&carrier)?;
    if denom.abs() <= BLADE_TOL * carrier.norm_inf().powi(2) || denom == 0.0 {
        return Err(Error::FlatPencil);
    }
    let sign = if x.dominant_grade() % 2 == 0 {
        1.0
    } else {
        -1.0
    };
    Ok(sign * x.scalar_product(x)? / denom)
}

/// Direction and scale of a flat `A n + B N` whose `B` is a Euclidean k-blade.
fn flat_factor(x: &Multivector) -> (Multivector, f64) {
    let b = minkowski_factor(x);
    let sq = b.scalar_product(&b).expect("conformal signature");
    (b, sq.abs().sqrt())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ObjectKind {
    Point,
    PointPair,
    Line,
    Circle,
    Plane,
    Sphere,
}

impl ObjectKind {
    pub fn grade(self) -> usize {
        match self {
            Self::Point => 1,
            Self::PointPair => 2,
            Self::Line | Self::Circle => 3,
            Self::Plane | Self::Sphere => 4,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Self::Point => "point",
            Self::PointPair => "point pair",
            Self::Line => "line",
            Self::Circle => "circle",
            Self::Plane => "plane",
            Self::Sphere => "sphere",
        }
    }

    pub fn is_flat(self) -> bool {
        matches!(self, Self::Line | Self::Plane)
    }
}

/// Midpoint, unit direction and signed squared half-distance of a point pair.
///
/// For `r_squared ≥ 0` the pair is `c ± √r² p̂`; negative values describe a
/// virtual pair with imaginary separation.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PointPairDecomposition {
    pub r_squared: f64,
    pub c: EuclideanVector,
    pub p_hat: EuclideanVector,
}

impl PointPairDecomposition {
    /// The two real points, or `None` for a virtual pair.
    pub fn points(&self) -> Option<(EuclideanVector, EuclideanVector)> {
        if self.r_squared < 0.0 {
            return None;
        }
        let r = self.r_squared.sqrt();
        Some((self.c + self.p_hat * r, self.c - self.p_hat * r))
    }
}

/// Cached Euclidean data of a conformal object.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Params {
    Point {
        position: EuclideanVector,
    },
    PointPair(PointPairDecomposition),
    Line {
        /// Foot of the perpendicular from the origin.
        point: EuclideanVector,
        direction: EuclideanVector,
    },
    Circle {
        center: EuclideanVector,
        radius: f64,
        /// Unit normal `m` of the plane bivector `I_c = m I`.
        normal: EuclideanVector,
    },
    Plane {
        /// Foot of the perpendicular from the origin.
        point: EuclideanVector,
        normal: EuclideanVector,
    },
    Sphere {
        center: EuclideanVector,
        radius: f64,
    },
}

/// A validated blade of Cl(4,1) together with its Euclidean parameters.
#[derive(Clone, Debug, PartialEq)]
pub struct ConformalObject {
    blade: Multivector,
    params: Params,
}

impl ConformalObject {
    pub fn blade(&self) -> &Multivector {
        &self.blade
    }

    pub fn params(&self) -> &Params {
        &self.params
    }

    pub fn kind(&self) -> ObjectKind {
        match self.params {
            Params::Point { .. } => ObjectKind::Point,
            Params::PointPair(_) => ObjectKind::PointPair,
            Params::Line { .. } => ObjectKind::Line,
            Params::Circle { .. } => ObjectKind::Circle,
            Params::Plane { .. } => ObjectKind::Plane,
            Params::Sphere { .. } => ObjectKind::Sphere,
        }
    }

    /// Euclidean position of a point object.
    pub fn position(&self) -> Result<EuclideanVector> {
        match self.params {
            Params::Point { position } => Ok(position),
            _ => Err(Error::WrongKind(self.kind().name(), "point")),
        }
    }

    /// Unit plane bivector of a circle or plane.
    pub fn plane_bivector(&self) -> Result<Multivector> {
        match self.params {
            Params::Circle { normal, .. } | Params::Plane { normal, .. } => plane_bivector(normal),
            _ => Err(Error::WrongKind(self.kind().name(), "circle or plane")),
        }
    }

    /// Interprets an arbitrary blade of Cl(4,1) as a conformal object.
    ///
    /// The kind follows from the grade and from whether the blade contains the
    /// point at infinity. Parameters are read off the blade itself.
    pub fn from_blade(blade: Multivector) -> Result<Self> {
        if blade.signature() != sig() {
            return Err(Error::SignatureMismatch {
                left: blade.signature(),
                right: sig(),
            });
        }
        if !blade.is_finite() {
            return Err(Error::NonFinite("blade"));
        }
        let check = blade.blade_check();
        if !check.is_blade || blade.norm_inf() == 0.0 {
            return Err(Error::NotABlade);
        }
        let flat = is_flat(&blade);
        let params = match (check.grade, flat) {
            (1, _) => Params::Point {
                position: extract_point(&blade)?,
            },
            (2, false) => Params::PointPair(decompose_blade_pair(&blade)?),
            (3, true) => line_params(&blade)?,
            (3, false) => circle_params(&blade)?,
            (4, true) => plane_params(&blade)?,
            (4, false) => sphere_params(&blade)?,
            _ => return Err(Error::NotABlade),
        };
        Ok(Self { blade, params })
    }
}

/// Conformal point `p + ½p²n + n̄`.
pub fn embed_point(p: EuclideanVector) -> ConformalObject {
    ConformalObject {
        blade: conformal_point(p),
        params: Params::Point { position: p },
    }
}

/// Euclidean coordinates of a (possibly unnormalized) conformal point.
pub fn extract_point(point: &Multivector) -> Result<EuclideanVector> {
    let scale = point.norm_inf();
    let weight = -point.scalar_product(&n_inf())?;
    if weight.abs() <= BLADE_TOL * scale || weight == 0.0 {
        return Err(Error::PointAtInfinity);
    }
    let square = point.scalar_product(point)?;
    if (point - &point.grade(1)).norm_inf() > BLADE_TOL * scale
        || square.abs() > BLADE_TOL * scale * scale
    {
        return Err(Error::NotABlade);
    }
    Ok(euclidean_part(point) / weight)
}

fn point_position(p: &ConformalObject) -> Result<EuclideanVector> {
    match p.params {
        Params::Point { position } => Ok(position),
        _ => Err(Error::WrongKind(p.kind().name(), "point")),
    }
}

fn extent(points: &[EuclideanVector]) -> f64 {
    let mut s: f64 = 0.0;
    for a in points {
        for b in points {
            s = s.max(a.distance(*b));
        }
    }
    s
}

/// The point pair `P1∧P2`.
pub fn point_pair(p1: &ConformalObject, p2: &ConformalObject) -> Result<ConformalObject> {
    let (a, b) = (point_position(p1)?, point_position(p2)?);
    let dist = a.distance(b);
    if dist <= GEOMETRY_TOL * a.norm().max(b.norm()).max(1.0) {
        return Err(Error::DegeneratePair);
    }
    let r = 0.5 * dist;
    let params = PointPairDecomposition {
        r_squared: r * r,
        c: (a + b) * 0.5,
        p_hat: (a - b) / dist,
    };
    Ok(ConformalObject {
        blade: wedge(p1.blade(), p2.blade()),
        params: Params::PointPair(params),
    })
}

fn decompose_blade_pair(v: &Multivector) -> Result<PointPairDecomposition> {
    let carrier = wedge(v, &n_inf());
    if carrier.is_zero(GEOMETRY_TOL * v.norm_inf()) {
        return Err(Error::FlatPencil);
    }
    let r_squared = round_radius_squared(v)?;
    let c = round_center(v)?;
    let (dir, len) = flat_factor(&carrier);
    let p_hat = -euclidean_part(&dir) / len;
    Ok(PointPairDecomposition {
        r_squared,
        c,
        p_hat,
    })
}

/// Signed `r²`, midpoint and direction of a point pair blade, real or virtual.
///
/// `p̂` follows the orientation of the blade: `P1∧P2` yields `(p1 - p2)/|p1 - p2|`,
/// and scaling the blade by a negative factor reverses it.
pub fn decompose_point_pair(v: &Multivector) -> Result<PointPairDecomposition> {
    let check = v.blade_check();
    if !check.is_blade || check.grade != 2 {
        return Err(Error::WrongKind("blade", "point pair"));
    }
    decompose_blade_pair(v)
}

fn line_params(blade: &Multivector) -> Result<Params> {
    let (dir, len) = flat_factor(blade);
    if len == 0.0 {
        return Err(Error::PointAtInfinity);
    }
    let direction = -euclidean_part(&dir) / len;
    let moment = bivector_normal(&infinity_factor(blade)) / len;
    Ok(Params::Line {
        point: moment.cross(direction),
        direction,
    })
}

/// The line `P1∧P2∧n` through two points.
pub fn line_through(p1: &ConformalObject, p2: &ConformalObject) -> Result<ConformalObject> {
    let pair = point_pair(p1, p2)?;
    let blade = wedge(pair.blade(), &n_inf());
    let params = line_params(&blade)?;
    Ok(ConformalObject { blade, params })
}

/// The unit line `p̂∧C∧n` through `point` with direction `direction`.
pub fn line_from(point: EuclideanVector, direction: EuclideanVector) -> Result<ConformalObject> {
    if !point.is_finite() {
        return Err(Error::NonFinite("line point"));
    }
    let dir = direction
        .normalized()
        .ok_or(Error::InvalidDirection("line direction"))?;
    let blade = wedge(&wedge(&euclidean(dir), &conformal_point(point)), &n_inf());
    let params = line_params(&blade)?;
    Ok(ConformalObject { blade, params })
}

fn circle_params(blade: &Multivector) -> Result<Params> {
    let carrier = wedge(blade, &n_inf());
    let (b, len) = flat_factor(&carrier);
    if len == 0.0 {
        return Err(Error::FlatPencil);
    }
    let normal = -bivector_normal(&b) / len;
    let r2 = round_radius_squared(blade)?;
    Ok(Params::Circle {
        center: round_center(blade)?,
        radius: r2.max(0.0).sqrt(),
        normal,
    })
}

/// The circle `P1∧P2∧P3` through three points.
pub fn circle_through(
    p1: &ConformalObject,
    p2: &ConformalObject,
    p3: &ConformalObject,
) -> Result<ConformalObject> {
    let pts = [
        point_position(p1)?,
        point_position(p2)?,
        point_position(p3)?,
    ];
    let s = extent(&pts);
    let area = (pts[0] - pts[1]).cross(pts[1] - pts[2]).norm();
    if area <= GEOMETRY_TOL * s * s {
        return Err(Error::CollinearPoints);
    }
    let blade = wedge(&wedge(p1.blade(), p2.blade()), p3.blade());
    let params = circle_params(&blade)?;
    Ok(ConformalObject { blade, params })
}

fn validate_radius(r: f64) -> Result<()> {
    if !(r.is_finite() && r > 0.0) {
        return Err(Error::InvalidRadius(r));
    }
    Ok(())
}

/// Normal of a unit Euclidean bivector, checking `I_c² = -1`.
pub fn unit_bivector_normal(plane: &Multivector) -> Result<EuclideanVector> {
    if plane.signature() != sig() {
        return Err(Error::InvalidPlane);
    }
    let off_plane = plane
        .coeffs()
        .iter()
        .enumerate()
        .any(|(b, &c)| c != 0.0 && (blade_grade(b) != 2 || b & MINKOWSKI_MASK != 0));
    let sq = plane.scalar_product(plane)?;
    if off_plane || (sq + 1.0).abs() > GEOMETRY_TOL {
        return Err(Error::InvalidPlane);
    }
    Ok(bivector_normal(plane))
}

/// The circle `(C - ½r²n) I_c N` with center `c` in the plane `I_c` through the origin.
pub fn circle_from(c: EuclideanVector, r: f64, plane: &Multivector) -> Result<ConformalObject> {
    validate_radius(r)?;
    if !c.is_finite() {
        return Err(Error::NonFinite("circle center"));
    }
    let normal = unit_bivector_normal(plane)?;
    if c.dot(normal).abs() > GEOMETRY_TOL * c.norm().max(1.0) {
        return Err(Error::CenterOffPlane);
    }
    let dual = &conformal_point(c) - &n_inf().scale(0.5 * r * r);
    let blade = &(&dual * plane) * &minkowski();
    Ok(ConformalObject {
        blade,
        params: Params::Circle {
            center: c,
            radius: r,
            normal,
        },
    })
}

/// Circle with center `c` and radius `r` in the plane through `c` with the
/// given normal. Falls back to [`circle_from`] when that plane contains the
/// origin; otherwise the blade is the wedge of three points on the circle.
pub fn circle_in_plane(
    c: EuclideanVector,
    r: f64,
    normal: EuclideanVector,
) -> Result<ConformalObject> {
    validate_radius(r)?;
    if !c.is_finite() {
        return Err(Error::NonFinite("circle center"));
    }
    let m = normal
        .normalized()
        .ok_or(Error::InvalidDirection("circle normal"))?;
    if c.dot(m) == 0.0 {
        return circle_from(c, r, &plane_bivector(m)?);
    }
    let helper = if m.x.abs() <= m.y.abs() && m.x.abs() <= m.z.abs() {
        EuclideanVector::E1
    } else if m.y.abs() <= m.z.abs() {
        EuclideanVector::E2
    } else {
        EuclideanVector::E3
    };
    let u = m
        .cross(helper)
        .normalized()
        .expect("helper axis is not parallel");
    let w = m.cross(u);
    let [p1, p2, p3] = [c + u * r, c + w * r, c - u * r].map(conformal_point);
    let mut blade = wedge(&wedge(&p1, &p2), &p3);
    if let Params::Circle { normal: found, .. } = circle_params(&blade)? {
        if found.dot(m) < 0.0 {
            blade = -blade;
        }
    }
    Ok(ConformalObject {
        blade,
        params: Params::Circle {
            center: c,
            radius: r,
            normal: m,
        },
    })
}

fn plane_params(blade: &Multivector) -> Result<Params> {
    let (b, alpha) = flat_factor(blade);
    if alpha == 0.0 {
        return Err(Error::PointAtInfinity);
    }
    let normal = -bivector_normal(&b) / alpha;
    let offset = infinity_factor(blade).coeff(EUCLIDEAN_MASK) / alpha;
    Ok(Params::Plane {
        point: normal * offset,
        normal,
    })
}

/// The plane `P1∧P2∧P3∧n` through three points.
pub fn plane_through(
    p1: &ConformalObject,
    p2: &ConformalObject,
    p3: &ConformalObject,
) -> Result<ConformalObject> {
    let circle = circle_through(p1, p2, p3)?;
    let blade = wedge(circle.blade(), &n_inf());
    let params = plane_params(&blade)?;
    Ok(ConformalObject { blade, params })
}

/// The unit plane `C∧I_c∧n` (`α = 1`) through `point` with normal `normal`.
pub fn plane_from(point: EuclideanVector, normal: EuclideanVector) -> Result<ConformalObject> {
    if !point.is_finite() {
        return Err(Error::NonFinite("plane point"));
    }
    let ic = plane_bivector(normal)?;
    let blade = wedge(&wedge(&conformal_point(point), &ic), &n_inf());
    let params = plane_params(&blade)?;
    Ok(ConformalObject { blade, params })
}

fn sphere_params(blade: &Multivector) -> Result<Params> {
    let r2 = round_radius_squared(blade)?;
    Ok(Params::Sphere {
        center: round_center(blade)?,
        radius: r2.max(0.0).sqrt(),
    })
}

/// The sphere `P1∧P2∧P3∧P4` through four points.
pub fn sphere_through(
    p1: &ConformalObject,
    p2: &ConformalObject,
    p3: &ConformalObject,
    p4: &ConformalObject,
) -> Result<ConformalObject> {
    let pts = [
        point_position(p1)?,
        point_position(p2)?,
        point_position(p3)?,
        point_position(p4)?,
    ];
    let s = extent(&pts);
    let volume = (pts[0] - pts[1])
        .cross(pts[1] - pts[2])
        .dot(pts[2] - pts[3])
        .abs();
    if volume <= GEOMETRY_TOL * s * s * s {
        return Err(Error::CoplanarPoints);
    }
    let blade = wedge(
        &wedge(&wedge(p1.blade(), p2.blade()), p3.blade()),
        p4.blade(),
    );
    let params = sphere_params(&blade)?;
    Ok(ConformalObject { blade, params })
}

/// The sphere `(C - ½r²n) I N`.
pub fn sphere_from(c: EuclideanVector, r: f64) -> Result<ConformalObject> {
    validate_radius(r)?;
    if !c.is_finite() {
        return Err(Error::NonFinite("sphere center"));
    }
    let dual = &conformal_point(c) - &n_inf().scale(0.5 * r * r);
    let blade = &(&dual * &pseudoscalar3()) * &minkowski();
    Ok(ConformalObject {
        blade,
        params: Params::Sphere {
            center: c,
            radius: r,
        },
    })
}
