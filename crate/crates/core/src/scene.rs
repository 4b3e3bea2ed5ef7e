//! Scene files and the records written by the `cga-meet` binary.
//!
//! A scene is a TOML document with two object tables:
//!
//! ```toml
//! tolerance = 1e-9
//!
//! [a]
//! kind = "circle"
//! center = [0.0, 0.0, 0.0]
//! radius = 1.0
//! plane = "e12"
//!
//! [b]
//! kind = "line"
//! center = [2.0, 0.0, 0.0]   # any point on the line
//! direction = [0.0, 1.0, 0.0]
//! ```
//!
//! Reals are printed with 17 significant digits so that output is
//! byte-stable and round-trips exactly.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize, Serializer};
use serde_json::value::RawValue;
use thiserror::Error;

use crate::conformal::{
    circle_in_plane, line_from, plane_from, sphere_from, ConformalObject, Params,
};
use crate::error::Error;
use crate::locus::{linspace, sweep, LocusConfig, LocusGeometry, LocusSample};
use crate::meet::closed_form::{round_flat_r_squared, two_round_r_squared};
use crate::meet::{
    configuration_for, meet_objects, Classification, Configuration, MeetOutcome, Orientation,
    TANGENT_TOL,
};
use crate::oracle::{
    circle_circle_analytic, circle_line_analytic, sphere_plane_analytic, sphere_sphere_analytic,
};
use crate::vector::EuclideanVector;

#[derive(Debug, Error)]
pub enum SceneError {
    #[error("malformed scene: {0}")]
    Parse(String),
    #[error("{field}: {message}")]
    Field { field: String, message: String },
    #[error(transparent)]
    Geometry(#[from] Error),
    #[error("degenerate meet: {0}")]
    Degenerate(String),
}

impl SceneError {
    fn field(field: impl Into<String>, message: impl Into<String>) -> Self {
        Self::Field {
            field: field.into(),
            message: message.into(),
        }
    }

    /// 2 for invalid input, 3 for geometry that degenerates during the computation.
    pub fn exit_code(&self) -> i32 {
        match self {
            Self::Geometry(
                Error::NullBlade
                | Error::NotABlade
                | Error::PointAtInfinity
                | Error::DegeneratePair
                | Error::FlatPencil,
            )
            | Self::Degenerate(_) => 3,
            _ => 2,
        }
    }
}

pub type SceneResult<T> = std::result::Result<T, SceneError>;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SceneKind {
    Circle,
    Line,
    Sphere,
    Plane,
}

/// Coordinate plane of a 2D object, named by its bivector.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CoordinatePlane {
    E12,
    E13,
    E23,
}

impl CoordinatePlane {
    pub fn normal(self) -> EuclideanVector {
        // e12 = e3 I, e13 = -e2 I, e23 = e1 I
        match self {
            Self::E12 => EuclideanVector::E3,
            Self::E13 => -EuclideanVector::E2,
            Self::E23 => EuclideanVector::E1,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ObjectSpec {
    pub kind: SceneKind,
    #[serde(default, alias = "point")]
    pub center: Option<[f64; 3]>,
    #[serde(default)]
    pub radius: Option<f64>,
    #[serde(default)]
    pub direction: Option<[f64; 3]>,
    #[serde(default)]
    pub normal: Option<[f64; 3]>,
    #[serde(default)]
    pub plane: Option<CoordinatePlane>,
}

fn default_tolerance() -> f64 {
    TANGENT_TOL
}

#[derive(Clone, Debug, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SceneSpec {
    pub a: ObjectSpec,
    pub b: ObjectSpec,
    #[serde(default = "default_tolerance")]
    pub tolerance: f64,
    #[serde(default)]
    pub d_min: Option<f64>,
    #[serde(default)]
    pub d_max: Option<f64>,
    #[serde(default)]
    pub steps: Option<usize>,
}

fn vector(field: &str, value: Option<[f64; 3]>) -> SceneResult<EuclideanVector> {
    let v = value.ok_or_else(|| SceneError::field(field, "missing"))?;
    if !v.iter().all(|x| x.is_finite()) {
        return Err(SceneError::field(field, "components must be finite"));
    }
    Ok(EuclideanVector::from_array(v))
}

fn direction(field: &str, value: Option<[f64; 3]>) -> SceneResult<EuclideanVector> {
    let v = vector(field, value)?;
    if v.norm() == 0.0 {
        return Err(SceneError::field(field, "must be nonzero"));
    }
    Ok(v)
}

fn radius(field: &str, value: Option<f64>) -> SceneResult<f64> {
    let r = value.ok_or_else(|| SceneError::field(field, "missing"))?;
    if !(r.is_finite() && r > 0.0) {
        return Err(SceneError::field(
            field,
            format!("must be positive and finite, got {r}"),
        ));
    }
    Ok(r)
}

impl ObjectSpec {
    fn unused(&self, label: &str, allowed: &[&str]) -> SceneResult<()> {
        let present = [
            ("radius", self.radius.is_some()),
            ("direction", self.direction.is_some()),
            ("normal", self.normal.is_some()),
            ("plane", self.plane.is_some()),
        ];
        for (name, set) in present {
            if set && !allowed.contains(&name) {
                return Err(SceneError::field(
                    format!("{label}.{name}"),
                    format!("not used by a {}", self.kind_name()),
                ));
            }
        }
        Ok(())
    }

    fn kind_name(&self) -> &'static str {
        match self.kind {
            SceneKind::Circle => "circle",
            SceneKind::Line => "line",
            SceneKind::Sphere => "sphere",
            SceneKind::Plane => "plane",
        }
    }

    /// Builds the object; `label` prefixes field names in diagnostics.
    pub fn build(&self, label: &str) -> SceneResult<ConformalObject> {
        let f = |name: &str| format!("{label}.{name}");
        let center = vector(&f("center"), self.center)?;
        match self.kind {
            SceneKind::Circle => {
                self.unused(label, &["radius", "normal", "plane"])?;
                let r = radius(&f("radius"), self.radius)?;
                let normal = match (self.normal, self.plane) {
                    (Some(_), Some(_)) => {
                        return Err(SceneError::field(f("plane"), "give either plane or normal"))
                    }
                    (Some(n), None) => direction(&f("normal"), Some(n))?,
                    (None, Some(p)) => p.normal(),
                    (None, None) => CoordinatePlane::E12.normal(),
                };
                Ok(circle_in_plane(center, r, normal)?)
            }
            SceneKind::Line => {
                self.unused(label, &["direction"])?;
                Ok(line_from(
                    center,
                    direction(&f("direction"), self.direction)?,
                )?)
            }
            SceneKind::Sphere => {
                self.unused(label, &["radius"])?;
                Ok(sphere_from(center, radius(&f("radius"), self.radius)?)?)
            }
            SceneKind::Plane => {
                self.unused(label, &["normal"])?;
                Ok(plane_from(center, direction(&f("normal"), self.normal)?)?)
            }
        }
    }
}

impl SceneSpec {
    pub fn from_toml(text: &str) -> SceneResult<Self> {
        let spec: Self =
            toml::from_str(text).map_err(|e| SceneError::Parse(e.message().to_owned()))?;
        if !(spec.tolerance.is_finite() && spec.tolerance > 0.0) {
            return Err(SceneError::field(
                "tolerance",
                "must be positive and finite",
            ));
        }
        Ok(spec)
    }

    pub fn objects(&self) -> SceneResult<(ConformalObject, ConformalObject)> {
        Ok((self.a.build("a")?, self.b.build("b")?))
    }

    /// Sweep configuration: `a` is the fixed object unless it is the flat.
    pub fn locus_config(&self) -> SceneResult<LocusConfig> {
        let (a, b) = self.objects()?;
        let (configuration, swap) = configuration_for(a.kind(), b.kind())?;
        let (round, other) = if swap { (&b, &a) } else { (&a, &b) };
        let r1 = radius_of(round);
        Ok(match configuration {
            Configuration::CircleCircle => LocusConfig::CircleCircle {
                r1,
                r2: radius_of(other),
            },
            Configuration::CircleLine => LocusConfig::CircleLine { r1 },
            Configuration::SphereSphere => LocusConfig::SphereSphere {
                r1,
                r2: radius_of(other),
            },
            Configuration::SpherePlane => LocusConfig::SpherePlane { r1 },
        })
    }
}

fn radius_of(obj: &ConformalObject) -> f64 {
    match *obj.params() {
        Params::Circle { radius, .. } | Params::Sphere { radius, .. } => radius,
        _ => f64::NAN,
    }
}

/// A real printed with 17 significant digits; non-finite values become `null`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Num(pub f64);

pub fn format_real(x: f64) -> String {
    // fold -0 into 0 so signs of exact zeros never leak into the output
    let x = if x == 0.0 { 0.0 } else { x };
    format!("{x:.16e}")
}

impl Serialize for Num {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        if !self.0.is_finite() {
            return s.serialize_none();
        }
        RawValue::from_string(format_real(self.0))
            .map_err(serde::ser::Error::custom)?
            .serialize(s)
    }
}

fn num3(v: EuclideanVector) -> [Num; 3] {
    [Num(v.x), Num(v.y), Num(v.z)]
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum CarrierRecord {
    Line {
        point: [Num; 3],
        direction: [Num; 3],
    },
    Plane {
        point: [Num; 3],
        normal: [Num; 3],
    },
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct MeetRecord {
    pub configuration: &'static str,
    pub classification: &'static str,
    pub r_squared: Num,
    pub center: [Num; 3],
    pub d: Num,
    pub d1: Num,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub direction: Option<[Num; 3]>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub plane_normal: Option<[Num; 3]>,
    pub carrier: CarrierRecord,
    pub points: Vec<[Num; 3]>,
}

impl MeetRecord {
    pub fn new(outcome: &MeetOutcome) -> SceneResult<Self> {
        let carrier = ConformalObject::from_blade(outcome.carrier.clone())?;
        let carrier = match *carrier.params() {
            Params::Line { point, direction } => CarrierRecord::Line {
                point: num3(point),
                direction: num3(direction),
            },
            Params::Plane { point, normal } => CarrierRecord::Plane {
                point: num3(point),
                normal: num3(normal),
            },
            _ => return Err(SceneError::Degenerate("carrier is not a flat".into())),
        };
        let (direction, plane_normal) = match outcome.orientation {
            Orientation::Direction(v) => (Some(num3(v)), None),
            Orientation::PlaneNormal(v) => (None, Some(num3(v))),
        };
        Ok(Self {
            configuration: outcome.configuration.name(),
            classification: outcome.classification.name(),
            r_squared: Num(outcome.r_squared),
            center: num3(outcome.center),
            d: Num(outcome.d),
            d1: Num(outcome.d1),
            direction,
            plane_normal,
            carrier,
            points: outcome.points().into_iter().map(num3).collect(),
        })
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RSquaredRecord {
    pub meet: Num,
    pub closed_form: Num,
    pub oracle: Num,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CheckRecord {
    pub configuration: &'static str,
    pub classification: &'static str,
    pub r_squared: RSquaredRecord,
    pub max_deviation: Num,
}

impl CheckRecord {
    pub fn max_deviation(&self) -> f64 {
        self.max_deviation.0
    }
}

fn meet_scene(
    spec: &SceneSpec,
    tolerance: f64,
) -> SceneResult<(MeetOutcome, ConformalObject, ConformalObject)> {
    let (a, b) = spec.objects()?;
    let outcome = meet_objects(&a, &b, tolerance)?;
    if outcome.classification == Classification::Degenerate {
        return Err(SceneError::Degenerate(format!(
            "{} meet vanishes",
            outcome.configuration.name()
        )));
    }
    let (_, swap) = configuration_for(a.kind(), b.kind())?;
    Ok(if swap {
        (outcome, b, a)
    } else {
        (outcome, a, b)
    })
}

pub fn run_meet(spec: &SceneSpec, tolerance: f64) -> SceneResult<MeetRecord> {
    MeetRecord::new(&meet_scene(spec, tolerance)?.0)
}

/// Meet, closed-form and oracle values of `r²` for one scene.
pub fn run_check(spec: &SceneSpec, tolerance: f64) -> SceneResult<CheckRecord> {
    let (outcome, v1, v2) = meet_scene(spec, tolerance)?;
    let (closed_form, oracle) = match (*v1.params(), *v2.params()) {
        (
            Params::Circle {
                center: c1,
                radius: r1,
                normal,
            },
            Params::Circle {
                center: c2,
                radius: r2,
                ..
            },
        ) => (
            two_round_r_squared(r1, r2, c1.distance(c2)),
            circle_circle_analytic(c1, r1, c2, r2, normal, tolerance)?.h_squared,
        ),
        (Params::Circle { center, radius, .. }, Params::Line { point, direction }) => {
            let foot = point + direction * (center - point).dot(direction);
            (
                round_flat_r_squared(radius, center.distance(foot)),
                circle_line_analytic(center, radius, point, direction, tolerance)?.h_squared,
            )
        }
        (
            Params::Sphere {
                center: c1,
                radius: r1,
            },
            Params::Sphere {
                center: c2,
                radius: r2,
            },
        ) => (
            two_round_r_squared(r1, r2, c1.distance(c2)),
            sphere_sphere_analytic(c1, r1, c2, r2, tolerance)?.h_squared,
        ),
        (Params::Sphere { center, radius }, Params::Plane { point, normal }) => (
            round_flat_r_squared(radius, (center - point).dot(normal).abs()),
            sphere_plane_analytic(center, radius, point, normal, tolerance)?.h_squared,
        ),
        _ => return Err(Error::Unsupported(v1.kind().name(), v2.kind().name()).into()),
    };
    let values = [outcome.r_squared, closed_form, oracle];
    let mut max_deviation = 0.0f64;
    for i in 0..3 {
        for j in i + 1..3 {
            max_deviation = max_deviation.max((values[i] - values[j]).abs());
        }
    }
    Ok(CheckRecord {
        configuration: outcome.configuration.name(),
        classification: outcome.classification.name(),
        r_squared: RSquaredRecord {
            meet: Num(values[0]),
            closed_form: Num(values[1]),
            oracle: Num(values[2]),
        },
        max_deviation: Num(max_deviation),
    })
}

/// Validated sweep range.
pub fn sweep_distances(d_min: f64, d_max: f64, steps: usize) -> SceneResult<Vec<f64>> {
    if !(d_min.is_finite() && d_min > 0.0) {
        return Err(SceneError::field("d-min", "must be positive and finite"));
    }
    if !(d_max.is_finite() && d_max > d_min) {
        return Err(SceneError::field(
            "d-max",
            "must be finite and greater than d-min",
        ));
    }
    if steps < 2 {
        return Err(SceneError::field("steps", "must be at least 2"));
    }
    Ok(linspace(d_min, d_max, steps))
}

pub fn run_locus(
    spec: &SceneSpec,
    d_values: &[f64],
    tolerance: f64,
) -> SceneResult<Vec<LocusSample>> {
    let config = spec.locus_config()?;
    let mut samples = sweep(config, d_values)?;
    for s in &mut samples {
        if s.classification != Classification::Degenerate {
            s.classification = crate::meet::classify(s.r_squared, s.r1 * s.r1, tolerance);
        }
    }
    Ok(samples)
}

pub const PLANAR_HEADER: &str = "# d,d1,r_squared,classification,branch,x,y_plus,y_minus";
pub const SPATIAL_HEADER: &str =
    "# d,d1,r_squared,classification,branch,center_x,center_y,center_z,radius,imaginary,normal_x,normal_y,normal_z";

/// CSV table of sweep samples with a `#` header line.
///
/// Planar rows hold the frame coordinates `(x, ±y)`; spatial rows hold the
/// circle of intersection, with `radius = √|r²|` and `imaginary` set for
/// virtual circles.
pub fn locus_csv(samples: &[LocusSample], planar: bool) -> String {
    let mut out = String::new();
    out.push_str(if planar {
        PLANAR_HEADER
    } else {
        SPATIAL_HEADER
    });
    out.push('\n');
    let r = |x: f64| format_real(x);
    for s in samples {
        let _ = write!(
            out,
            "{},{},{},{},{}",
            r(s.d),
            r(s.d1),
            r(s.r_squared),
            s.classification.name(),
            s.branch.name()
        );
        match &s.geometry {
            LocusGeometry::Planar { points } => {
                let x = points.first().map_or(s.d1, |p| p[0]);
                let y = s.r_squared.abs().sqrt();
                let y = if s.classification == Classification::Tangent {
                    0.0
                } else {
                    y
                };
                let _ = write!(out, ",{},{},{}", r(x), r(y), r(-y));
            }
            LocusGeometry::Spatial {
                center,
                radius,
                imaginary,
                normal,
            } => {
                let _ = write!(
                    out,
                    ",{},{},{},{},{},{},{},{}",
                    r(center.x),
                    r(center.y),
                    r(center.z),
                    r(*radius),
                    imaginary,
                    r(normal.x),
                    r(normal.y),
                    r(normal.z)
                );
            }
        }
        out.push('\n');
    }
    out
}

/// Pretty JSON of a record followed by a newline.
pub fn to_json<T: Serialize>(record: &T) -> String {
    let mut s = serde_json::to_string_pretty(record).expect("records serialize");
    s.push('\n');
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    const UNIT_CIRCLES: &str = r#"
[a]
kind = "circle"
center = [0.0, 0.0, 0.0]
radius = 1.0

[b]
kind = "circle"
center = [1.0, 0.0, 0.0]
radius = 1.0
"#;

    #[test]
    fn numbers_have_seventeen_digits() {
        assert_eq!(format_real(0.75), "7.5000000000000000e-1");
        assert_eq!(format_real(-1.25), "-1.2500000000000000e0");
        assert_eq!(serde_json::to_string(&Num(f64::NAN)).unwrap(), "null");
        assert_eq!(
            serde_json::to_string(&[Num(2.0)]).unwrap(),
            "[2.0000000000000000e0]"
        );
    }

    #[test]
    fn unit_circles_meet() {
        let spec = SceneSpec::from_toml(UNIT_CIRCLES).unwrap();
        assert_eq!(spec.tolerance, 1e-9);
        let record = run_meet(&spec, spec.tolerance).unwrap();
        assert_eq!(record.classification, "real");
        assert!((record.r_squared.0 - 0.75).abs() < 1e-12);
        assert_eq!(record.points.len(), 2);
    }

    #[test]
    fn field_errors_name_the_field() {
        let bad = UNIT_CIRCLES.replace("radius = 1.0\n\n[b]", "radius = -1.0\n\n[b]");
        let spec = SceneSpec::from_toml(&bad).unwrap();
        let err = spec.objects().unwrap_err();
        assert!(err.to_string().starts_with("a.radius:"), "{err}");
        assert_eq!(err.exit_code(), 2);
        let err = SceneSpec::from_toml("[a]\nkind = \"cone\"").unwrap_err();
        assert_eq!(err.exit_code(), 2);
    }

    #[test]
    fn concentric_is_a_validation_error() {
        let spec =
            SceneSpec::from_toml(&UNIT_CIRCLES.replace("[1.0, 0.0, 0.0]", "[0.0, 0.0, 0.0]"))
                .unwrap();
        let err = run_meet(&spec, 1e-9).unwrap_err();
        assert!(err.to_string().contains("concentric"));
        assert_eq!(err.exit_code(), 2);
    }

    #[test]
    fn sweep_range_validation() {
        assert!(sweep_distances(0.5, 3.5, 1).is_err());
        assert!(sweep_distances(0.0, 3.5, 4).is_err());
        assert!(sweep_distances(2.0, 1.0, 4).is_err());
        assert_eq!(sweep_distances(1.0, 2.0, 2).unwrap(), vec![1.0, 2.0]);
    }
}
