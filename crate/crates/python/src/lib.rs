//! Python bindings: `import cgameet`.
//!
//! Multivectors, conformal objects, meets, locus sweeps and the classical
//! oracle. Core errors surface as `ValueError`.

use cga_meet::conformal::{self, Params};
use cga_meet::locus::{self, LocusConfig, LocusGeometry, LocusSample, Sign};
use cga_meet::meet::{self, Classification, MeetOutcome, Orientation, TANGENT_TOL};
use cga_meet::oracle::{self, AnalyticKind, AnalyticResult};
use cga_meet::{ConformalObject, EuclideanVector, Signature};
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::PyDict;

type Vec3 = [f64; 3];

fn err(e: cga_meet::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn ev(a: Vec3) -> EuclideanVector {
    EuclideanVector::from_array(a)
}

#[pyclass(name = "Multivector", module = "cgameet", frozen)]
pub struct PyMultivector {
    inner: cga_meet::Multivector,
}

fn wrap(inner: cga_meet::Multivector) -> PyMultivector {
    PyMultivector { inner }
}

#[pymethods]
impl PyMultivector {
    /// Coefficients indexed by blade bitset, in Cl(p,q); Cl(4,1) by default.
    #[new]
    #[pyo3(signature = (coeffs, p = 4, q = 1))]
    fn new(coeffs: Vec<f64>, p: usize, q: usize) -> PyResult<Self> {
        let sig = Signature::new(p, q).map_err(err)?;
        cga_meet::Multivector::from_coeffs(sig, coeffs)
            .map(wrap)
            .map_err(err)
    }

    /// Grade-1 element of Cl(4,1) from (e1, e2, e3, e+, e-) components.
    #[staticmethod]
    fn vector(components: Vec<f64>) -> PyResult<Self> {
        cga_meet::Multivector::vector(conformal::sig(), &components)
            .map(wrap)
            .map_err(err)
    }

    #[staticmethod]
    fn scalar(value: f64) -> Self {
        wrap(cga_meet::Multivector::scalar(conformal::sig(), value))
    }

    #[getter]
    fn coeffs(&self) -> Vec<f64> {
        self.inner.coeffs().to_vec()
    }

    #[getter]
    fn p(&self) -> usize {
        self.inner.signature().p()
    }

    #[getter]
    fn q(&self) -> usize {
        self.inner.signature().q()
    }

    fn coeff(&self, blade: usize) -> f64 {
        self.inner.coeff(blade)
    }

    fn grade(&self, k: i64) -> Self {
        wrap(self.inner.grade(k))
    }

    fn scalar_part(&self) -> f64 {
        self.inner.scalar_part()
    }

    fn reverse(&self) -> Self {
        wrap(self.inner.reverse())
    }

    fn outer(&self, other: PyRef<'_, Self>) -> PyResult<Self> {
        self.inner.outer(&other.inner).map(wrap).map_err(err)
    }

    fn left_contraction(&self, other: PyRef<'_, Self>) -> PyResult<Self> {
        self.inner
            .left_contraction(&other.inner)
            .map(wrap)
            .map_err(err)
    }

    fn right_contraction(&self, other: PyRef<'_, Self>) -> PyResult<Self> {
        self.inner
            .right_contraction(&other.inner)
            .map(wrap)
            .map_err(err)
    }

    fn inner(&self, other: PyRef<'_, Self>) -> PyResult<Self> {
        self.inner
            .hestenes_inner(&other.inner)
            .map(wrap)
            .map_err(err)
    }

    fn scalar_product(&self, other: PyRef<'_, Self>) -> PyResult<f64> {
        self.inner.scalar_product(&other.inner).map_err(err)
    }

    fn inverse(&self) -> PyResult<Self> {
        self.inner.blade_inverse().map(wrap).map_err(err)
    }

    fn is_blade(&self) -> bool {
        self.inner.blade_check().is_blade
    }

    fn __add__(&self, other: PyRef<'_, Self>) -> PyResult<Self> {
        self.check(&other)?;
        Ok(wrap(&self.inner + &other.inner))
    }

    fn __sub__(&self, other: PyRef<'_, Self>) -> PyResult<Self> {
        self.check(&other)?;
        Ok(wrap(&self.inner - &other.inner))
    }

    fn __neg__(&self) -> Self {
        wrap(-&self.inner)
    }

    /// Geometric product, or scaling by a number.
    fn __mul__(&self, other: &Bound<'_, PyAny>) -> PyResult<Self> {
        if let Ok(s) = other.extract::<f64>() {
            return Ok(wrap(self.inner.scale(s)));
        }
        let other = other.cast::<Self>()?.borrow();
        self.inner
            .geometric_product(&other.inner)
            .map(wrap)
            .map_err(err)
    }

    fn __rmul__(&self, s: f64) -> Self {
        wrap(self.inner.scale(s))
    }

    /// `a ^ b` is the outer product.
    fn __xor__(&self, other: PyRef<'_, Self>) -> PyResult<Self> {
        self.outer(other)
    }

    /// `a << b` is the left contraction `a ⌋ b`.
    fn __lshift__(&self, other: PyRef<'_, Self>) -> PyResult<Self> {
        self.left_contraction(other)
    }

    /// `a >> b` is the right contraction `a ⌊ b`.
    fn __rshift__(&self, other: PyRef<'_, Self>) -> PyResult<Self> {
        self.right_contraction(other)
    }

    fn __str__(&self) -> String {
        self.inner.to_string()
    }

    fn __repr__(&self) -> String {
        format!("Multivector({})", self.inner)
    }
}

impl PyMultivector {
    fn check(&self, other: &Self) -> PyResult<()> {
        let (a, b) = (self.inner.signature(), other.inner.signature());
        if a == b {
            Ok(())
        } else {
            Err(err(cga_meet::Error::SignatureMismatch {
                left: a,
                right: b,
            }))
        }
    }
}

#[pyfunction]
fn n_inf() -> PyMultivector {
    wrap(conformal::n_inf())
}

#[pyfunction]
fn n_origin() -> PyMultivector {
    wrap(conformal::n_origin())
}

#[pyfunction]
fn minkowski() -> PyMultivector {
    wrap(conformal::minkowski())
}

/// Conformal point, normalized so that `P·n = -1`.
#[pyfunction]
fn embed_point(p: Vec3) -> PyMultivector {
    wrap(conformal::conformal_point(ev(p)))
}

#[pyfunction]
fn extract_point(point: PyRef<'_, PyMultivector>) -> PyResult<Vec3> {
    conformal::extract_point(&point.inner)
        .map(EuclideanVector::to_array)
        .map_err(err)
}

/// A point, line, circle, plane or sphere with its Euclidean parameters.
#[pyclass(name = "ConformalObject", module = "cgameet", frozen)]
pub struct PyObject3 {
    inner: ConformalObject,
}

fn object(r: cga_meet::Result<ConformalObject>) -> PyResult<PyObject3> {
    r.map(|inner| PyObject3 { inner }).map_err(err)
}

#[pymethods]
impl PyObject3 {
    #[staticmethod]
    fn from_blade(blade: PyRef<'_, PyMultivector>) -> PyResult<Self> {
        object(ConformalObject::from_blade(blade.inner.clone()))
    }

    #[getter]
    fn kind(&self) -> &'static str {
        self.inner.kind().name()
    }

    #[getter]
    fn blade(&self) -> PyMultivector {
        wrap(self.inner.blade().clone())
    }

    /// Euclidean parameters as a dict.
    fn params<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyDict>> {
        let d = PyDict::new(py);
        match *self.inner.params() {
            Params::Point { position } => d.set_item("position", position.to_array())?,
            Params::PointPair(pp) => {
                d.set_item("center", pp.c.to_array())?;
                d.set_item("direction", pp.p_hat.to_array())?;
                d.set_item("r_squared", pp.r_squared)?;
            }
            Params::Line { point, direction } => {
                d.set_item("point", point.to_array())?;
                d.set_item("direction", direction.to_array())?;
            }
            Params::Circle {
                center,
                radius,
                normal,
            } => {
                d.set_item("center", center.to_array())?;
                d.set_item("radius", radius)?;
                d.set_item("normal", normal.to_array())?;
            }
            Params::Plane { point, normal } => {
                d.set_item("point", point.to_array())?;
                d.set_item("normal", normal.to_array())?;
            }
            Params::Sphere { center, radius } => {
                d.set_item("center", center.to_array())?;
                d.set_item("radius", radius)?;
            }
        }
        Ok(d)
    }

    fn __repr__(&self) -> String {
        format!(
            "ConformalObject({}: {})",
            self.inner.kind().name(),
            self.inner.blade()
        )
    }
}

#[pyfunction]
fn point(p: Vec3) -> PyObject3 {
    PyObject3 {
        inner: conformal::embed_point(ev(p)),
    }
}

#[pyfunction]
fn line(point: Vec3, direction: Vec3) -> PyResult<PyObject3> {
    object(conformal::line_from(ev(point), ev(direction)))
}

/// Circle with `center` and `radius` in the plane through `center` normal to `normal`.
#[pyfunction]
#[pyo3(signature = (center, radius, normal = [0.0, 0.0, 1.0]))]
fn circle(center: Vec3, radius: f64, normal: Vec3) -> PyResult<PyObject3> {
    object(conformal::circle_in_plane(ev(center), radius, ev(normal)))
}

#[pyfunction]
fn plane(point: Vec3, normal: Vec3) -> PyResult<PyObject3> {
    object(conformal::plane_from(ev(point), ev(normal)))
}

#[pyfunction]
fn sphere(center: Vec3, radius: f64) -> PyResult<PyObject3> {
    object(conformal::sphere_from(ev(center), radius))
}

#[pyclass(name = "MeetOutcome", module = "cgameet", frozen)]
pub struct PyMeet {
    inner: MeetOutcome,
}

#[pymethods]
impl PyMeet {
    #[getter]
    fn configuration(&self) -> &'static str {
        self.inner.configuration.name()
    }

    #[getter]
    fn classification(&self) -> &'static str {
        self.inner.classification.name()
    }

    #[getter]
    fn r_squared(&self) -> f64 {
        self.inner.r_squared
    }

    #[getter]
    fn center(&self) -> Vec3 {
        self.inner.center.to_array()
    }

    #[getter]
    fn d(&self) -> f64 {
        self.inner.d
    }

    #[getter]
    fn d1(&self) -> f64 {
        self.inner.d1
    }

    #[getter]
    fn r1(&self) -> f64 {
        self.inner.r1
    }

    /// Carrier line direction (planar) or carrier plane normal (spatial).
    #[getter]
    fn orientation(&self) -> Vec3 {
        self.inner.orientation.vector().to_array()
    }

    #[getter]
    fn is_planar(&self) -> bool {
        matches!(self.inner.orientation, Orientation::Direction(_))
    }

    #[getter]
    fn meet(&self) -> PyMultivector {
        wrap(self.inner.meet.clone())
    }

    #[getter]
    fn carrier(&self) -> PyMultivector {
        wrap(self.inner.carrier.clone())
    }

    /// Real intersection points of a planar meet.
    fn points(&self) -> Vec<Vec3> {
        self.inner
            .points()
            .into_iter()
            .map(EuclideanVector::to_array)
            .collect()
    }

    fn radius_modulus(&self) -> f64 {
        self.inner.radius_modulus()
    }

    fn __repr__(&self) -> String {
        format!(
            "MeetOutcome({}, {}, r_squared={:?})",
            self.inner.configuration.name(),
            self.inner.classification.name(),
            self.inner.r_squared
        )
    }
}

/// Meet of two supported objects; `tolerance` is the relative tangent threshold.
#[pyfunction]
#[pyo3(signature = (a, b, tolerance = TANGENT_TOL))]
fn meet_objects(
    a: PyRef<'_, PyObject3>,
    b: PyRef<'_, PyObject3>,
    tolerance: f64,
) -> PyResult<PyMeet> {
    meet::meet_objects(&a.inner, &b.inner, tolerance)
        .map(|inner| PyMeet { inner })
        .map_err(err)
}

/// The raw meet blade `(a ⌋ J⁻¹) ⌋ b` for a given join `J`.
#[pyfunction]
fn meet_blades(
    a: PyRef<'_, PyMultivector>,
    b: PyRef<'_, PyMultivector>,
    join: PyRef<'_, PyMultivector>,
) -> PyResult<PyMultivector> {
    let j = meet::JoinBlade::new(join.inner.clone()).map_err(err)?;
    meet::meet(&a.inner, &b.inner, &j).map(wrap).map_err(err)
}

fn locus_config(kind: &str, r1: f64, r2: Option<f64>) -> PyResult<LocusConfig> {
    let need =
        |r2: Option<f64>| r2.ok_or_else(|| PyValueError::new_err(format!("{kind} needs r2")));
    Ok(match kind {
        "circle-circle" => LocusConfig::CircleCircle { r1, r2: need(r2)? },
        "circle-line" => LocusConfig::CircleLine { r1 },
        "sphere-sphere" => LocusConfig::SphereSphere { r1, r2: need(r2)? },
        "sphere-plane" => LocusConfig::SpherePlane { r1 },
        _ => {
            return Err(PyValueError::new_err(format!(
                "unknown configuration {kind:?}; expected circle-circle, circle-line, sphere-sphere or sphere-plane"
            )))
        }
    })
}

fn sample_dict<'py>(py: Python<'py>, s: &LocusSample) -> PyResult<Bound<'py, PyDict>> {
    let d = PyDict::new(py);
    d.set_item("d", s.d)?;
    d.set_item("d1", s.d1)?;
    d.set_item("r_squared", s.r_squared)?;
    d.set_item("classification", s.classification.name())?;
    d.set_item("branch", s.branch.name())?;
    match &s.geometry {
        LocusGeometry::Planar { points } => d.set_item("points", points.clone())?,
        LocusGeometry::Spatial {
            center,
            radius,
            imaginary,
            normal,
        } => {
            d.set_item("center", center.to_array())?;
            d.set_item("radius", *radius)?;
            d.set_item("imaginary", *imaginary)?;
            d.set_item("normal", normal.to_array())?;
        }
    }
    Ok(d)
}

fn samples_for(
    kind: &str,
    r1: f64,
    r2: Option<f64>,
    distances: &[f64],
) -> PyResult<Vec<LocusSample>> {
    locus::sweep(locus_config(kind, r1, r2)?, distances).map_err(err)
}

/// Sweeps the moving object along `e1`; one dict per distance.
#[pyfunction]
#[pyo3(signature = (kind, r1, distances, r2 = None))]
fn sweep<'py>(
    py: Python<'py>,
    kind: &str,
    r1: f64,
    distances: Vec<f64>,
    r2: Option<f64>,
) -> PyResult<Vec<Bound<'py, PyDict>>> {
    samples_for(kind, r1, r2, &distances)?
        .iter()
        .map(|s| sample_dict(py, s))
        .collect()
}

#[pyfunction]
fn linspace(d_min: f64, d_max: f64, steps: usize) -> Vec<f64> {
    locus::linspace(d_min, d_max, steps)
}

/// `(samples, max_residual, slope_deviation)` of a sweep against the hyperbola.
#[pyfunction]
#[pyo3(signature = (kind, r1, distances, r2 = None))]
fn hyperbola_check(
    kind: &str,
    r1: f64,
    distances: Vec<f64>,
    r2: Option<f64>,
) -> PyResult<(usize, f64, Option<f64>)> {
    let report = locus::hyperbola_check(&samples_for(kind, r1, r2, &distances)?);
    Ok((report.samples, report.max_residual, report.slope_deviation))
}

/// Expected sign of `r²` at distance `d`: -1, 0 or 1.
#[pyfunction]
fn expected_sign(r1: f64, r2: f64, d: f64) -> i8 {
    match locus::sign_region(r1, r2).sign(d) {
        Sign::Negative => -1,
        Sign::Zero => 0,
        Sign::Positive => 1,
    }
}

fn analytic_kind(k: AnalyticKind) -> &'static str {
    match k {
        AnalyticKind::TwoPoints => "two-points",
        AnalyticKind::OnePoint => "one-point",
        AnalyticKind::NoIntersection => "none",
        AnalyticKind::CircleOfIntersection => "circle",
        AnalyticKind::TangentPoint => "tangent-point",
    }
}

fn analytic_dict(
    py: Python<'_>,
    r: cga_meet::Result<AnalyticResult>,
) -> PyResult<Bound<'_, PyDict>> {
    let r = r.map_err(err)?;
    let d = PyDict::new(py);
    d.set_item("kind", analytic_kind(r.kind))?;
    d.set_item("h_squared", r.h_squared)?;
    d.set_item("center", r.center.to_array())?;
    d.set_item("offset", r.offset)?;
    let points: Vec<Vec3> = r.points.iter().map(|p| p.to_array()).collect();
    d.set_item("points", points)?;
    d.set_item("normal", r.normal.map(EuclideanVector::to_array))?;
    Ok(d)
}

#[pyfunction]
#[pyo3(signature = (c1, r1, c2, r2, normal = [0.0, 0.0, 1.0], tolerance = TANGENT_TOL))]
fn oracle_circle_circle(
    py: Python<'_>,
    c1: Vec3,
    r1: f64,
    c2: Vec3,
    r2: f64,
    normal: Vec3,
    tolerance: f64,
) -> PyResult<Bound<'_, PyDict>> {
    analytic_dict(
        py,
        oracle::circle_circle_analytic(ev(c1), r1, ev(c2), r2, ev(normal), tolerance),
    )
}

#[pyfunction]
#[pyo3(signature = (c1, r1, point, direction, tolerance = TANGENT_TOL))]
fn oracle_circle_line(
    py: Python<'_>,
    c1: Vec3,
    r1: f64,
    point: Vec3,
    direction: Vec3,
    tolerance: f64,
) -> PyResult<Bound<'_, PyDict>> {
    analytic_dict(
        py,
        oracle::circle_line_analytic(ev(c1), r1, ev(point), ev(direction), tolerance),
    )
}

#[pyfunction]
#[pyo3(signature = (c1, r1, c2, r2, tolerance = TANGENT_TOL))]
fn oracle_sphere_sphere(
    py: Python<'_>,
    c1: Vec3,
    r1: f64,
    c2: Vec3,
    r2: f64,
    tolerance: f64,
) -> PyResult<Bound<'_, PyDict>> {
    analytic_dict(
        py,
        oracle::sphere_sphere_analytic(ev(c1), r1, ev(c2), r2, tolerance),
    )
}

#[pyfunction]
#[pyo3(signature = (c1, r1, point, normal, tolerance = TANGENT_TOL))]
fn oracle_sphere_plane(
    py: Python<'_>,
    c1: Vec3,
    r1: f64,
    point: Vec3,
    normal: Vec3,
    tolerance: f64,
) -> PyResult<Bound<'_, PyDict>> {
    analytic_dict(
        py,
        oracle::sphere_plane_analytic(ev(c1), r1, ev(point), ev(normal), tolerance),
    )
}

#[pymodule]
fn cgameet(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyMultivector>()?;
    m.add_class::<PyObject3>()?;
    m.add_class::<PyMeet>()?;
    m.add("TANGENT_TOL", TANGENT_TOL)?;
    m.add(
        "CLASSIFICATIONS",
        [
            Classification::Real.name(),
            Classification::Tangent.name(),
            Classification::Virtual.name(),
            Classification::Degenerate.name(),
        ],
    )?;
    for f in [
        wrap_pyfunction!(n_inf, m)?,
        wrap_pyfunction!(n_origin, m)?,
        wrap_pyfunction!(minkowski, m)?,
        wrap_pyfunction!(embed_point, m)?,
        wrap_pyfunction!(extract_point, m)?,
        wrap_pyfunction!(point, m)?,
        wrap_pyfunction!(line, m)?,
        wrap_pyfunction!(circle, m)?,
        wrap_pyfunction!(plane, m)?,
        wrap_pyfunction!(sphere, m)?,
        wrap_pyfunction!(meet_objects, m)?,
        wrap_pyfunction!(meet_blades, m)?,
        wrap_pyfunction!(sweep, m)?,
        wrap_pyfunction!(linspace, m)?,
        wrap_pyfunction!(hyperbola_check, m)?,
        wrap_pyfunction!(expected_sign, m)?,
        wrap_pyfunction!(oracle_circle_circle, m)?,
        wrap_pyfunction!(oracle_circle_line, m)?,
        wrap_pyfunction!(oracle_sphere_sphere, m)?,
        wrap_pyfunction!(oracle_sphere_plane, m)?,
    ] {
        m.add_function(f)?;
    }
    Ok(())
}
