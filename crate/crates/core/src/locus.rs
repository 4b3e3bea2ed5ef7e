//! Loci of real and virtual intersections as the center distance varies.
//!
//! Every sweep uses a fixed frame: the first (fixed) object is centered at
//! the origin and the second object moves along `e1`, so the center line is
//! the `x` axis and, for planar configurations, the common plane is `e1e2`.
//! Planar samples are reported as `(x, y) = (d1, ±√|r²|)`. Real points then
//! lie on the fixed circle `x² + y² = r1²`, virtual ones on the hyperbola
//! `x² - y² = r1²` with semitransverse axis `r1` and asymptotes `y = ±x`.
//! Spatial samples carry the circle of intersection instead; its virtual
//! circles sweep out a two-sheet hyperboloid with the same meridian.

use crate::conformal::{line_from, plane_bivector, plane_from};
use crate::error::{Error, Result};
use crate::meet::{
    circle_circle, circle_line, sphere_plane, sphere_sphere, Classification, MeetOutcome,
};
use crate::vector::EuclideanVector;

/// The fixed object's radius `r1` and, for two rounds, the moving radius `r2`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum LocusConfig {
    CircleCircle { r1: f64, r2: f64 },
    CircleLine { r1: f64 },
    SphereSphere { r1: f64, r2: f64 },
    SpherePlane { r1: f64 },
}

impl LocusConfig {
    pub fn r1(self) -> f64 {
        match self {
            Self::CircleCircle { r1, .. }
            | Self::CircleLine { r1 }
            | Self::SphereSphere { r1, .. }
            | Self::SpherePlane { r1 } => r1,
        }
    }

    pub fn is_planar(self) -> bool {
        matches!(self, Self::CircleCircle { .. } | Self::CircleLine { .. })
    }

    /// Runs the meet with the moving object at distance `d` along `e1`.
    pub fn meet_at(self, d: f64) -> Result<MeetOutcome> {
        let o = EuclideanVector::ZERO;
        let at = EuclideanVector::E1 * d;
        match self {
            Self::CircleCircle { r1, r2 } => {
                circle_circle(o, r1, at, r2, &plane_bivector(EuclideanVector::E3)?)
            }
            Self::CircleLine { r1 } => circle_line(
                o,
                r1,
                &plane_bivector(EuclideanVector::E3)?,
                &line_from(at, EuclideanVector::E2)?,
            ),
            Self::SphereSphere { r1, r2 } => sphere_sphere(o, r1, at, r2),
            Self::SpherePlane { r1 } => sphere_plane(o, r1, &plane_from(at, EuclideanVector::E1)?),
        }
    }
}

/// Which side of the fixed center a sample lies on.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Branch {
    /// Towards the moving object (`d1 ≥ 0`).
    Near,
    /// Away from the moving object (`d1 < 0`).
    Far,
}

impl Branch {
    pub fn name(self) -> &'static str {
        match self {
            Self::Near => "near",
            Self::Far => "far",
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum LocusGeometry {
    /// Frame coordinates `(d1, ±√|r²|)`; one point at tangency.
    Planar { points: Vec<[f64; 2]> },
    /// Circle of intersection; `imaginary` when `r² < 0`.
    Spatial {
        center: EuclideanVector,
        radius: f64,
        imaginary: bool,
        normal: EuclideanVector,
    },
}

#[derive(Clone, Debug, PartialEq)]
pub struct LocusSample {
    pub d: f64,
    pub d1: f64,
    pub r_squared: f64,
    pub r1: f64,
    pub classification: Classification,
    pub branch: Branch,
    pub geometry: LocusGeometry,
}

impl LocusSample {
    fn from_outcome(out: &MeetOutcome) -> Self {
        let y = out.radius_modulus();
        let geometry = match out.orientation {
            crate::meet::Orientation::Direction(_) => {
                let points = if out.classification == Classification::Tangent {
                    vec![[out.d1, 0.0]]
                } else {
                    vec![[out.d1, y], [out.d1, -y]]
                };
                LocusGeometry::Planar { points }
            }
            crate::meet::Orientation::PlaneNormal(normal) => LocusGeometry::Spatial {
                center: out.center,
                radius: y,
                imaginary: out.r_squared < 0.0,
                normal,
            },
        };
        Self {
            d: out.d,
            d1: out.d1,
            r_squared: out.r_squared,
            r1: out.r1,
            classification: out.classification,
            branch: if out.d1 >= 0.0 {
                Branch::Near
            } else {
                Branch::Far
            },
            geometry,
        }
    }

    /// `r² + d1² - r1²`.
    pub fn residual(&self) -> f64 {
        self.r_squared + self.d1 * self.d1 - self.r1 * self.r1
    }
}

/// Meets the configuration at each distance, in input order.
pub fn sweep(config: LocusConfig, d_values: &[f64]) -> Result<Vec<LocusSample>> {
    if let Some(&bad) = d_values.iter().find(|d| !(d.is_finite() && **d > 0.0)) {
        return Err(Error::InvalidDistance(bad));
    }
    d_values
        .iter()
        .map(|&d| config.meet_at(d).map(|out| LocusSample::from_outcome(&out)))
        .collect()
}

/// `d_steps` evenly spaced distances from `d_min` to `d_max` inclusive.
pub fn linspace(d_min: f64, d_max: f64, steps: usize) -> Vec<f64> {
    match steps {
        0 => Vec::new(),
        1 => vec![d_min],
        _ => (0..steps)
            .map(|i| d_min + (d_max - d_min) * i as f64 / (steps - 1) as f64)
            .collect(),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Sign {
    Negative,
    Zero,
    Positive,
}

/// Sign of `r²` over the center distance for two circles or spheres:
/// negative inside `|r2 - r1|`, positive between the tangencies, negative
/// beyond `r1 + r2`, zero exactly at both tangencies.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SignRegion {
    pub r1: f64,
    pub r2: f64,
    pub d_inner: f64,
    pub d_outer: f64,
}

impl SignRegion {
    pub fn sign(&self, d: f64) -> Sign {
        if d == self.d_inner || d == self.d_outer {
            Sign::Zero
        } else if d > self.d_inner && d < self.d_outer {
            Sign::Positive
        } else {
            Sign::Negative
        }
    }

    /// True when `classification` is the meet verdict matching `sign(d)`.
    pub fn agrees(&self, d: f64, classification: Classification) -> bool {
        matches!(
            (self.sign(d), classification),
            (Sign::Negative, Classification::Virtual)
                | (Sign::Zero, Classification::Tangent)
                | (Sign::Positive, Classification::Real)
        )
    }
}

pub fn sign_region(r1: f64, r2: f64) -> SignRegion {
    SignRegion {
        r1,
        r2,
        d_inner: (r2 - r1).abs(),
        d_outer: r1 + r2,
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct HyperbolaReport {
    pub samples: usize,
    /// Largest `|r² + d1² - r1²|`.
    pub max_residual: f64,
    /// `|y/x - 1|` at the virtual sample with the largest `d`, if any.
    pub slope_deviation: Option<f64>,
}

pub fn hyperbola_check(samples: &[LocusSample]) -> HyperbolaReport {
    let max_residual = samples
        .iter()
        .filter(|s| s.classification != Classification::Degenerate)
        .fold(0.0f64, |m, s| m.max(s.residual().abs()));
    let slope_deviation = samples
        .iter()
        .filter(|s| s.classification == Classification::Virtual && s.d1 != 0.0)
        .max_by(|a, b| a.d.total_cmp(&b.d))
        .map(|s| ((-s.r_squared).sqrt() / s.d1.abs() - 1.0).abs());
    HyperbolaReport {
        samples: samples.len(),
        max_residual,
        slope_deviation,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn far_virtual_samples_on_hyperbola() {
        let samples = sweep(
            LocusConfig::CircleCircle { r1: 1.0, r2: 1.0 },
            &[3.0, 4.0, 5.0],
        )
        .unwrap();
        for s in &samples {
            assert_eq!(s.classification, Classification::Virtual);
            let LocusGeometry::Planar { points } = &s.geometry else {
                panic!()
            };
            for [x, y] in points {
                assert!((x * x - y * y - 1.0).abs() < 1e-9);
            }
        }
    }

    #[test]
    fn inner_tangency() {
        let samples = sweep(LocusConfig::CircleCircle { r1: 1.0, r2: 2.0 }, &[1.0]).unwrap();
        assert_eq!(samples[0].classification, Classification::Tangent);
    }

    #[test]
    fn sphere_virtual_circle() {
        let s = &sweep(LocusConfig::SphereSphere { r1: 1.0, r2: 1.0 }, &[3.0]).unwrap()[0];
        let LocusGeometry::Spatial {
            radius, imaginary, ..
        } = s.geometry
        else {
            panic!()
        };
        assert!(imaginary);
        assert!((radius * radius - 1.25).abs() < 1e-12);
    }

    #[test]
    fn rejects_non_positive_distance() {
        let cfg = LocusConfig::CircleLine { r1: 1.0 };
        assert_eq!(sweep(cfg, &[1.0, 0.0]), Err(Error::InvalidDistance(0.0)));
    }

    #[test]
    fn sign_region_examples() {
        let region = sign_region(1.0, 2.0);
        assert_eq!(region.sign(0.5), Sign::Negative);
        assert_eq!(region.sign(1.0), Sign::Zero);
        assert_eq!(region.sign(1.5), Sign::Positive);
        assert_eq!(region.sign(3.0), Sign::Zero);
        assert_eq!(region.sign(3.5), Sign::Negative);
    }

    #[test]
    fn hyperbola_report() {
        assert_eq!(hyperbola_check(&[]), HyperbolaReport::default());
        let ds = linspace(3.0, 100.0, 98);
        let samples = sweep(LocusConfig::CircleCircle { r1: 1.0, r2: 1.0 }, &ds).unwrap();
        let report = hyperbola_check(&samples);
        assert!(report.max_residual < 1e-9);
        assert!(report.slope_deviation.unwrap() < 1e-3);
    }

    #[test]
    fn linspace_endpoints() {
        assert_eq!(
            linspace(0.5, 3.5, 7),
            vec![0.5, 1.0, 1.5, 2.0, 2.5, 3.0, 3.5]
        );
    }
}
