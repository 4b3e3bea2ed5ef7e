#![allow(dead_code)]

use cga_meet::EuclideanVector;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn v(x: f64, y: f64, z: f64) -> EuclideanVector {
    EuclideanVector::new(x, y, z)
}

pub fn random_vector(rng: &mut impl Rng, half_width: f64) -> EuclideanVector {
    v(
        rng.gen_range(-half_width..half_width),
        rng.gen_range(-half_width..half_width),
        rng.gen_range(-half_width..half_width),
    )
}

pub fn random_unit(rng: &mut impl Rng) -> EuclideanVector {
    loop {
        let x = random_vector(rng, 1.0);
        let n = x.norm();
        if n > 0.1 && n <= 1.0 {
            return x / n;
        }
    }
}

/// Some unit vector perpendicular to `m`.
pub fn perpendicular(m: EuclideanVector) -> EuclideanVector {
    let helper = if m.x.abs() < 0.9 {
        EuclideanVector::E1
    } else {
        EuclideanVector::E2
    };
    m.cross(helper).normalized().unwrap()
}

/// Circumcircle of a triangle from barycentric weights of the side lengths.
pub fn circumcircle(
    a: EuclideanVector,
    b: EuclideanVector,
    c: EuclideanVector,
) -> (EuclideanVector, f64) {
    let (ab, ac) = (b - a, c - a);
    let n = ab.cross(ac);
    let offset = (n.cross(ab) * ac.norm_squared() + ac.cross(n) * ab.norm_squared())
        / (2.0 * n.norm_squared());
    (a + offset, offset.norm())
}

/// Circumsphere of a tetrahedron by Cramer's rule on `2(p_i - p_0)·x = |p_i|² - |p_0|²`.
pub fn circumsphere(p: [EuclideanVector; 4]) -> (EuclideanVector, f64) {
    let rows: Vec<EuclideanVector> = (1..4).map(|i| (p[i] - p[0]) * 2.0).collect();
    let rhs: Vec<f64> = (1..4)
        .map(|i| p[i].norm_squared() - p[0].norm_squared())
        .collect();
    let det = |a: EuclideanVector, b: EuclideanVector, c: EuclideanVector| a.dot(b.cross(c));
    let cols = |k: usize| {
        v(
            rows[0].to_array()[k],
            rows[1].to_array()[k],
            rows[2].to_array()[k],
        )
    };
    let r = v(rhs[0], rhs[1], rhs[2]);
    let (c0, c1, c2) = (cols(0), cols(1), cols(2));
    let d = det(c0, c1, c2);
    let center = v(det(r, c1, c2) / d, det(c0, r, c2) / d, det(c0, c1, r) / d);
    (center, center.distance(p[0]))
}

/// A point of the circle with center `c`, radius `r`, normal `m` at angle `t`.
pub fn on_circle(c: EuclideanVector, r: f64, m: EuclideanVector, t: f64) -> EuclideanVector {
    let u = perpendicular(m);
    let w = m.cross(u);
    c + (u * t.cos() + w * t.sin()) * r
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Regime {
    Real,
    Tangent,
    Virtual,
}

pub const REGIMES: [Regime; 3] = [Regime::Real, Regime::Tangent, Regime::Virtual];

/// Two rounds with centers `c1`, `c2`; for planar use both centers lie in
/// the plane through the origin with normal `m`.
#[derive(Clone, Copy, Debug)]
pub struct TwoRounds {
    pub c1: EuclideanVector,
    pub r1: f64,
    pub c2: EuclideanVector,
    pub r2: f64,
    pub m: EuclideanVector,
}

/// A round and a flat at distance `d` along the unit `axis` from `c1`.
/// `point` is an arbitrary point of the flat, `along` the line direction
/// (planar) and `m` the common plane normal.
#[derive(Clone, Copy, Debug)]
pub struct RoundFlat {
    pub c1: EuclideanVector,
    pub r1: f64,
    pub d: f64,
    pub axis: EuclideanVector,
    pub foot: EuclideanVector,
    pub point: EuclideanVector,
    pub along: EuclideanVector,
    pub m: EuclideanVector,
}

fn boundary_jitter(rng: &mut impl Rng) -> f64 {
    [-1e-12, 0.0, 1e-12][rng.gen_range(0..3)]
}

pub fn two_round_distance(rng: &mut impl Rng, r1: f64, r2: f64, regime: Regime) -> f64 {
    let (inner, outer) = ((r1 - r2).abs(), r1 + r2);
    match regime {
        Regime::Real => rng.gen_range(inner + 0.01 * outer..outer * 0.99),
        Regime::Tangent => {
            let b = if rng.gen_bool(0.5) { outer } else { inner };
            b + boundary_jitter(rng)
        }
        Regime::Virtual => {
            if rng.gen_bool(0.5) && inner > 0.2 {
                rng.gen_range(0.05..inner - 0.05)
            } else {
                rng.gen_range(outer + 0.05..outer + 5.0)
            }
        }
    }
}

pub fn random_two_rounds(rng: &mut impl Rng, regime: Regime, planar: bool) -> TwoRounds {
    let m = random_unit(rng);
    let r1: f64 = rng.gen_range(0.2..3.0);
    let mut r2: f64 = rng.gen_range(0.2..3.0);
    if regime == Regime::Tangent && (r1 - r2).abs() < 0.1 {
        r2 = r1 + 0.5;
    }
    let d = two_round_distance(rng, r1, r2, regime);
    let project = |x: EuclideanVector| if planar { x - m * x.dot(m) } else { x };
    let c1 = project(random_vector(rng, 3.0));
    let u = project(random_unit(rng)).normalized().unwrap();
    TwoRounds {
        c1,
        r1,
        c2: c1 + u * d,
        r2,
        m,
    }
}

pub fn round_flat_distance(rng: &mut impl Rng, r1: f64, regime: Regime) -> f64 {
    match regime {
        Regime::Real => rng.gen_range(0.0..r1 * 0.99),
        Regime::Tangent => r1 + boundary_jitter(rng),
        Regime::Virtual => rng.gen_range(r1 * 1.01 + 0.01..r1 + 5.0),
    }
}

pub fn random_round_flat(rng: &mut impl Rng, regime: Regime, planar: bool) -> RoundFlat {
    let m = random_unit(rng);
    let r1: f64 = rng.gen_range(0.2..3.0);
    let d = round_flat_distance(rng, r1, regime);
    let c1 = if planar {
        let x = random_vector(rng, 3.0);
        x - m * x.dot(m)
    } else {
        random_vector(rng, 3.0)
    };
    let axis = if planar {
        perpendicular(m)
    } else {
        random_unit(rng)
    };
    let axis = if planar {
        let w = m.cross(axis);
        let t: f64 = rng.gen_range(0.0..std::f64::consts::TAU);
        axis * t.cos() + w * t.sin()
    } else {
        axis
    };
    let foot = c1 + axis * d;
    let along = if planar {
        m.cross(axis)
    } else {
        perpendicular(axis)
    };
    let point = foot + along * rng.gen_range(-2.0..2.0);
    RoundFlat {
        c1,
        r1,
        d,
        axis,
        foot,
        point,
        along,
        m,
    }
}

/// Largest distance between two unordered point pairs.
pub fn pair_distance(a: &[EuclideanVector], b: &[EuclideanVector]) -> f64 {
    assert_eq!(a.len(), 2);
    assert_eq!(b.len(), 2);
    let direct = a[0].max_abs_diff(b[0]).max(a[1].max_abs_diff(b[1]));
    let swapped = a[0].max_abs_diff(b[1]).max(a[1].max_abs_diff(b[0]));
    direct.min(swapped)
}

pub mod measure;
