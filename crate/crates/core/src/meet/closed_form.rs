//! Closed-form expressions for the meets, assembled directly from the
//! Euclidean parameters. They share no code path with the contraction-based
//! [`meet`](super::meet) and serve as an independent check on it.

use crate::algebra::Multivector;
use crate::conformal::{conformal_point, euclidean, minkowski, n_inf, n_origin, pseudoscalar3};
use crate::vector::EuclideanVector;

/// `r² = d² {r1²r2²/d⁴ - ¼(1 - r1²/d² - r2²/d²)²}` for two circles or spheres.
pub fn two_round_r_squared(r1: f64, r2: f64, d: f64) -> f64 {
    let (a, b, dd) = (r1 * r1, r2 * r2, d * d);
    let t = 1.0 - a / dd - b / dd;
    dd * (a * b / (dd * dd) - 0.25 * t * t)
}

/// `r² = r1² - d²` for a circle and line, or a sphere and plane.
pub fn round_flat_r_squared(r1: f64, d: f64) -> f64 {
    r1 * r1 - d * d
}

/// Signed offset `d1 = ½(d + (r1² - r2²)/d)` of the meet center from `c1`.
pub fn center_offset(r1: f64, r2: f64, d: f64) -> f64 {
    0.5 * (d + (r1 * r1 - r2 * r2) / d)
}

/// `c = c1 + ½(1 + (r1² - r2²)/d²)(c2 - c1)`.
pub fn meet_center(c1: EuclideanVector, r1: f64, c2: EuclideanVector, r2: f64) -> EuclideanVector {
    let d2 = c1.distance(c2).powi(2);
    c1 + (c2 - c1) * (0.5 * (1.0 + (r1 * r1 - r2 * r2) / d2))
}

/// Point pair through `c ± r p̂` divided by `2r`, written as a polynomial in
/// `r²` so that it stays meaningful for virtual pairs:
/// `p̂∧c + ½[(c² + r²)p̂ - 2(c∗p̂)c]n + p̂n̄ + (c∗p̂)N`.
pub fn unit_pair(c: EuclideanVector, p_hat: EuclideanVector, r_squared: f64) -> Multivector {
    let cp = c.dot(p_hat);
    let pe = euclidean(p_hat);
    let wedge = pe.outer(&euclidean(c)).expect("conformal");
    let inf = euclidean(p_hat * (c.norm_squared() + r_squared) - c * (2.0 * cp)).scale(0.5);
    &(&(&wedge + &(&inf * &n_inf())) + &(&pe * &n_origin())) + &minkowski().scale(cp)
}

/// The four-term expansion of the meet of two circles in the plane `plane`.
pub fn circle_circle_expansion(
    c1: EuclideanVector,
    r1: f64,
    c2: EuclideanVector,
    r2: f64,
    plane: &Multivector,
) -> Multivector {
    let s1 = c1.norm_squared() - r1 * r1;
    let s2 = c2.norm_squared() - r2 * r2;
    let t0 = plane.scale(0.5 * (s1 - s2));
    let t1 = &(&euclidean(c1 * s2 - c2 * s1).scale(0.5) * plane) * &n_inf();
    let t2 = &(&euclidean(c2 - c1) * plane) * &n_origin();
    let c12 = euclidean(c1).outer(&euclidean(c2)).expect("conformal");
    let t3 = &(&c12 * plane) * &minkowski();
    &(&(&t0 + &t1) + &t2) + &t3
}

/// `(d / 2r) P1∧P2` for two circles, with `p̂ = ((c2 - c1)/d) I_c`.
pub fn circle_circle_pair(
    c1: EuclideanVector,
    r1: f64,
    c2: EuclideanVector,
    r2: f64,
    plane: &Multivector,
) -> Multivector {
    let d = c1.distance(c2);
    let p_hat = (&euclidean((c2 - c1) / d) * plane).grade(1);
    let p_hat = crate::conformal::euclidean_part(&p_hat);
    unit_pair(
        meet_center(c1, r1, c2, r2),
        p_hat,
        two_round_r_squared(r1, r2, d),
    )
    .scale(d)
}

/// `(-1 / 2r) P1∧P2` for a circle and the line through the foot point `c2`
/// with unit direction `p_hat`.
pub fn circle_line_pair(
    c1: EuclideanVector,
    r1: f64,
    c2: EuclideanVector,
    p_hat: EuclideanVector,
) -> Multivector {
    let d = c1.distance(c2);
    -unit_pair(c2, p_hat, round_flat_r_squared(r1, d))
}

/// The four-term expansion of the meet of two spheres.
pub fn sphere_sphere_expansion(
    c1: EuclideanVector,
    r1: f64,
    c2: EuclideanVector,
    r2: f64,
) -> Multivector {
    let i = pseudoscalar3();
    let s1 = c1.norm_squared() - r1 * r1;
    let s2 = c2.norm_squared() - r2 * r2;
    let t0 = i.scale(0.5 * (s1 - s2));
    let t1 = &(&euclidean(c1 * s2 - c2 * s1).scale(-0.5) * &i) * &n_inf();
    let t2 = &(&euclidean(c1 - c2) * &i) * &n_origin();
    let c12 = euclidean(c1).outer(&euclidean(c2)).expect("conformal");
    let t3 = &(&c12 * &i) * &minkowski();
    &(&(&t0 + &t1) + &t2) + &t3
}

/// `(C + ½r²n)∧{I_c + n(C⌋I_c)}`: a circle with center `c`, signed squared
/// radius `r_squared` and unit plane bivector `plane`, scaled to `α = 1`.
pub fn unit_circle(c: EuclideanVector, r_squared: f64, plane: &Multivector) -> Multivector {
    let big_c = conformal_point(c);
    let lhs = &big_c + &n_inf().scale(0.5 * r_squared);
    let rhs = plane + &(&n_inf() * &big_c.left_contraction(plane).expect("conformal"));
    lhs.outer(&rhs).expect("conformal")
}

/// `d (C + ½r²n)∧{I_c + n(C⌋I_c)}` with `I_c = ((c1 - c2)/d) I`.
pub fn sphere_sphere_circle(
    c1: EuclideanVector,
    r1: f64,
    c2: EuclideanVector,
    r2: f64,
) -> Multivector {
    let d = c1.distance(c2);
    let plane = &euclidean((c1 - c2) / d) * &pseudoscalar3();
    unit_circle(
        meet_center(c1, r1, c2, r2),
        two_round_r_squared(r1, r2, d),
        &plane,
    )
    .scale(d)
}
