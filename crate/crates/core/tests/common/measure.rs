//! Worst-case deviations over random configurations, shared by the meet
//! tests and the acceptance suite.

use cga_meet::algebra::Multivector;
use cga_meet::conformal::{circle_from, line_from, plane_bivector, plane_from, sphere_from};
use cga_meet::meet::closed_form::{
    circle_circle_expansion, circle_circle_pair, circle_line_pair, sphere_sphere_circle,
    sphere_sphere_expansion,
};
use cga_meet::meet::{
    circle_circle, circle_line, meet_objects, sphere_plane, sphere_sphere, tangent_limit,
    Classification, MeetOutcome, TANGENT_TOL,
};
use cga_meet::oracle::{
    circle_circle_analytic, circle_line_analytic, sphere_plane_analytic, sphere_sphere_analytic,
    AnalyticKind, AnalyticResult,
};
use rand::Rng;

use super::*;

#[derive(Clone, Copy, Debug, Default)]
pub struct Worst {
    /// `|r²(meet) - h²(oracle)| / max(1, |h²|)`.
    pub r_squared: f64,
    /// Real intersection points, unordered.
    pub points: f64,
    pub center: f64,
    /// `1 - |cos|` between meet and oracle plane normals.
    pub normal: f64,
    /// Cases where meet and oracle disagree about the regime.
    pub mismatched: usize,
    pub cases: usize,
}

impl Worst {
    fn record(&mut self, out: &MeetOutcome, oracle: &AnalyticResult) {
        self.cases += 1;
        let scale = oracle.h_squared.abs().max(1.0);
        self.r_squared = self
            .r_squared
            .max((out.r_squared - oracle.h_squared).abs() / scale);
        self.center = self.center.max(out.center.max_abs_diff(oracle.center));
        if let Some(n) = oracle.normal {
            self.normal = self.normal.max(1.0 - out.orientation.vector().dot(n).abs());
        }
        if out.classification == Classification::Real && oracle.kind == AnalyticKind::TwoPoints {
            self.points = self
                .points
                .max(pair_distance(&out.points(), &oracle.points));
        }
        let agree = matches!(
            (out.classification, oracle.kind),
            (
                Classification::Real,
                AnalyticKind::TwoPoints | AnalyticKind::CircleOfIntersection
            ) | (
                Classification::Tangent,
                AnalyticKind::OnePoint | AnalyticKind::TangentPoint
            ) | (Classification::Virtual, AnalyticKind::NoIntersection)
        );
        if !agree {
            self.mismatched += 1;
        }
    }

    pub fn merge(self, o: Self) -> Self {
        Self {
            r_squared: self.r_squared.max(o.r_squared),
            points: self.points.max(o.points),
            center: self.center.max(o.center),
            normal: self.normal.max(o.normal),
            mismatched: self.mismatched + o.mismatched,
            cases: self.cases + o.cases,
        }
    }
}

pub fn circle_circle_vs_oracle(rng: &mut impl Rng, n: usize) -> Worst {
    let mut worst = Worst::default();
    for i in 0..n {
        let t = random_two_rounds(rng, REGIMES[i % 3], true);
        let out = circle_circle(t.c1, t.r1, t.c2, t.r2, &plane_bivector(t.m).unwrap()).unwrap();
        let oracle = circle_circle_analytic(t.c1, t.r1, t.c2, t.r2, t.m, TANGENT_TOL).unwrap();
        worst.record(&out, &oracle);
    }
    worst
}

pub fn circle_line_vs_oracle(rng: &mut impl Rng, n: usize) -> Worst {
    let mut worst = Worst::default();
    for i in 0..n {
        let f = random_round_flat(rng, REGIMES[i % 3], true);
        let line = line_from(f.point, f.along).unwrap();
        let out = circle_line(f.c1, f.r1, &plane_bivector(f.m).unwrap(), &line).unwrap();
        let oracle = circle_line_analytic(f.c1, f.r1, f.point, f.along, TANGENT_TOL).unwrap();
        worst.record(&out, &oracle);
    }
    worst
}

pub fn sphere_sphere_vs_oracle(rng: &mut impl Rng, n: usize) -> Worst {
    let mut worst = Worst::default();
    for i in 0..n {
        let t = random_two_rounds(rng, REGIMES[i % 3], false);
        let out = sphere_sphere(t.c1, t.r1, t.c2, t.r2).unwrap();
        let oracle = sphere_sphere_analytic(t.c1, t.r1, t.c2, t.r2, TANGENT_TOL).unwrap();
        worst.record(&out, &oracle);
    }
    worst
}

pub fn sphere_plane_vs_oracle(rng: &mut impl Rng, n: usize) -> Worst {
    let mut worst = Worst::default();
    for i in 0..n {
        let f = random_round_flat(rng, REGIMES[i % 3], false);
        let normal = if rng.gen_bool(0.5) { f.axis } else { -f.axis };
        let out = sphere_plane(f.c1, f.r1, &plane_from(f.point, normal).unwrap()).unwrap();
        let oracle = sphere_plane_analytic(f.c1, f.r1, f.point, normal, TANGENT_TOL).unwrap();
        worst.record(&out, &oracle);
    }
    worst
}

/// Circles in planes that miss the origin, through the object-level meet.
pub fn general_plane_circles_vs_oracle(rng: &mut impl Rng, n: usize) -> Worst {
    let mut worst = Worst::default();
    for i in 0..n {
        let t = random_two_rounds(rng, REGIMES[i % 3], true);
        let lift = t.m * rng.gen_range(-3.0..3.0);
        let (c1, c2) = (t.c1 + lift, t.c2 + lift);
        let a = cga_meet::conformal::circle_in_plane(c1, t.r1, t.m).unwrap();
        let b = cga_meet::conformal::circle_in_plane(c2, t.r2, t.m).unwrap();
        let out = meet_objects(&a, &b, TANGENT_TOL).unwrap();
        let oracle = circle_circle_analytic(c1, t.r1, c2, t.r2, t.m, TANGENT_TOL).unwrap();
        worst.record(&out, &oracle);
    }
    worst
}

fn relative(a: &Multivector, b: &Multivector) -> f64 {
    (a - b).norm_inf() / a.norm_inf().max(b.norm_inf())
}

/// Worst relative coefficient deviation between the contraction meet and
/// each closed form, in the order circle-circle expansion, circle-circle
/// pair, circle-line pair, sphere-sphere expansion, sphere-sphere circle.
pub fn closed_form_deviation(rng: &mut impl Rng, n: usize) -> [f64; 5] {
    let mut worst = [0.0f64; 5];
    for i in 0..n {
        let regime = REGIMES[i % 3];
        let t = random_two_rounds(rng, regime, true);
        let plane = plane_bivector(t.m).unwrap();
        let out = circle_circle(t.c1, t.r1, t.c2, t.r2, &plane).unwrap();
        worst[0] = worst[0].max(relative(
            &out.meet,
            &circle_circle_expansion(t.c1, t.r1, t.c2, t.r2, &plane),
        ));
        worst[1] = worst[1].max(relative(
            &out.meet,
            &circle_circle_pair(t.c1, t.r1, t.c2, t.r2, &plane),
        ));

        let f = random_round_flat(rng, regime, true);
        let line = line_from(f.point, f.along).unwrap();
        let out = circle_line(f.c1, f.r1, &plane_bivector(f.m).unwrap(), &line).unwrap();
        worst[2] = worst[2].max(relative(
            &out.meet,
            &circle_line_pair(f.c1, f.r1, f.foot, f.along),
        ));

        let t = random_two_rounds(rng, regime, false);
        let out = sphere_sphere(t.c1, t.r1, t.c2, t.r2).unwrap();
        worst[3] = worst[3].max(relative(
            &out.meet,
            &sphere_sphere_expansion(t.c1, t.r1, t.c2, t.r2),
        ));
        worst[4] = worst[4].max(relative(
            &out.meet,
            &sphere_sphere_circle(t.c1, t.r1, t.c2, t.r2),
        ));
    }
    worst
}

/// Worst carrier deviations: circle-line `M∧n + V2`, sphere-plane `M∧n - V2`,
/// and the change of the circle-circle carrier when both squared radii are
/// shifted by the same amount (radical line fixed, `r²` shifted).
pub fn carrier_deviation(rng: &mut impl Rng, n: usize) -> [f64; 3] {
    let mut worst = [0.0f64; 3];
    for i in 0..n {
        let regime = REGIMES[i % 3];
        let f = random_round_flat(rng, regime, true);
        let line = line_from(f.point, f.along).unwrap();
        let out = circle_line(f.c1, f.r1, &plane_bivector(f.m).unwrap(), &line).unwrap();
        worst[0] = worst[0].max((&out.carrier + line.blade()).norm_inf());

        let f = random_round_flat(rng, regime, false);
        let plane = plane_from(f.point, f.axis).unwrap();
        let out = sphere_plane(f.c1, f.r1, &plane).unwrap();
        worst[1] = worst[1].max((&out.carrier - plane.blade()).norm_inf());

        let t = random_two_rounds(rng, regime, true);
        let ic = plane_bivector(t.m).unwrap();
        let base = circle_circle(t.c1, t.r1, t.c2, t.r2, &ic).unwrap();
        let shift = rng.gen_range(0.1..2.0);
        let moved = circle_circle(
            t.c1,
            (t.r1 * t.r1 + shift).sqrt(),
            t.c2,
            (t.r2 * t.r2 + shift).sqrt(),
            &ic,
        )
        .unwrap();
        assert!((moved.r_squared - base.r_squared - shift).abs() < 1e-9);
        let unit = |m: &Multivector| m.scale(1.0 / m.norm_inf());
        worst[2] = worst[2].max((&unit(&base.carrier) - &unit(&moved.carrier)).norm_inf());
    }
    worst
}

/// Worst relative deviation of the tangent-limit blades at exact tangency,
/// for circle-circle (outer, inner), circle-line, sphere-sphere (outer,
/// inner) and sphere-plane.
pub fn tangent_limit_deviation(rng: &mut impl Rng, n: usize) -> [f64; 6] {
    let mut worst = [0.0f64; 6];
    let deviation = |out: &MeetOutcome, limit: &Multivector| relative(&out.meet, limit);
    for _ in 0..n {
        let r1: f64 = rng.gen_range(0.2..3.0);
        let r2 = r1 + rng.gen_range(0.1..2.0) * if rng.gen_bool(0.5) { 1.0 } else { -1.0 };
        let r2 = r2.abs().max(0.1);
        let m = random_unit(rng);
        let c1 = {
            let x = random_vector(rng, 3.0);
            x - m * x.dot(m)
        };
        let u = perpendicular(m);
        let ic = plane_bivector(m).unwrap();
        for (slot, d) in [(0, r1 + r2), (1, (r1 - r2).abs())] {
            let a = circle_from(c1, r1, &ic).unwrap();
            let b = circle_from(c1 + u * d, r2, &ic).unwrap();
            let out = meet_objects(&a, &b, TANGENT_TOL).unwrap();
            let limit = tangent_limit(&out, &a, &b).unwrap();
            worst[slot] = worst[slot].max(deviation(&out, &limit));
        }
        let a = circle_from(c1, r1, &ic).unwrap();
        let line = line_from(
            c1 + u * r1 + m.cross(u) * rng.gen_range(-1.0..1.0),
            m.cross(u),
        )
        .unwrap();
        let out = meet_objects(&a, &line, TANGENT_TOL).unwrap();
        worst[2] = worst[2].max(deviation(&out, &tangent_limit(&out, &a, &line).unwrap()));

        let c1 = random_vector(rng, 3.0);
        let u = random_unit(rng);
        for (slot, d) in [(3, r1 + r2), (4, (r1 - r2).abs())] {
            let a = sphere_from(c1, r1).unwrap();
            let b = sphere_from(c1 + u * d, r2).unwrap();
            let out = meet_objects(&a, &b, TANGENT_TOL).unwrap();
            worst[slot] = worst[slot].max(deviation(&out, &tangent_limit(&out, &a, &b).unwrap()));
        }
        let a = sphere_from(c1, r1).unwrap();
        let plane = plane_from(c1 + u * r1 + perpendicular(u), u).unwrap();
        let out = meet_objects(&a, &plane, TANGENT_TOL).unwrap();
        worst[5] = worst[5].max(deviation(&out, &tangent_limit(&out, &a, &plane).unwrap()));
    }
    worst
}

/// Worst `|r² + d1² - r1²|` over random configurations of all four kinds.
pub fn hyperbola_residual(rng: &mut impl Rng, n: usize) -> f64 {
    let mut worst = 0.0f64;
    for i in 0..n {
        let regime = REGIMES[i % 3];
        let t = random_two_rounds(rng, regime, true);
        let outs = [
            circle_circle(t.c1, t.r1, t.c2, t.r2, &plane_bivector(t.m).unwrap()).unwrap(),
            sphere_sphere(t.c1, t.r1, t.c2, t.r2).unwrap(),
        ];
        let f = random_round_flat(rng, regime, true);
        let line = line_from(f.point, f.along).unwrap();
        let cl = circle_line(f.c1, f.r1, &plane_bivector(f.m).unwrap(), &line).unwrap();
        let f = random_round_flat(rng, regime, false);
        let sp = sphere_plane(f.c1, f.r1, &plane_from(f.point, f.axis).unwrap()).unwrap();
        for out in outs.iter().chain([&cl, &sp]) {
            worst = worst.max(out.locus_residual().abs());
        }
        // flats: d1 is the distance itself
        for (out, d) in [(&cl, cl.d), (&sp, sp.d)] {
            worst = worst.max((out.r_squared + d * d - out.r1 * out.r1).abs());
        }
    }
    worst
}
