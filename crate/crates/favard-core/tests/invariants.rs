//! Property-based invariants of the geometric and integral layers.

use core::f64::consts::PI;

use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha12Rng;

use favard_core::cones::{
    besicovitch_alternative, conical_mass, max_conical_density, AlternativeOutcome,
};
use favard_core::extract::cone_condition_check;
use favard_core::favard;
use favard_core::geom::{
    line_set_intersection, subtended_directions, AffineLine, Angle, Point, Segment, SegmentSet,
};
use favard_core::interval::IntervalUnion;
use favard_core::quad::QuadratureConfig;
use favard_core::synth::random_segment_set;
use favard_core::WeightedCloud;

fn finite_coord() -> impl Strategy<Value = f64> {
    (-1.0f64..1.0).prop_filter("finite", |x| x.is_finite())
}

fn arb_segment() -> impl Strategy<Value = Segment> {
    (finite_coord(), finite_coord(), finite_coord(), finite_coord())
        .prop_filter_map("positive length", |(ax, ay, bx, by)| {
            let a = Point::new(ax, ay);
            let b = Point::new(bx, by);
            (a.distance(b) > 0.05).then(|| Segment::new(a, b).unwrap())
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn interval_union_measure_is_idempotent(
        raw in proptest::collection::vec((0.0f64..10.0, 0.0f64..2.0), 0..12)
    ) {
        let intervals: Vec<(f64, f64)> = raw.iter().map(|&(lo, w)| (lo, lo + w)).collect();
        let u = IntervalUnion::from_intervals(&intervals).unwrap();
        let re = IntervalUnion::from_intervals(u.components()).unwrap();
        prop_assert_eq!(u.components(), re.components());
        prop_assert!((u.measure() - re.measure()).abs() < 1e-15);
    }

    #[test]
    fn projection_width_matches_direction_cosine(s in arb_segment(), t in 0.0f64..PI) {
        let theta = Angle::new(t);
        let (lo, hi) = s.project(theta);
        let expected = s.length()
            * (theta.radians() - s.direction_angle().radians()).cos().abs();
        prop_assert!((hi - lo - expected).abs() < 1e-12);
    }

    #[test]
    fn line_counts_survive_rigid_motions(seed in 0u64..1000, rot in 0.0f64..PI, tx in -0.5f64..0.5, ty in -0.5f64..0.5) {
        let mut rng = ChaCha12Rng::seed_from_u64(seed);
        let set = random_segment_set(&mut rng, 8, 1.0);
        let line = AffineLine::new(Angle::new(1.234 + 0.1 * seed as f64), 0.05);
        let moved_set = set.transformed(rot, Point::new(tx, ty));
        // Transform the line the same way: a point and the direction map
        // through the motion, and the (theta, offset) pair is rebuilt.
        let p0 = line.base_point().rotated(rot) + Point::new(tx, ty);
        let dir = line.direction().rotated(rot);
        let theta2 = Angle::from_vector(dir).rotated(PI / 2.0);
        let moved_line = AffineLine::through_point(p0, theta2);
        let a = line_set_intersection(&set, &line);
        let b = line_set_intersection(&moved_set, &moved_line);
        match (a, b) {
            (Ok((ca, _)), Ok((cb, _))) => prop_assert_eq!(ca, cb),
            (Err(_), Err(_)) => {}
            (x, y) => prop_assert!(false, "one side errored: {:?} vs {:?}", x.map(|v| v.0), y.map(|v| v.0)),
        }
    }

    #[test]
    fn conical_mass_monotone(seed in 0u64..500, r1 in 0.05f64..1.0, dr in 0.0f64..1.0, b1 in 0.05f64..1.0, db in 0.0f64..0.5) {
        let mut rng = ChaCha12Rng::seed_from_u64(seed);
        let set = random_segment_set(&mut rng, 10, 1.0);
        let x = Point::new(0.1, -0.05);
        let axis = Angle::new(PI / 2.0);
        let r2 = r1 + dr;
        let m1 = conical_mass(&set, x, b1, r1, axis);
        let m2 = conical_mass(&set, x, b1, r2, axis);
        prop_assert!(m2 + 1e-12 >= m1, "mass not monotone in radius: {m1} vs {m2}");
        let b2 = (b1 + db).min(1.0);
        let wide = conical_mass(&set, x, b1, r1, axis);
        let narrow = conical_mass(&set, x, b2, r1, axis);
        prop_assert!(wide + 1e-12 >= narrow, "wider cone lost mass: {wide} vs {narrow}");
    }

    #[test]
    fn density_dominates_sampled_ratios(seed in 0u64..300, b in 0.1f64..1.0) {
        let mut rng = ChaCha12Rng::seed_from_u64(seed);
        let set = random_segment_set(&mut rng, 6, 1.0);
        let x = set.segments()[0].midpoint();
        let axis = Angle::new(PI / 2.0);
        let sup = max_conical_density(&set, x, b, axis);
        for k in 1..=24 {
            let r = k as f64 * 0.1;
            let ratio = conical_mass(&set, x, b, r, axis) / r;
            prop_assert!(sup + 1e-9 * sup.max(1.0) >= ratio, "sup {sup} below ratio {ratio}");
        }
    }

    #[test]
    fn removal_set_shrinks_as_cones_narrow(seed in 0u64..400) {
        let mut rng = ChaCha12Rng::seed_from_u64(seed);
        let set = random_segment_set(&mut rng, 6, 1.0);
        let cloud = WeightedCloud::from_arclength_sampling(&set, set.h1_length() / 150.0).unwrap();
        let axis = Angle::new(PI / 2.0);
        let betas = [0.2, 0.4, 0.8];
        let mut previous: Option<Vec<(usize, usize)>> = None;
        for &b in &betas {
            let v = cone_condition_check(&cloud, b, axis).violations;
            if let Some(prev) = previous {
                // Narrower cone: every violation is a violation at the
                // wider cone too.
                for pair in &v {
                    prop_assert!(prev.contains(pair));
                }
            }
            previous = Some(v);
        }
    }
}

#[test]
fn subtended_measure_agrees_with_line_sampling() {
    // Monte Carlo oracle over directions: a direction hits the segment
    // when the line through x in that direction meets it.
    let cases = [
        (Point::new(0.0, 0.0), Segment::new(Point::new(1.0, -1.0), Point::new(1.0, 1.0)).unwrap()),
        (Point::new(0.2, -0.4), Segment::new(Point::new(-0.3, 0.5), Point::new(0.8, 0.7)).unwrap()),
        (Point::new(-0.9, 0.1), Segment::new(Point::new(0.5, -0.2), Point::new(0.1, 0.9)).unwrap()),
    ];
    let n = 100_000u32;
    for (x, s) in cases {
        let measure = subtended_directions(x, &s).measure();
        let mut rng = ChaCha12Rng::seed_from_u64(9);
        let mut hits = 0u32;
        for k in 0..n {
            let _ = k;
            let theta: f64 = rand::Rng::gen_range(&mut rng, 0.0..PI);
            let line = AffineLine::through_point(x, Angle::new(theta));
            // Line meets the segment iff the endpoints straddle it.
            let u = line.theta.unit();
            let f0 = s.a().dot(u) - line.offset;
            let f1 = s.b().dot(u) - line.offset;
            if f0 * f1 <= 0.0 {
                hits += 1;
            }
        }
        let p = hits as f64 / n as f64;
        let est = p * PI;
        let se = PI * (p * (1.0 - p) / n as f64).sqrt();
        assert!(
            (measure - est).abs() <= 3.0 * se.max(1e-4),
            "measure {measure} vs MC {est} +- {se}"
        );
    }
}

#[test]
fn double_hit_directions_match_line_sampling() {
    // Exact first-branch direction set against a Monte Carlo count of
    // directions whose line through x meets the set away from x.
    let set = SegmentSet::new(
        vec![
            Segment::new(Point::new(0.0, -1.5), Point::new(0.0, 1.5)).unwrap(),
            Segment::new(Point::new(0.4, -1.0), Point::new(0.5, 1.2)).unwrap(),
            Segment::new(Point::new(-0.8, 0.3), Point::new(0.9, 0.45)).unwrap(),
        ],
        2.0,
    )
    .unwrap();
    let x = Point::new(0.0, 0.0);
    let out = besicovitch_alternative(&set, x, 0.05, 1.0, Angle::new(PI / 2.0)).unwrap();
    let directions = match out {
        AlternativeOutcome::DoubleHits { directions } => directions,
        AlternativeOutcome::HeavyTubes { .. } => panic!("expected the double-hit branch"),
    };
    // The window at beta = 0.05 is nearly the whole circle; estimate the
    // raw double-hit set and intersect manually via membership counts.
    let window = favard_core::cones::direction_window(0.05, Angle::new(PI / 2.0));
    let mut rng = ChaCha12Rng::seed_from_u64(31);
    let n = 100_000u32;
    let mut agree = 0u32;
    let mut hit = 0u32;
    for _ in 0..n {
        let theta = rand::Rng::gen_range(&mut rng, 0.0..PI);
        let line = AffineLine::through_point(x, Angle::new(theta));
        let mc_hit = window.set.contains(theta)
            && set.segments().iter().skip(1).any(|s| {
                let u = line.theta.unit();
                let f0 = s.a().dot(u) - line.offset;
                let f1 = s.b().dot(u) - line.offset;
                f0 * f1 <= 0.0
            });
        let exact_hit = directions.contains(theta);
        hit += u32::from(mc_hit);
        agree += u32::from(mc_hit == exact_hit);
    }
    // Boundary effects only: the two classifications agree off a null set.
    assert!(agree as f64 / n as f64 > 0.995, "agreement {}", agree as f64 / n as f64);
    let p = hit as f64 / n as f64;
    let est = p * PI;
    let se = PI * (p * (1.0 - p) / n as f64).sqrt();
    assert!(
        (directions.measure() - est).abs() <= 3.0 * se,
        "exact {} vs MC {est} +- {se}",
        directions.measure()
    );
}

#[test]
fn straightening_family_reduces_high_density_mass() {
    // As the bend flattens, the defect decreases and so does the mass of
    // points whose cones capture the other arm.
    let beta = 0.1;
    let eps = 0.5;
    let q = QuadratureConfig::default();
    let mut last_mass = f64::INFINITY;
    let mut last_defect = f64::INFINITY;
    for t in [0.4f64, 0.2, 0.1, 0.05] {
        let set = SegmentSet::new(
            vec![
                Segment::new(Point::new(-0.5, 0.0), Point::new(0.0, 0.0)).unwrap(),
                Segment::new(
                    Point::new(0.0, 0.0),
                    Point::new(0.5 * t.cos(), 0.5 * t.sin()),
                )
                .unwrap(),
            ],
            2.0,
        )
        .unwrap();
        let (_, mass) =
            favard_core::cones::high_density_points(&set, beta, eps, 5e-3, Angle::new(PI / 2.0));
        let (defect, _) = favard::favard_defect(&set, &q).unwrap();
        assert!(mass <= last_mass + 1e-12, "mass grew: {mass} after {last_mass}");
        assert!(defect < last_defect, "defect grew: {defect} after {last_defect}");
        last_mass = mass;
        last_defect = defect;
    }
}

#[test]
fn crofton_maximality_and_defect_on_random_sets() {
    let q = QuadratureConfig { tol_quad: 1e-6, ..Default::default() };
    let mut rng = ChaCha12Rng::seed_from_u64(2024);
    for _ in 0..25 {
        let set = random_segment_set(&mut rng, 12, 1.0);
        let h1 = set.h1_length();
        assert_eq!(favard::crofton_integral(&set), h1);
        let (fav, _) = favard::favard_length(&set, &q).unwrap();
        assert!(fav <= 2.0 * h1 + 1e-6, "favard {fav} exceeds 2 h1 {}", 2.0 * h1);
        let (defect, _) = favard::favard_defect(&set, &q).unwrap();
        assert!(
            (defect - (2.0 * h1 - fav)).abs() <= 2.0 * q.tol_quad,
            "defect identity off: {defect} vs {}",
            2.0 * h1 - fav
        );
    }
}

#[test]
fn favard_invariant_under_rigid_motions() {
    let q = QuadratureConfig { tol_quad: 1e-7, ..Default::default() };
    let mut rng = ChaCha12Rng::seed_from_u64(77);
    for k in 0..6 {
        let set = random_segment_set(&mut rng, 8, 1.0);
        let (f0, _) = favard::favard_length(&set, &q).unwrap();
        let moved = set.transformed(0.3 + 0.5 * k as f64, Point::new(0.2, -0.7));
        let (f1, _) = favard::favard_length(&moved, &q).unwrap();
        assert!((f0 - f1).abs() < 1e-6, "favard moved from {f0} to {f1}");
    }
}
