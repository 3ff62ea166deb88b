//! Random scene generation for randomized checks and the CLI self-tests.

use alloc::vec::Vec;

use rand::Rng;

use crate::geom::{Point, Segment, SegmentSet};

/// A random segment set inside the ball of the given radius: up to
/// `max_segments` segments with endpoints in the concentric 0.95-ball and
/// length at least 0.05. Regenerates on the (measure-zero) event of a
/// collinear overlap, so the result always validates.
pub fn random_segment_set<R: Rng>(rng: &mut R, max_segments: usize, radius: f64) -> SegmentSet {
    assert!(max_segments >= 1 && radius > 0.0);
    loop {
        let count = rng.gen_range(1..=max_segments);
        let mut segs = Vec::with_capacity(count);
        while segs.len() < count {
            let a = random_point_in_disk(rng, 0.95 * radius);
            let b = random_point_in_disk(rng, 0.95 * radius);
            if a.distance(b) < 0.05 * radius {
                continue;
            }
            segs.push(Segment::new(a, b).expect("positive length"));
        }
        if let Ok(set) = SegmentSet::new(segs, radius) {
            return set;
        }
    }
}

/// Uniform point in the closed disk of the given radius.
pub fn random_point_in_disk<R: Rng>(rng: &mut R, radius: f64) -> Point {
    let r = radius * crate::math::sqrt(rng.gen_range(0.0f64..1.0));
    let phi = rng.gen_range(0.0..core::f64::consts::TAU);
    Point::new(r * crate::math::cos(phi), r * crate::math::sin(phi))
}
