//! Exact planar primitives: points, half-turn angles, segments, polylines,
//! affine lines, tubes, and validated segment sets.
//!
//! Segments are closed sets. All clipping helpers work on the parameter
//! interval of a segment and return exact sub-ranges, so downstream
//! measures (cone masses, tube masses, shadow lengths) are closed-form
//! per direction.

use alloc::format;
use alloc::vec::Vec;
use core::f64::consts::PI;

use crate::interval::IntervalUnion;
use crate::math;
use crate::{Error, Result, GEOM_EPS};

/// A point (or vector) in the plane.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Point {
    pub x: f64,
    pub y: f64,
}

impl Point {
    pub const fn new(x: f64, y: f64) -> Self {
        Point { x, y }
    }

    pub fn dot(self, other: Point) -> f64 {
        self.x * other.x + self.y * other.y
    }

    /// z-component of the cross product.
    pub fn cross(self, other: Point) -> f64 {
        self.x * other.y - self.y * other.x
    }

    pub fn norm(self) -> f64 {
        math::hypot(self.x, self.y)
    }

    pub fn distance(self, other: Point) -> f64 {
        math::hypot(self.x - other.x, self.y - other.y)
    }

    /// Counter-clockwise rotation by a quarter turn.
    pub fn perp(self) -> Point {
        Point::new(-self.y, self.x)
    }

    pub fn scale(self, s: f64) -> Point {
        Point::new(self.x * s, self.y * s)
    }

    pub fn rotated(self, angle: f64) -> Point {
        let (s, c) = (math::sin(angle), math::cos(angle));
        Point::new(c * self.x - s * self.y, s * self.x + c * self.y)
    }
}

impl core::ops::Add for Point {
    type Output = Point;
    fn add(self, rhs: Point) -> Point {
        Point::new(self.x + rhs.x, self.y + rhs.y)
    }
}

impl core::ops::Sub for Point {
    type Output = Point;
    fn sub(self, rhs: Point) -> Point {
        Point::new(self.x - rhs.x, self.y - rhs.y)
    }
}

/// A direction modulo a half turn, normalized to `[0, pi)`.
///
/// Normalization is idempotent; values that round up to exactly `pi`
/// are folded back to `0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Angle(f64);

impl Angle {
    pub fn new(radians: f64) -> Self {
        let mut t = radians % PI;
        if t < 0.0 {
            t += PI;
        }
        if t >= PI {
            t -= PI;
        }
        if t < 0.0 {
            t = 0.0;
        }
        Angle(t)
    }

    /// Direction of a vector, as a line direction.
    pub fn from_vector(v: Point) -> Self {
        Angle::new(math::atan2(v.y, v.x))
    }

    pub fn radians(self) -> f64 {
        self.0
    }

    /// The unit vector `(cos, sin)`.
    pub fn unit(self) -> Point {
        Point::new(math::cos(self.0), math::sin(self.0))
    }

    pub fn rotated(self, delta: f64) -> Angle {
        Angle::new(self.0 + delta)
    }

    /// Angular distance on the half-turn circle, in `[0, pi/2]`.
    pub fn distance(self, other: Angle) -> f64 {
        let d = math::abs(self.0 - other.0);
        d.min(PI - d)
    }
}

/// Projects a point onto the direction `theta`: `x . (cos t, sin t)`.
pub fn project_point(x: Point, theta: Angle) -> f64 {
    x.dot(theta.unit())
}

/// A closed segment of positive length.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Segment {
    a: Point,
    b: Point,
}

impl Segment {
    pub fn new(a: Point, b: Point) -> Result<Self> {
        if !(a.x.is_finite() && a.y.is_finite() && b.x.is_finite() && b.y.is_finite()) {
            return Err(Error::InvalidGeometry("non-finite segment endpoint".into()));
        }
        if a.distance(b) <= 0.0 {
            return Err(Error::InvalidGeometry("segment of zero length".into()));
        }
        Ok(Segment { a, b })
    }

    pub fn a(&self) -> Point {
        self.a
    }

    pub fn b(&self) -> Point {
        self.b
    }

    pub fn length(&self) -> f64 {
        self.a.distance(self.b)
    }

    /// Direction of `b - a` as a half-turn angle.
    pub fn direction_angle(&self) -> Angle {
        Angle::from_vector(self.b - self.a)
    }

    pub fn unit_tangent(&self) -> Point {
        (self.b - self.a).scale(1.0 / self.length())
    }

    pub fn midpoint(&self) -> Point {
        Point::new(0.5 * (self.a.x + self.b.x), 0.5 * (self.a.y + self.b.y))
    }

    pub fn point_at(&self, t: f64) -> Point {
        self.a + (self.b - self.a).scale(t)
    }

    /// Image under the projection onto direction `theta`, as `[lo, hi]`.
    pub fn project(&self, theta: Angle) -> (f64, f64) {
        let u = theta.unit();
        let p = self.a.dot(u);
        let q = self.b.dot(u);
        if p <= q {
            (p, q)
        } else {
            (q, p)
        }
    }

    /// Euclidean distance from a point to this (closed) segment.
    pub fn distance_to_point(&self, p: Point) -> f64 {
        let d = self.b - self.a;
        let t = ((p - self.a).dot(d) / d.dot(d)).clamp(0.0, 1.0);
        p.distance(self.point_at(t))
    }

    /// Smallest distance between two closed segments.
    pub fn distance_to_segment(&self, other: &Segment) -> f64 {
        if self.intersects_segment(other) {
            return 0.0;
        }
        let d1 = self.distance_to_point(other.a).min(self.distance_to_point(other.b));
        let d2 = other.distance_to_point(self.a).min(other.distance_to_point(self.b));
        d1.min(d2)
    }

    fn intersects_segment(&self, other: &Segment) -> bool {
        let d1 = self.b - self.a;
        let d2 = other.b - other.a;
        let denom = d1.cross(d2);
        let diff = other.a - self.a;
        if math::abs(denom) < GEOM_EPS * d1.norm() * d2.norm() {
            return false; // parallel; endpoint distances cover this case
        }
        let t = diff.cross(d2) / denom;
        let s = diff.cross(d1) / denom;
        (0.0..=1.0).contains(&t) && (0.0..=1.0).contains(&s)
    }

    /// Parameter range where `(p(t) - origin) . normal >= 0`, clipped to `[0,1]`.
    fn t_range_halfplane(&self, origin: Point, normal: Point) -> Option<(f64, f64)> {
        let c0 = (self.a - origin).dot(normal);
        let c1 = (self.b - self.a).dot(normal);
        if c1 == 0.0 {
            return if c0 >= 0.0 { Some((0.0, 1.0)) } else { None };
        }
        let t = -c0 / c1;
        let (lo, hi) = if c1 > 0.0 { (t, 1.0) } else { (0.0, t) };
        let lo = lo.max(0.0);
        let hi = hi.min(1.0);
        if lo <= hi {
            Some((lo, hi))
        } else {
            None
        }
    }

    /// Parameter range inside the closed disk `B(center, r)`, clipped to `[0,1]`.
    fn t_range_disk(&self, center: Point, r: f64) -> Option<(f64, f64)> {
        let d = self.a - center;
        let e = self.b - self.a;
        let aa = e.dot(e);
        let bb = d.dot(e);
        let cc = d.dot(d) - r * r;
        let disc = bb * bb - aa * cc;
        if disc < 0.0 {
            return None;
        }
        let sq = math::sqrt(disc);
        let lo = ((-bb - sq) / aa).max(0.0);
        let hi = ((-bb + sq) / aa).min(1.0);
        if lo <= hi {
            Some((lo, hi))
        } else {
            None
        }
    }

    /// Parameter ranges (at most one per cone half) where the segment lies
    /// in the closed two-sided cone `{d : |d . u| >= beta |d . u_perp|}`
    /// with apex `apex` and axis direction `axis`, optionally intersected
    /// with the closed disk `B(apex, r)`.
    ///
    /// Accepts any `beta > 0` (narrow cones included); the public density
    /// operations restrict beta to the documented `(0, 1]` range.
    pub fn t_ranges_cone(
        &self,
        apex: Point,
        beta: f64,
        axis: Angle,
        r: Option<f64>,
    ) -> Vec<(f64, f64)> {
        let u = axis.unit();
        let up = u.perp();
        // Each cone half is the intersection of two halfplanes through the
        // apex; the second half is the point reflection of the first.
        let n1p = u - up.scale(beta);
        let n2p = u + up.scale(beta);
        let n1m = n1p.scale(-1.0);
        let n2m = n2p.scale(-1.0);

        // Apex on the supporting line: the parametric clip would divide by
        // a coefficient proportional to the (possibly vanishing) angle
        // between the segment and the wedge boundary, so decide by the
        // direction signs instead, which is exact.
        let d = self.b - self.a;
        let len = self.length();
        let dir = d.scale(1.0 / len);
        if math::abs(dir.cross(apex - self.a)) <= GEOM_EPS {
            let t_x = ((apex - self.a).dot(d) / d.dot(d)).clamp(0.0, 1.0);
            let mut out = Vec::new();
            for (na, nb) in [(n1p, n2p), (n1m, n2m)] {
                let forward = dir.dot(na) >= 0.0 && dir.dot(nb) >= 0.0;
                let backward = dir.dot(na) <= 0.0 && dir.dot(nb) <= 0.0;
                let range = match (forward, backward) {
                    (true, true) => Some((0.0, 1.0)),
                    (true, false) => Some((t_x, 1.0)),
                    (false, true) => Some((0.0, t_x)),
                    (false, false) => None,
                };
                let range = match (range, r) {
                    (Some((lo, hi)), Some(rr)) => self
                        .t_range_disk(apex, rr)
                        .map(|(l2, h2)| (lo.max(l2), hi.min(h2)))
                        .filter(|(l, h)| l <= h),
                    (range, None) => range,
                    (None, _) => None,
                };
                if let Some((lo, hi)) = range {
                    if hi > lo {
                        out.push((lo, hi));
                    }
                }
            }
            return out;
        }

        let mut out = Vec::new();
        for (na, nb) in [(n1p, n2p), (n1m, n2m)] {
            let mut range = Some((0.0f64, 1.0f64));
            for n in [na, nb] {
                range = match range {
                    Some((lo, hi)) => self
                        .t_range_halfplane(apex, n)
                        .map(|(l2, h2)| (lo.max(l2), hi.min(h2)))
                        .filter(|(l, h)| l <= h),
                    None => None,
                };
            }
            if let (Some((lo, hi)), Some(rr)) = (range, r) {
                range = self
                    .t_range_disk(apex, rr)
                    .map(|(l2, h2)| (lo.max(l2), hi.min(h2)))
                    .filter(|(l, h)| l <= h);
            }
            if let Some((lo, hi)) = range {
                if hi > lo {
                    out.push((lo, hi));
                }
            }
        }
        out
    }

    /// Sub-segment over a parameter range; `None` when degenerate.
    pub fn sub_segment(&self, lo: f64, hi: f64) -> Option<Segment> {
        if hi <= lo {
            return None;
        }
        Segment::new(self.point_at(lo), self.point_at(hi)).ok()
    }

    /// Parameter range inside a tube (pair of halfplane clips).
    pub fn t_range_tube(&self, tube: &Tube) -> Option<(f64, f64)> {
        let u = tube.center.theta.unit();
        let on_line = u.scale(tube.center.offset);
        let lo_hp = self.t_range_halfplane(on_line - u.scale(tube.halfwidth), u)?;
        let hi_hp = self.t_range_halfplane(on_line + u.scale(tube.halfwidth), u.scale(-1.0))?;
        let lo = lo_hp.0.max(hi_hp.0);
        let hi = lo_hp.1.min(hi_hp.1);
        if lo <= hi {
            Some((lo, hi))
        } else {
            None
        }
    }

    /// Rigid motion: rotation by `angle` about the origin, then translation.
    pub fn transformed(&self, angle: f64, translation: Point) -> Segment {
        Segment {
            a: self.a.rotated(angle) + translation,
            b: self.b.rotated(angle) + translation,
        }
    }
}

/// Projects a segment and returns the closed image interval `[lo, hi]`.
pub fn project_segment(s: &Segment, theta: Angle) -> (f64, f64) {
    s.project(theta)
}

/// An ordered polyline with at least two distinct consecutive vertices.
#[derive(Debug, Clone, PartialEq)]
pub struct Polyline {
    vertices: Vec<Point>,
}

impl Polyline {
    pub fn new(vertices: Vec<Point>) -> Result<Self> {
        if vertices.len() < 2 {
            return Err(Error::InvalidGeometry("polyline needs at least 2 vertices".into()));
        }
        for w in vertices.windows(2) {
            if w[0].distance(w[1]) <= GEOM_EPS {
                return Err(Error::InvalidGeometry("consecutive polyline vertices coincide".into()));
            }
        }
        Ok(Polyline { vertices })
    }

    pub fn vertices(&self) -> &[Point] {
        &self.vertices
    }

    pub fn edges(&self) -> Vec<Segment> {
        self.vertices
            .windows(2)
            .map(|w| Segment { a: w[0], b: w[1] })
            .collect()
    }

    pub fn total_length(&self) -> f64 {
        let lens: Vec<f64> = self.vertices.windows(2).map(|w| w[0].distance(w[1])).collect();
        math::pairwise_sum(&lens)
    }
}

/// The affine line `{ p : p . (cos theta, sin theta) = offset }`.
///
/// The `(theta, offset)` pair is canonical: one pair per line.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AffineLine {
    pub theta: Angle,
    pub offset: f64,
}

impl AffineLine {
    pub fn new(theta: Angle, offset: f64) -> Self {
        AffineLine { theta, offset }
    }

    /// The line through `x` perpendicular to the direction `theta`.
    pub fn through_point(x: Point, theta: Angle) -> Self {
        AffineLine { theta, offset: project_point(x, theta) }
    }

    /// Unit vector along the line (`theta` rotated a quarter turn).
    pub fn direction(&self) -> Point {
        self.theta.unit().perp()
    }

    /// Direction of the line as a half-turn angle.
    pub fn direction_angle(&self) -> Angle {
        self.theta.rotated(PI / 2.0)
    }

    /// A point on the line.
    pub fn base_point(&self) -> Point {
        self.theta.unit().scale(self.offset)
    }

    pub fn distance_to_point(&self, p: Point) -> f64 {
        math::abs(project_point(p, self.theta) - self.offset)
    }
}

/// The closed `halfwidth`-neighborhood of an affine line.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tube {
    pub center: AffineLine,
    pub halfwidth: f64,
}

impl Tube {
    pub fn new(center: AffineLine, halfwidth: f64) -> Result<Self> {
        if !(halfwidth > 0.0) {
            return Err(Error::InvalidGeometry("tube halfwidth must be positive".into()));
        }
        Ok(Tube { center, halfwidth })
    }

    /// Membership via the projection distance, which equals the Euclidean
    /// distance to the center line.
    pub fn contains(&self, p: Point) -> bool {
        self.center.distance_to_point(p) <= self.halfwidth
    }
}

/// A finite union of segments inside a bounding ball.
///
/// Distinct segments may touch or cross in isolated points, but pairs with
/// a positive-length (collinear) overlap are rejected so that per-line
/// intersection counting stays well-defined.
#[derive(Debug, Clone, PartialEq)]
pub struct SegmentSet {
    segments: Vec<Segment>,
    bounding_radius: f64,
}

impl SegmentSet {
    pub fn new(segments: Vec<Segment>, bounding_radius: f64) -> Result<Self> {
        if !(bounding_radius > 0.0) {
            return Err(Error::InvalidGeometry("bounding radius must be positive".into()));
        }
        for s in &segments {
            for p in [s.a, s.b] {
                if p.norm() > bounding_radius + GEOM_EPS {
                    return Err(Error::InvalidGeometry(format!(
                        "endpoint ({}, {}) outside bounding ball of radius {}",
                        p.x, p.y, bounding_radius
                    )));
                }
            }
        }
        for i in 0..segments.len() {
            for j in (i + 1)..segments.len() {
                if segments_overlap(&segments[i], &segments[j]) {
                    return Err(Error::InvalidGeometry(format!(
                        "segments {i} and {j} overlap with positive length"
                    )));
                }
            }
        }
        Ok(SegmentSet { segments, bounding_radius })
    }

    pub fn empty(bounding_radius: f64) -> Self {
        SegmentSet { segments: Vec::new(), bounding_radius }
    }

    pub fn from_polylines(polylines: &[Polyline], bounding_radius: f64) -> Result<Self> {
        let mut segs = Vec::new();
        for p in polylines {
            segs.extend(p.edges());
        }
        SegmentSet::new(segs, bounding_radius)
    }

    pub fn segments(&self) -> &[Segment] {
        &self.segments
    }

    pub fn bounding_radius(&self) -> f64 {
        self.bounding_radius
    }

    pub fn is_empty(&self) -> bool {
        self.segments.is_empty()
    }

    /// Total length (the one-dimensional measure of the union, since
    /// positive-length overlaps are excluded by construction).
    pub fn h1_length(&self) -> f64 {
        let lens: Vec<f64> = self.segments.iter().map(Segment::length).collect();
        math::pairwise_sum(&lens)
    }

    /// Rigid motion applied to every segment. The bounding radius grows by
    /// the translation norm so the result always validates.
    pub fn transformed(&self, angle: f64, translation: Point) -> SegmentSet {
        SegmentSet {
            segments: self.segments.iter().map(|s| s.transformed(angle, translation)).collect(),
            bounding_radius: self.bounding_radius + translation.norm() + GEOM_EPS,
        }
    }

    /// Smallest distance from a point to the union.
    pub fn distance_to_point(&self, p: Point) -> f64 {
        self.segments
            .iter()
            .map(|s| s.distance_to_point(p))
            .fold(f64::INFINITY, f64::min)
    }
}

/// True when the two segments are collinear and share a sub-segment of
/// positive length.
fn segments_overlap(s1: &Segment, s2: &Segment) -> bool {
    let d1 = s1.b - s1.a;
    let d2 = s2.b - s2.a;
    let scale = d1.norm() * d2.norm();
    if math::abs(d1.cross(d2)) > GEOM_EPS * scale {
        return false;
    }
    if math::abs(d1.cross(s2.a - s1.a)) > GEOM_EPS * d1.norm() * (1.0 + (s2.a - s1.a).norm()) {
        return false;
    }
    // Same supporting line: compare parameter ranges on s1.
    let len2 = d1.dot(d1);
    let t0 = (s2.a - s1.a).dot(d1) / len2;
    let t1 = (s2.b - s1.a).dot(d1) / len2;
    let (lo, hi) = if t0 <= t1 { (t0, t1) } else { (t1, t0) };
    let ov_lo = lo.max(0.0);
    let ov_hi = hi.min(1.0);
    (ov_hi - ov_lo) * d1.norm() > GEOM_EPS
}

/// Distinct intersection points of a line with the union of segments.
///
/// Shared points (e.g. a crossing shared by two segments) are counted
/// once. Returns `CollinearOverlap` when the line contains a full segment,
/// a measure-zero direction event the caller must perturb away.
pub fn line_set_intersection(set: &SegmentSet, line: &AffineLine) -> Result<(usize, Vec<Point>)> {
    let u = line.theta.unit();
    let mut hits: Vec<Point> = Vec::new();
    for s in set.segments() {
        let f0 = s.a.dot(u) - line.offset;
        let f1 = s.b.dot(u) - line.offset;
        let scale = s.length().max(1.0);
        if math::abs(f0) <= GEOM_EPS * scale && math::abs(f1) <= GEOM_EPS * scale {
            return Err(Error::CollinearOverlap);
        }
        if (f0 > 0.0 && f1 > 0.0) || (f0 < 0.0 && f1 < 0.0) {
            continue;
        }
        let t = f0 / (f0 - f1);
        hits.push(s.point_at(t.clamp(0.0, 1.0)));
    }
    // Set semantics: dedupe coincident hit points.
    let mut distinct: Vec<Point> = Vec::with_capacity(hits.len());
    for p in hits {
        if !distinct.iter().any(|q| q.distance(p) <= GEOM_EPS) {
            distinct.push(p);
        }
    }
    Ok((distinct.len(), distinct))
}

/// Directions `theta in [0, pi)` whose line through `x` meets the segment.
///
/// The ray directions from `x` to points of `s` sweep an arc; converted to
/// line directions and shifted by a quarter turn (the line of parameter
/// `theta` runs perpendicular to `(cos theta, sin theta)`). When `x` lies
/// on the segment the full circle is returned by convention.
pub fn subtended_directions(x: Point, s: &Segment) -> IntervalUnion {
    if s.distance_to_point(x) <= GEOM_EPS {
        return IntervalUnion::from_arcs(&[(0.0, PI)]).expect("full circle");
    }
    let u = s.a - x;
    let v = s.b - x;
    let sweep = math::atan2(u.cross(v), u.dot(v));
    let width = math::abs(sweep);
    let ray_start = math::atan2(u.y, u.x);
    let lo = if sweep >= 0.0 { ray_start } else { ray_start + sweep };
    // Line direction -> theta parameter of the hitting lines.
    let start = Angle::new(lo + PI / 2.0).radians();
    IntervalUnion::from_arcs(&[(start, width.min(PI))]).expect("valid arc")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn seg(ax: f64, ay: f64, bx: f64, by: f64) -> Segment {
        Segment::new(Point::new(ax, ay), Point::new(bx, by)).unwrap()
    }

    #[test]
    fn angle_normalization_is_idempotent() {
        for raw in [-7.5, -PI, -1e-20, 0.0, 1.0, PI, 4.0, 12.0] {
            let a = Angle::new(raw);
            assert!((0.0..PI).contains(&a.radians()), "raw {raw} -> {}", a.radians());
            let b = Angle::new(a.radians());
            assert_eq!(a.radians(), b.radians());
        }
    }

    #[test]
    fn project_point_axis_cases() {
        assert!((project_point(Point::new(1.0, 0.0), Angle::new(0.0)) - 1.0).abs() < 1e-15);
        assert!((project_point(Point::new(0.0, 1.0), Angle::new(PI / 2.0)) - 1.0).abs() < 1e-15);
        let diag = project_point(Point::new(1.0, 1.0), Angle::new(PI / 4.0));
        assert!((diag - core::f64::consts::SQRT_2).abs() < 1e-15);
    }

    #[test]
    fn project_segment_widths() {
        let s = seg(0.0, 0.0, 1.0, 0.0);
        let (lo, hi) = s.project(Angle::new(0.0));
        assert!((lo - 0.0).abs() < 1e-15 && (hi - 1.0).abs() < 1e-15);
        let (lo, hi) = s.project(Angle::new(PI / 2.0));
        assert!((hi - lo).abs() < 1e-15);
        let (lo, hi) = s.project(Angle::new(PI / 3.0));
        assert!((hi - lo - 0.5).abs() < 1e-15);
    }

    #[test]
    fn projection_width_identity() {
        let s = seg(-0.3, 0.2, 0.5, 0.9);
        for k in 0..64 {
            let theta = Angle::new(k as f64 * PI / 64.0 + 0.013);
            let (lo, hi) = s.project(theta);
            let expected =
                s.length() * math::abs(math::cos(theta.radians() - s.direction_angle().radians()));
            assert!((hi - lo - expected).abs() < 1e-12);
        }
    }

    #[test]
    fn line_hits_unit_segment_once() {
        let set = SegmentSet::new(alloc::vec![seg(0.0, 0.0, 1.0, 0.0)], 2.0).unwrap();
        let line = AffineLine::new(Angle::new(0.0), 0.5); // vertical line x = 0.5
        let (count, pts) = line_set_intersection(&set, &line).unwrap();
        assert_eq!(count, 1);
        assert!((pts[0].x - 0.5).abs() < 1e-12);
    }

    #[test]
    fn shared_crossing_point_counts_once() {
        let set = SegmentSet::new(
            alloc::vec![seg(-0.5, 0.0, 0.5, 0.0), seg(0.0, -0.5, 0.0, 0.5)],
            2.0,
        )
        .unwrap();
        // Generic line through the crossing point (origin).
        let line = AffineLine::through_point(Point::new(0.0, 0.0), Angle::new(0.7));
        let (count, _) = line_set_intersection(&set, &line).unwrap();
        assert_eq!(count, 1);
    }

    #[test]
    fn two_parallel_segments_hit_twice() {
        let set = SegmentSet::new(
            alloc::vec![seg(0.0, 0.0, 1.0, 0.0), seg(0.0, 1.0, 1.0, 1.0)],
            3.0,
        )
        .unwrap();
        let line = AffineLine::new(Angle::new(0.0), 0.5);
        let (count, _) = line_set_intersection(&set, &line).unwrap();
        assert_eq!(count, 2);
    }

    #[test]
    fn collinear_line_is_rejected() {
        let set = SegmentSet::new(alloc::vec![seg(0.0, 0.0, 1.0, 0.0)], 2.0).unwrap();
        let line = AffineLine::new(Angle::new(PI / 2.0), 0.0); // the x-axis itself
        assert_eq!(line_set_intersection(&set, &line), Err(Error::CollinearOverlap));
    }

    #[test]
    fn overlapping_collinear_segments_rejected() {
        let r = SegmentSet::new(
            alloc::vec![seg(0.0, 0.0, 1.0, 0.0), seg(0.5, 0.0, 1.5, 0.0)],
            3.0,
        );
        assert!(r.is_err());
        // Touching endpoint is fine.
        assert!(SegmentSet::new(
            alloc::vec![seg(0.0, 0.0, 1.0, 0.0), seg(1.0, 0.0, 2.0, 0.0)],
            3.0
        )
        .is_ok());
    }

    #[test]
    fn subtended_measure_of_facing_segment() {
        // From the origin, the segment {1} x [-1, 1] spans ray directions
        // [-pi/4, pi/4], a quarter turn of line directions.
        let s = seg(1.0, -1.0, 1.0, 1.0);
        let m = subtended_directions(Point::new(0.0, 0.0), &s).measure();
        assert!((m - PI / 2.0).abs() < 1e-12, "measure {m}");
    }

    #[test]
    fn subtended_shrinks_with_segment() {
        let s = seg(10.0, -0.01, 10.0, 0.01);
        let m = subtended_directions(Point::new(0.0, 0.0), &s).measure();
        assert!(m < 0.005);
    }

    #[test]
    fn subtended_on_segment_is_full_circle() {
        let s = seg(-1.0, 0.0, 1.0, 0.0);
        let m = subtended_directions(Point::new(0.2, 0.0), &s).measure();
        assert!((m - PI).abs() < 1e-12);
    }

    #[test]
    fn subtended_collinear_outside_is_degenerate() {
        let s = seg(2.0, 0.0, 3.0, 0.0);
        let m = subtended_directions(Point::new(0.0, 0.0), &s).measure();
        assert!(m.abs() < 1e-12);
    }

    #[test]
    fn cone_clip_vertical_segment_on_axis() {
        let s = seg(0.0, -0.5, 0.0, 0.5);
        let ranges = s.t_ranges_cone(Point::new(0.0, 0.0), 0.5, Angle::new(PI / 2.0), Some(0.25));
        let total: f64 = ranges.iter().map(|&(lo, hi)| (hi - lo) * s.length()).sum();
        assert!((total - 0.5).abs() < 1e-12, "got {total}");
    }

    #[test]
    fn cone_clip_horizontal_segment_is_empty() {
        let s = seg(-0.5, 0.0, 0.5, 0.0);
        let ranges = s.t_ranges_cone(Point::new(0.0, 0.0), 0.5, Angle::new(PI / 2.0), Some(10.0));
        let total: f64 = ranges.iter().map(|&(lo, hi)| (hi - lo) * s.length()).sum();
        assert!(total < 1e-12);
    }

    #[test]
    fn tube_membership_matches_distance() {
        let line = AffineLine::through_point(Point::new(0.3, -0.2), Angle::new(1.1));
        let tube = Tube::new(line, 0.25).unwrap();
        for k in 0..50 {
            let p = Point::new((k as f64) * 0.07 - 1.5, ((3 * k % 11) as f64) * 0.1 - 0.5);
            assert_eq!(tube.contains(p), line.distance_to_point(p) <= 0.25);
        }
    }
}
