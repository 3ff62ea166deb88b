//! The kinematic measure of lines spanned by two curves.
//!
//! Three independent routes are provided and cross-checked in tests: the
//! exact double integral over the two curves (whose integrand is the
//! Jacobian of the map from parameter pairs to line coordinates), a
//! per-direction overlap oracle that is exact in the offset variable, and
//! a seeded Monte Carlo line sampler.

use alloc::vec::Vec;
use core::f64::consts::PI;

use rand::Rng;

use crate::geom::{Angle, Point, Segment};
use crate::math;
use crate::mc;
use crate::quad::{self, QuadratureConfig};
use crate::{Error, Result, GEOM_EPS};

/// Relative tolerance of the pair-measure tensor quadrature.
pub const DEFAULT_PAIR_TOL: f64 = 1e-6;

/// A piecewise-linear curve (or union of pieces) with its arclength
/// parametrization; tangents are constant on each piece.
#[derive(Debug, Clone, PartialEq)]
pub struct CurveWithTangents {
    segments: Vec<Segment>,
    /// Cumulative arclength at each segment start; last entry is the total.
    cum: Vec<f64>,
}

impl CurveWithTangents {
    pub fn from_segments(segments: Vec<Segment>) -> Result<Self> {
        if segments.is_empty() {
            return Err(Error::InvalidGeometry("curve needs at least one segment".into()));
        }
        let mut cum = Vec::with_capacity(segments.len() + 1);
        let mut acc = 0.0;
        for s in &segments {
            cum.push(acc);
            acc += s.length();
        }
        cum.push(acc);
        Ok(CurveWithTangents { segments, cum })
    }

    pub fn segments(&self) -> &[Segment] {
        &self.segments
    }

    pub fn total_length(&self) -> f64 {
        *self.cum.last().unwrap()
    }

    fn locate(&self, s: f64) -> (usize, f64) {
        let total = self.total_length();
        let s = s.clamp(0.0, total);
        let mut idx = match self.cum.binary_search_by(|c| c.partial_cmp(&s).unwrap()) {
            Ok(i) => i,
            Err(i) => i.saturating_sub(1),
        };
        if idx >= self.segments.len() {
            idx = self.segments.len() - 1;
        }
        (idx, s - self.cum[idx])
    }

    pub fn point_at(&self, s: f64) -> Point {
        let (i, local) = self.locate(s);
        self.segments[i].point_at(local / self.segments[i].length())
    }

    pub fn tangent_at(&self, s: f64) -> Point {
        let (i, _) = self.locate(s);
        self.segments[i].unit_tangent()
    }

    /// Arclength samples `(s, point, unit tangent)`.
    pub fn samples(&self, count: usize) -> Vec<(f64, Point, Point)> {
        let total = self.total_length();
        (0..count)
            .map(|k| {
                let s = (k as f64 + 0.5) * total / count as f64;
                (s, self.point_at(s), self.tangent_at(s))
            })
            .collect()
    }

    /// Smallest distance between two curves.
    pub fn distance_to_curve(&self, other: &CurveWithTangents) -> f64 {
        let mut best = f64::INFINITY;
        for a in &self.segments {
            for b in &other.segments {
                best = best.min(a.distance_to_segment(b));
            }
        }
        best
    }
}

/// The unique direction whose projection identifies the two points:
/// perpendicular to their connecting direction.
pub fn connecting_angle(x1: Point, x2: Point) -> Result<Angle> {
    if x1.distance(x2) < GEOM_EPS {
        return Err(Error::DegeneratePair);
    }
    let d = x2 - x1;
    Ok(Angle::new(math::atan2(d.y, d.x) + PI / 2.0))
}

/// The map from parameter pairs to line coordinates `(theta, t)`, with the
/// angle kept raw (continuous near the evaluation point) for finite
/// differencing.
pub fn line_coordinates(
    g1: &CurveWithTangents,
    g2: &CurveWithTangents,
    s1: f64,
    s2: f64,
) -> Result<(f64, f64)> {
    let x1 = g1.point_at(s1);
    let x2 = g2.point_at(s2);
    if x1.distance(x2) < GEOM_EPS {
        return Err(Error::DegeneratePair);
    }
    let d = x2 - x1;
    let theta = math::atan2(d.y, d.x) + PI / 2.0;
    let t = x1.dot(Point::new(math::cos(theta), math::sin(theta)));
    Ok((theta, t))
}

/// Closed form of the Jacobian of [`line_coordinates`]: the product of the
/// projected tangent magnitudes over the point distance.
pub fn pair_integrand(
    g1: &CurveWithTangents,
    g2: &CurveWithTangents,
    s1: f64,
    s2: f64,
) -> Result<f64> {
    let x1 = g1.point_at(s1);
    let x2 = g2.point_at(s2);
    let theta = connecting_angle(x1, x2)?;
    let e = theta.unit();
    Ok(math::abs(g1.tangent_at(s1).dot(e)) * math::abs(g2.tangent_at(s2).dot(e))
        / x1.distance(x2))
}

fn tensor_gl_pair(
    s1: &Segment,
    o1: f64,
    s2: &Segment,
    o2: f64,
    tol: f64,
) -> Result<f64> {
    let rule = quad::gauss_legendre(8);
    let (l1, l2) = (s1.length(), s2.length());
    let tau1 = s1.unit_tangent();
    let tau2 = s2.unit_tangent();
    let _ = (o1, o2);
    let eval = |m: usize| -> f64 {
        let h1 = l1 / m as f64;
        let h2 = l2 / m as f64;
        let mut per_panel = Vec::with_capacity(m * m);
        for p in 0..m {
            let c1 = (p as f64 + 0.5) * h1;
            for q in 0..m {
                let c2 = (q as f64 + 0.5) * h2;
                let mut acc = 0.0;
                for &(xa, wa) in &rule {
                    let u = c1 + 0.5 * h1 * xa;
                    let x1 = s1.point_at(u / l1);
                    for &(xb, wb) in &rule {
                        let v = c2 + 0.5 * h2 * xb;
                        let x2 = s2.point_at(v / l2);
                        let d = x2 - x1;
                        let dist = d.norm();
                        let theta = math::atan2(d.y, d.x) + PI / 2.0;
                        let e = Point::new(math::cos(theta), math::sin(theta));
                        acc += wa * wb * math::abs(tau1.dot(e)) * math::abs(tau2.dot(e)) / dist;
                    }
                }
                per_panel.push(acc * 0.25 * h1 * h2);
            }
        }
        math::pairwise_sum(&per_panel)
    };
    let mut m = 1;
    let mut prev = eval(m);
    loop {
        m *= 2;
        if m > 512 {
            return Err(Error::QuadratureNotConverged { estimate: prev, error: f64::NAN });
        }
        let cur = eval(m);
        let diff = math::abs(cur - prev);
        if diff <= tol * math::abs(cur).max(1e-12) {
            return Ok(cur);
        }
        prev = cur;
    }
}

/// The pair-incidence measure of two disjoint curves: the integral over
/// both arclengths of the projected-tangent product over the distance.
/// Counts line incidences with multiplicity.
pub fn pair_line_measure_formula(
    g1: &CurveWithTangents,
    g2: &CurveWithTangents,
    tol: f64,
) -> Result<f64> {
    let min_dist = g1.distance_to_curve(g2);
    if min_dist < 10.0 * GEOM_EPS {
        return Err(Error::CurvesTooClose { min_distance: min_dist });
    }
    let mut parts = Vec::new();
    for a in &g1.segments {
        for b in &g2.segments {
            parts.push(tensor_gl_pair(a, 0.0, b, 0.0, tol)?);
        }
    }
    Ok(math::pairwise_sum(&parts))
}

/// Independent oracle for two single segments: per direction, each segment
/// meets a line at most once, so the pair measure in the offset variable
/// is exactly the overlap of the two shadows; only the direction integral
/// is quadratured.
pub fn pair_line_measure_oracle(
    s1: &Segment,
    s2: &Segment,
    q: &QuadratureConfig,
) -> Result<(f64, f64)> {
    quad::integrate(
        |t| {
            let theta = Angle::new(t);
            let (a_lo, a_hi) = s1.project(theta);
            let (b_lo, b_hi) = s2.project(theta);
            (a_hi.min(b_hi) - a_lo.max(b_lo)).max(0.0)
        },
        0.0,
        PI,
        q,
    )
}

/// Shadow-overlap profile of two segments over the direction circle, for
/// plotting: `(theta, overlap measure)` rows on the composite grid.
pub fn overlap_profile(s1: &Segment, s2: &Segment, panels: usize, order: usize) -> Vec<(f64, f64)> {
    quad::composite_nodes(0.0, PI, panels, order)
        .into_iter()
        .map(|t| {
            let theta = Angle::new(t);
            let (a_lo, a_hi) = s1.project(theta);
            let (b_lo, b_hi) = s2.project(theta);
            (t, (a_hi.min(b_hi) - a_lo.max(b_lo)).max(0.0))
        })
        .collect()
}

/// Sum of pairwise oracles over two segment families: the pair-count
/// measure of two disjoint unions, exact per direction.
pub fn pair_measure_oracle_sets(
    set1: &[Segment],
    set2: &[Segment],
    q: &QuadratureConfig,
) -> Result<f64> {
    let mut parts = Vec::new();
    for a in set1 {
        for b in set2 {
            parts.push(pair_line_measure_oracle(a, b, q)?.0);
        }
    }
    Ok(math::pairwise_sum(&parts))
}

/// A line drawn from the sampling window.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LineSample {
    pub theta: Angle,
    pub t: f64,
}

/// Offset window covering every shadow of both curves over a direction
/// grid, padded to avoid boundary bias.
pub fn sampling_window(g1: &CurveWithTangents, g2: &CurveWithTangents) -> (f64, f64) {
    let mut lo = f64::INFINITY;
    let mut hi = f64::NEG_INFINITY;
    for k in 0..256 {
        let theta = Angle::new((k as f64 + 0.5) * PI / 256.0);
        for s in g1.segments.iter().chain(g2.segments.iter()) {
            let (a, b) = s.project(theta);
            lo = lo.min(a);
            hi = hi.max(b);
        }
    }
    (lo - 0.01, hi + 0.01)
}

fn curve_hit(segments: &[Segment], theta: Angle, t: f64) -> bool {
    segments.iter().any(|s| {
        let (lo, hi) = s.project(theta);
        lo <= t && t <= hi
    })
}

/// Monte Carlo estimate of the measure of lines meeting both curves, with
/// its binomial standard error. Sharded and reproducible for a fixed seed.
pub fn monte_carlo_pair_measure(
    g1: &CurveWithTangents,
    g2: &CurveWithTangents,
    n: u64,
    seed: u64,
) -> (f64, f64) {
    assert!(n >= 1, "sample count must be positive");
    let (t_lo, t_hi) = sampling_window(g1, g2);
    let area = PI * (t_hi - t_lo);
    let mut hit_counts = Vec::with_capacity(mc::SHARDS as usize);
    for shard in 0..mc::SHARDS {
        let mut rng = mc::shard_rng(seed, shard);
        let quota = mc::shard_quota(n, shard);
        let mut hits = 0u64;
        for _ in 0..quota {
            let theta = Angle::new(rng.gen_range(0.0..PI));
            let t = rng.gen_range(t_lo..t_hi);
            if curve_hit(&g1.segments, theta, t) && curve_hit(&g2.segments, theta, t) {
                hits += 1;
            }
        }
        hit_counts.push(hits);
    }
    let hits: u64 = hit_counts.iter().sum();
    let p = hits as f64 / n as f64;
    let stderr = area * math::sqrt(p * (1.0 - p) / n as f64);
    (p * area, stderr)
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn seg(ax: f64, ay: f64, bx: f64, by: f64) -> Segment {
        Segment::new(Point::new(ax, ay), Point::new(bx, by)).unwrap()
    }

    fn curve(s: Segment) -> CurveWithTangents {
        CurveWithTangents::from_segments(vec![s]).unwrap()
    }

    #[test]
    fn connecting_angle_examples() {
        let a = connecting_angle(Point::new(0.0, 0.0), Point::new(1.0, 0.0)).unwrap();
        assert!((a.radians() - PI / 2.0).abs() < 1e-15);
        let b = connecting_angle(Point::new(0.0, 0.0), Point::new(0.0, 1.0)).unwrap();
        assert!(b.radians().abs() < 1e-15);
        let c = connecting_angle(Point::new(0.0, 0.0), Point::new(1.0, 1.0)).unwrap();
        assert!((c.radians() - 3.0 * PI / 4.0).abs() < 1e-15);
        // The defining property: both points project to the same value.
        for (p, q) in [
            (Point::new(0.3, -0.2), Point::new(-0.7, 0.9)),
            (Point::new(0.0, 0.0), Point::new(1.0, 1.0)),
        ] {
            let theta = connecting_angle(p, q).unwrap();
            let e = theta.unit();
            assert!((p.dot(e) - q.dot(e)).abs() < 1e-12);
        }
        assert_eq!(
            connecting_angle(Point::new(0.1, 0.1), Point::new(0.1, 0.1)),
            Err(Error::DegeneratePair)
        );
    }

    #[test]
    fn collinear_disjoint_segments_measure_zero() {
        let g1 = curve(seg(0.0, 0.0, 1.0, 0.0));
        let g2 = curve(seg(2.0, 0.0, 3.0, 0.0));
        let v = pair_line_measure_formula(&g1, &g2, DEFAULT_PAIR_TOL).unwrap();
        assert!(v.abs() < 1e-12, "formula {v}");
        let (o, _) = pair_line_measure_oracle(
            &seg(0.0, 0.0, 1.0, 0.0),
            &seg(2.0, 0.0, 3.0, 0.0),
            &QuadratureConfig::default(),
        )
        .unwrap();
        assert!(o.abs() < 1e-10, "oracle {o}");
        let (est, se) = monte_carlo_pair_measure(&g1, &g2, 20_000, 11);
        assert!(est <= 3.0 * se + 1e-12);
    }

    #[test]
    fn parallel_unit_segments_formula_matches_oracle() {
        let s1 = seg(0.0, 0.0, 1.0, 0.0);
        let s2 = seg(0.0, 1.0, 1.0, 1.0);
        let v = pair_line_measure_formula(&curve(s1), &curve(s2), DEFAULT_PAIR_TOL).unwrap();
        let (o, _) = pair_line_measure_oracle(&s1, &s2, &QuadratureConfig::default()).unwrap();
        assert!(
            (v - o).abs() <= 1e-4 * o.max(1e-12),
            "formula {v} vs oracle {o}"
        );
    }

    #[test]
    fn crossing_arms_with_gap_approach_the_plus_defect() {
        // The horizontal arm against the vertical arm with its middle
        // removed: as the gap vanishes the pair measure tends to the plus
        // sign's shadow defect. Compare at a small positive gap against
        // the defect of the same gapped configuration.
        let g = 0.01;
        let h = seg(-0.5, 0.0, 0.5, 0.0);
        let v_lo = seg(0.0, -0.5, 0.0, -g);
        let v_hi = seg(0.0, g, 0.0, 0.5);
        let g1 = CurveWithTangents::from_segments(vec![h]).unwrap();
        let g2 = CurveWithTangents::from_segments(vec![v_lo, v_hi]).unwrap();
        let v = pair_line_measure_formula(&g1, &g2, DEFAULT_PAIR_TOL).unwrap();
        let set = crate::geom::SegmentSet::new(vec![h, v_lo, v_hi], 2.0).unwrap();
        let (defect, _) =
            crate::favard::favard_defect(&set, &QuadratureConfig::default()).unwrap();
        // The two vertical pieces are collinear, so the whole defect is
        // carried by horizontal-vertical pairs.
        assert!(
            (v - defect).abs() < 2e-4,
            "pair measure {v} vs gapped defect {defect}"
        );
        let plus_defect = 4.0 - 2.0 * core::f64::consts::SQRT_2;
        assert!((v - plus_defect).abs() < 0.05, "far from the gapless limit");
    }

    #[test]
    fn oracle_is_swap_symmetric() {
        let s1 = seg(-0.2, 0.1, 0.6, 0.4);
        let s2 = seg(0.1, -0.7, 0.9, -0.1);
        let q = QuadratureConfig::default();
        let (a, _) = pair_line_measure_oracle(&s1, &s2, &q).unwrap();
        let (b, _) = pair_line_measure_oracle(&s2, &s1, &q).unwrap();
        assert!((a - b).abs() < 1e-12);
    }

    #[test]
    fn oracle_scales_linearly() {
        let s1 = seg(-0.2, 0.1, 0.6, 0.4);
        let s2 = seg(0.1, -0.7, 0.9, -0.1);
        let q = QuadratureConfig::default();
        let lambda = 2.5;
        let scale = |s: &Segment| {
            Segment::new(s.a().scale(lambda), s.b().scale(lambda)).unwrap()
        };
        let (base, _) = pair_line_measure_oracle(&s1, &s2, &q).unwrap();
        let (scaled, _) = pair_line_measure_oracle(&scale(&s1), &scale(&s2), &q).unwrap();
        assert!((scaled - lambda * base).abs() < 1e-6 * scaled.abs().max(1.0));
    }

    #[test]
    fn jacobian_matches_finite_differences() {
        let g1 = curve(seg(-0.4, -0.1, 0.5, 0.3));
        let g2 = curve(seg(0.2, 0.6, -0.3, 0.9));
        let hstep = 1e-6;
        for k in 0..25 {
            let s1 = (k as f64 + 0.5) / 25.0 * g1.total_length();
            let s2 = ((k * 7 % 25) as f64 + 0.5) / 25.0 * g2.total_length();
            let f = |a: f64, b: f64| line_coordinates(&g1, &g2, a, b).unwrap();
            let (tpp, upp) = f(s1 + hstep, s2 + hstep);
            let (tpm, upm) = f(s1 + hstep, s2 - hstep);
            let (tmp, ump) = f(s1 - hstep, s2 + hstep);
            let (tmm, umm) = f(s1 - hstep, s2 - hstep);
            let dth_ds1 = ((tpp + tpm) - (tmp + tmm)) / (4.0 * hstep);
            let dth_ds2 = ((tpp + tmp) - (tpm + tmm)) / (4.0 * hstep);
            let dt_ds1 = ((upp + upm) - (ump + umm)) / (4.0 * hstep);
            let dt_ds2 = ((upp + ump) - (upm + umm)) / (4.0 * hstep);
            let fd = math::abs(dth_ds1 * dt_ds2 - dth_ds2 * dt_ds1);
            let cf = pair_integrand(&g1, &g2, s1, s2).unwrap();
            assert!(
                (fd - cf).abs() <= 1e-5 * cf.max(1e-9),
                "fd {fd} vs closed form {cf} at ({s1}, {s2})"
            );
        }
    }

    #[test]
    fn pair_measure_vanishes_with_a_shrinking_curve() {
        // Fixing one curve and shrinking the other to a point drives the
        // measure to zero linearly (bounded integrand, shrinking domain).
        let s1 = seg(-0.5, 0.0, 0.5, 0.0);
        let q = QuadratureConfig::default();
        let mut last = f64::INFINITY;
        for len in [0.2f64, 0.05, 0.0125] {
            let s2 = seg(1.0, 1.0, 1.0, 1.0 + len);
            let (v, _) = pair_line_measure_oracle(&s1, &s2, &q).unwrap();
            assert!(v < last && v <= 2.0 * len, "measure {v} for length {len}");
            last = v;
        }
    }

    #[test]
    fn formula_rejects_touching_curves() {
        let g1 = curve(seg(0.0, 0.0, 1.0, 0.0));
        let g2 = curve(seg(0.5, 0.0, 0.5, 1.0));
        assert!(matches!(
            pair_line_measure_formula(&g1, &g2, DEFAULT_PAIR_TOL),
            Err(Error::CurvesTooClose { .. })
        ));
    }
}
