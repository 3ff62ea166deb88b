//! Two-sided cones, conical masses, the maximal conical density, direction
//! sets of double hits, and the constructive two-branch alternative: at
//! any point either a substantial set of directions hits the set twice, or
//! a family of parallel-free heavy tubes carries a quantified share of the
//! local mass.
//!
//! Cone/ball clipping is exact (segments clip to parameter intervals), so
//! every mass here is closed-form; the only searches are the supremum over
//! radii (critical radii plus golden-section refinement) and the dyadic
//! walk over direction intervals.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec::Vec;
use core::f64::consts::PI;

use crate::geom::{Angle, Point, Segment, SegmentSet, Tube};
use crate::geom::{subtended_directions, AffineLine};
use crate::interval::IntervalUnion;
use crate::math;
use crate::{Error, Result, GEOM_EPS};

/// The closed two-sided cone with apex `apex`: points whose displacement
/// has axial component at least `beta` times the orthogonal component.
/// Narrow cones have large `beta`; the documented range is `(0, 1]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Cone {
    pub apex: Point,
    pub beta: f64,
    pub axis: Angle,
}

impl Cone {
    pub fn new(apex: Point, beta: f64, axis: Angle) -> Result<Self> {
        if !(beta > 0.0 && beta <= 1.0) {
            return Err(Error::InvalidConfig("cone beta must lie in (0, 1]".into()));
        }
        Ok(Cone { apex, beta, axis })
    }

    /// Membership: `|axial| >= beta * |orthogonal|` for the displacement
    /// from the apex.
    pub fn contains(&self, p: Point) -> bool {
        let d = p - self.apex;
        let u = self.axis.unit();
        math::abs(d.dot(u)) >= self.beta * math::abs(d.dot(u.perp()))
    }
}

/// Exact clip of a segment set to the two-sided cone at `apex` (any
/// `beta > 0`, narrow cones included), optionally intersected with the
/// closed ball of radius `r`.
pub fn clip_cone_ball(
    set: &SegmentSet,
    apex: Point,
    beta: f64,
    axis: Angle,
    r: Option<f64>,
) -> Vec<Segment> {
    let mut out = Vec::new();
    for s in set.segments() {
        for (lo, hi) in s.t_ranges_cone(apex, beta, axis, r) {
            // Pieces below the geometric tolerance are boundary rounding,
            // not mass; keeping them puts a noise floor under densities.
            if (hi - lo) * s.length() <= GEOM_EPS {
                continue;
            }
            if let Some(piece) = s.sub_segment(lo, hi) {
                out.push(piece);
            }
        }
    }
    out
}

/// Length of the set inside the cone-and-ball region. Exact.
///
/// Contract: `beta` in `(0, 1]`, `r > 0`.
pub fn conical_mass(set: &SegmentSet, x: Point, beta: f64, r: f64, axis: Angle) -> f64 {
    assert!(beta > 0.0 && beta <= 1.0, "beta out of (0, 1]");
    assert!(r > 0.0, "radius must be positive");
    let lens: Vec<f64> = clip_cone_ball(set, x, beta, axis, Some(r))
        .iter()
        .map(Segment::length)
        .collect();
    math::pairwise_sum(&lens)
}

/// Total length of the set inside a tube. Exact.
pub fn tube_mass(set: &SegmentSet, tube: &Tube) -> f64 {
    let lens: Vec<f64> = set
        .segments()
        .iter()
        .filter_map(|s| s.t_range_tube(tube).map(|(lo, hi)| (hi - lo) * s.length()))
        .collect();
    math::pairwise_sum(&lens)
}

fn golden_max<F: Fn(f64) -> f64>(f: &F, mut lo: f64, mut hi: f64, iters: usize) -> (f64, f64) {
    const INV_PHI: f64 = 0.618_033_988_749_894_9;
    let mut x1 = hi - INV_PHI * (hi - lo);
    let mut x2 = lo + INV_PHI * (hi - lo);
    let mut f1 = f(x1);
    let mut f2 = f(x2);
    for _ in 0..iters {
        if f1 < f2 {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + INV_PHI * (hi - lo);
            f2 = f(x2);
        } else {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - INV_PHI * (hi - lo);
            f1 = f(x1);
        }
    }
    if f1 >= f2 {
        (x1, f1)
    } else {
        (x2, f2)
    }
}

/// Maximal conical density: the supremum over radii of (mass in the
/// cone-ball) / radius, together with a radius achieving it.
///
/// The mass is piecewise smooth in `r` with breakpoints exactly where the
/// ball boundary crosses an endpoint or the closest point of a clipped
/// piece, so the supremum is located by evaluating the breakpoints and
/// refining inside each bracket.
pub fn max_conical_density_with_radius(
    set: &SegmentSet,
    x: Point,
    beta: f64,
    axis: Angle,
) -> (f64, f64) {
    assert!(beta > 0.0 && beta <= 1.0, "beta out of (0, 1]");
    let pieces = clip_cone_ball(set, x, beta, axis, None);
    if pieces.is_empty() {
        return (0.0, 1.0);
    }
    let mut radii: Vec<f64> = Vec::new();
    for p in &pieces {
        radii.push(p.a().distance(x));
        radii.push(p.b().distance(x));
        let d = p.b() - p.a();
        let t = (x - p.a()).dot(d) / d.dot(d);
        if t > 0.0 && t < 1.0 {
            radii.push(p.point_at(t).distance(x));
        }
    }
    radii.retain(|&r| r > GEOM_EPS);
    radii.sort_by(|a, b| a.partial_cmp(b).unwrap());
    radii.dedup_by(|a, b| (*a - *b).abs() < 1e-15);
    if radii.is_empty() {
        return (0.0, 1.0);
    }

    // Pieces already lie in the cone; only the ball clip varies with r.
    let mass = |r: f64| -> f64 {
        let lens: Vec<f64> = pieces
            .iter()
            .flat_map(|p| {
                p.t_ranges_cone(x, beta, axis, Some(r))
                    .into_iter()
                    .map(|(lo, hi)| (hi - lo) * p.length())
            })
            .collect();
        math::pairwise_sum(&lens)
    };
    let ratio = |r: f64| mass(r) / r;

    let mut best = (0.0f64, radii[0]);
    let consider = |r: f64, v: f64, best: &mut (f64, f64)| {
        if v > best.0 {
            *best = (v, r);
        }
    };
    for &r in &radii {
        consider(r, ratio(r), &mut best);
    }
    // Interior maxima inside each breakpoint-free bracket.
    let mut brackets: Vec<(f64, f64)> = Vec::new();
    let mut prev = radii[0];
    for &r in &radii[1..] {
        brackets.push((prev, r));
        prev = r;
    }
    for (lo, hi) in brackets {
        if hi - lo < 1e-14 {
            continue;
        }
        // Coarse scan guards against multimodal ratios within a bracket.
        let mut grid_best = (lo, ratio(lo));
        for k in 1..=8 {
            let r = lo + (hi - lo) * k as f64 / 9.0;
            let v = ratio(r);
            if v > grid_best.1 {
                grid_best = (r, v);
            }
        }
        let span = (hi - lo) / 9.0;
        let g_lo = (grid_best.0 - span).max(lo);
        let g_hi = (grid_best.0 + span).min(hi);
        let (r, v) = golden_max(&ratio, g_lo, g_hi, 60);
        consider(r, v, &mut best);
    }
    best
}

/// Maximal conical density alone.
pub fn max_conical_density(set: &SegmentSet, x: Point, beta: f64, axis: Angle) -> f64 {
    max_conical_density_with_radius(set, x, beta, axis).0
}

/// Directions whose line through `x` meets the set; the union of the
/// per-segment subtended direction sets.
pub fn double_direction_set(x: Point, set: &SegmentSet) -> IntervalUnion {
    let mut acc = IntervalUnion::empty(crate::interval::Domain::AngleCircle);
    for s in set.segments() {
        acc = acc.union(&subtended_directions(x, s));
    }
    acc
}

/// The direction window of a cone: parameters `theta` whose line lies
/// inside `C_beta` around `axis`. An arc of halfwidth `pi/2 - atan(beta)`
/// centered a quarter turn off the axis.
#[derive(Debug, Clone)]
pub struct DirectionWindow {
    pub set: IntervalUnion,
    /// Raw (unnormalized) start of the arc; local coordinates on the
    /// window are `u = theta - start` modulo pi.
    pub start: f64,
    pub width: f64,
}

pub fn direction_window(beta: f64, axis: Angle) -> DirectionWindow {
    let halfwidth = PI / 2.0 - math::atan(beta);
    let center = axis.radians() - PI / 2.0;
    let start = center - halfwidth;
    let set = IntervalUnion::from_arcs(&[(Angle::new(start).radians(), 2.0 * halfwidth)])
        .expect("valid window arc");
    DirectionWindow { set, start, width: 2.0 * halfwidth }
}

fn to_local(theta: f64, start: f64) -> f64 {
    let mut u = (theta - start) % PI;
    if u < 0.0 {
        u += PI;
    }
    u
}

/// A tube produced by the constructive branch, with its measured mass and
/// the lower bound it is certified to carry.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TubeCertificate {
    pub theta: Angle,
    pub tube: Tube,
    /// Exact length of the set inside the full tube.
    pub mass: f64,
    /// Certified lower bound for that mass.
    pub required_mass: f64,
}

/// Outcome of the two-branch alternative at a point.
#[derive(Debug, Clone)]
pub enum AlternativeOutcome {
    /// A direction set of measure at least `1/H` inside the cone window,
    /// every direction of which hits the set twice.
    DoubleHits { directions: IntervalUnion },
    /// A family of tubes through the point, each certified to carry mass
    /// proportional to (density x H x tube width).
    HeavyTubes {
        directions: IntervalUnion,
        tubes: Vec<TubeCertificate>,
        /// Radius at which the density supremum was attained.
        radius: f64,
        /// The achieved density `mass(radius) / radius`.
        density: f64,
    },
}

const MAX_DYADIC_DEPTH: u32 = 40;

/// The two-branch alternative at `x` with trade-off parameter `h >= 1`.
///
/// First the double-hit direction set inside the cone window is assembled
/// exactly from per-segment subtended intervals (segments through `x`
/// contribute only their own direction, a null set, and are excluded by
/// convention). If its measure reaches `1/h` the first branch is
/// returned. Otherwise the mass near `x` is localized in direction: the
/// hitting directions of the cone-ball clipped set are covered by dyadic
/// intervals of the window, intervals are kept when they carry at least a
/// quarter of their densimetric share, walked up to parents until the
/// matching upper bound holds, and each surviving interval yields a tube
/// certificate.
pub fn besicovitch_alternative(
    set: &SegmentSet,
    x: Point,
    beta: f64,
    h: f64,
    axis: Angle,
) -> Result<AlternativeOutcome> {
    if !(h >= 1.0) {
        return Err(Error::InvalidConfig("alternative trade-off h must be >= 1".into()));
    }
    if !(beta > 0.0 && beta <= 1.0) {
        return Err(Error::InvalidConfig("cone beta must lie in (0, 1]".into()));
    }
    if set.distance_to_point(x) > GEOM_EPS {
        return Err(Error::AssumptionViolated("alternative point must lie on the set".into()));
    }
    let (theta_star, r_star) = max_conical_density_with_radius(set, x, beta, axis);
    if theta_star <= 0.0 {
        return Err(Error::DegenerateInput("zero maximal conical density".into()));
    }

    let window = direction_window(beta, axis);

    // First branch: exact double-hit directions from segments not through x.
    let mut hit_dirs = IntervalUnion::empty(crate::interval::Domain::AngleCircle);
    for s in set.segments() {
        if s.distance_to_point(x) <= GEOM_EPS {
            continue;
        }
        hit_dirs = hit_dirs.union(&subtended_directions(x, s));
    }
    let double_hits = hit_dirs.intersect(&window.set);
    if double_hits.measure() >= 1.0 / h {
        return Ok(AlternativeOutcome::DoubleHits { directions: double_hits });
    }

    // Constructive branch at the achieving radius.
    let pieces = clip_cone_ball(set, x, beta, axis, Some(r_star));
    let density = {
        let lens: Vec<f64> = pieces.iter().map(Segment::length).collect();
        math::pairwise_sum(&lens) / r_star
    };
    let mut arcs = IntervalUnion::empty(crate::interval::Domain::AngleCircle);
    for p in &pieces {
        let part = if p.distance_to_point(x) <= GEOM_EPS {
            // A piece through the apex is hit only along its own direction.
            let dir = p.direction_angle().rotated(PI / 2.0);
            IntervalUnion::from_arcs(&[(dir.radians(), 0.0)]).expect("degenerate arc")
        } else {
            subtended_directions(x, p)
        };
        arcs = arcs.union(&part);
    }
    let arcs = arcs.intersect(&window.set);

    // Local coordinates on the window; split pieces rejoin here.
    let local_parts: Vec<(f64, f64)> = arcs
        .components()
        .iter()
        .map(|&(a, b)| {
            let ua = to_local(a, window.start).min(window.width);
            (ua, (ua + (b - a)).min(window.width))
        })
        .collect();
    let local = IntervalUnion::from_intervals(&local_parts)?;

    // Dyadic cover of the hitting directions.
    let span = window.width;
    let mut candidates: BTreeSet<(u32, u64)> = BTreeSet::new();
    for &(a, b) in local.components() {
        let width = b - a;
        let depth = if width * (1u64 << MAX_DYADIC_DEPTH) as f64 <= span {
            MAX_DYADIC_DEPTH
        } else {
            (math::floor(math::log2(span / width)) as u32).min(MAX_DYADIC_DEPTH)
        };
        let len = span / (1u64 << depth) as f64;
        let max_index = (1u64 << depth) - 1;
        let i_lo = (math::floor(a / len) as u64).min(max_index);
        let i_hi = (math::floor(b / len) as u64).min(max_index);
        for i in i_lo..=i_hi {
            candidates.insert((depth, i));
        }
    }

    let mut mass_memo: BTreeMap<(u32, u64), f64> = BTreeMap::new();
    let mut cone_mass = |depth: u32, index: u64| -> f64 {
        if let Some(&m) = mass_memo.get(&(depth, index)) {
            return m;
        }
        let len = span / (1u64 << depth) as f64;
        let theta_c = window.start + (index as f64 + 0.5) * len;
        let line_dir = Angle::new(theta_c + PI / 2.0);
        let half_opening = 0.5 * len;
        let beta_narrow = 1.0 / math::tan(half_opening);
        let lens: Vec<f64> = clip_cone_ball(set, x, beta_narrow, line_dir, Some(r_star))
            .iter()
            .map(Segment::length)
            .collect();
        let m = math::pairwise_sum(&lens);
        mass_memo.insert((depth, index), m);
        m
    };

    // Keep heavy intervals and walk each up until the upper bound holds.
    let mut finals: BTreeSet<(u32, u64)> = BTreeSet::new();
    for &(depth, index) in &candidates {
        let len = span / (1u64 << depth) as f64;
        if cone_mass(depth, index) < 0.25 * density * h * len * r_star {
            continue;
        }
        let (mut d, mut i) = (depth, index);
        loop {
            let l = span / (1u64 << d) as f64;
            if d == 0 || cone_mass(d, i) <= density * h * l * r_star {
                break;
            }
            d -= 1;
            i /= 2;
        }
        finals.insert((d, i));
    }
    // Keep only maximal intervals (drop descendants of kept intervals).
    let kept: Vec<(u32, u64)> = finals
        .iter()
        .copied()
        .filter(|&(d, i)| {
            !(0..d).any(|dd| finals.contains(&(dd, i >> (d - dd))))
        })
        .collect();

    let mut tubes = Vec::new();
    let mut dir_arcs = Vec::new();
    for (d, i) in kept {
        let len = span / (1u64 << d) as f64;
        let theta_c = Angle::new(window.start + (i as f64 + 0.5) * len);
        let tube = Tube::new(AffineLine::through_point(x, theta_c), 2.0 * len * r_star)?;
        tubes.push(TubeCertificate {
            theta: theta_c,
            tube,
            mass: tube_mass(set, &tube),
            required_mass: 0.25 * density * h * len * r_star,
        });
        dir_arcs.push((Angle::new(window.start + i as f64 * len).radians(), len));
    }
    let directions = IntervalUnion::from_arcs(&dir_arcs)?;
    Ok(AlternativeOutcome::HeavyTubes { directions, tubes, radius: r_star, density })
}

/// The nominal trade-off parameter for the alternative: the reciprocal of
/// (piece slope tolerance x density threshold), floored at one. The
/// proportionality constant is one; callers scale it as needed.
pub fn default_trade_off(alpha: f64, eps: f64) -> f64 {
    assert!(alpha > 0.0 && eps > 0.0);
    (1.0 / (alpha * eps)).max(1.0)
}

/// One arclength sample with its maximal conical density.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DensitySample {
    pub arclength: f64,
    pub point: Point,
    pub weight: f64,
    pub density: f64,
}

/// Density profile along the set: samples every `step` of arclength,
/// ordered by arclength.
pub fn density_profile(set: &SegmentSet, beta: f64, step: f64, axis: Angle) -> Vec<DensitySample> {
    assert!(step > 0.0, "arclength step must be positive");
    let mut out = Vec::new();
    let mut offset = 0.0;
    for seg in set.segments() {
        let len = seg.length();
        let count = (len / step) as usize;
        for i in 0..count {
            let s = (i as f64 + 0.5) * step;
            let p = seg.point_at(s / len);
            out.push(DensitySample {
                arclength: offset + s,
                point: p,
                weight: step,
                density: max_conical_density(set, p, beta, axis),
            });
        }
        offset += len;
    }
    out
}

/// Samples whose maximal conical density reaches `eps`, with their total
/// sampled mass.
pub fn high_density_points(
    set: &SegmentSet,
    beta: f64,
    eps: f64,
    step: f64,
    axis: Angle,
) -> (Vec<DensitySample>, f64) {
    assert!(eps > 0.0, "density threshold must be positive");
    let heavy: Vec<DensitySample> = density_profile(set, beta, step, axis)
        .into_iter()
        .filter(|s| s.density >= eps)
        .collect();
    let mass = math::pairwise_sum(&heavy.iter().map(|s| s.weight).collect::<Vec<_>>());
    (heavy, mass)
}
