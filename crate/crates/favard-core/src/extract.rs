//! Lipschitz-graph extraction from weighted clouds: the pairwise cone
//! exclusion scan, the two-cones removal, the single-graph cover pipeline,
//! the coarea cross-check, and the minimal Lipschitz constant achieving a
//! full cover.
//!
//! A cloud whose distinct points exclude each other's `C_beta` cones is
//! the sample of a `beta`-Lipschitz graph over the line perpendicular to
//! the cone axis; the extension to the whole base line is the min-form
//! McShane formula, which reproduces the anchor heights exactly because
//! surviving pairs satisfy the strict cone inequality.

use alloc::vec::Vec;
use core::f64::consts::PI;

use crate::cloud::{base_coords, WeightedCloud};
use crate::cones::max_conical_density;
use crate::geom::{Angle, SegmentSet};
use crate::math;
use crate::{Error, Result, GEOM_EPS};

/// Result of the pairwise cone scan.
#[derive(Debug, Clone, PartialEq)]
pub struct ConeCheck {
    pub ok: bool,
    /// Unordered violating index pairs `(i, j)` with `i < j`; exhaustive.
    pub violations: Vec<(usize, usize)>,
}

/// Scans all distinct pairs for mutual cone containment: a violation is a
/// pair whose displacement has axial component at least `beta` times the
/// transverse component (closed cones, so boundary pairs violate).
pub fn cone_condition_check(cloud: &WeightedCloud, beta: f64, axis: Angle) -> ConeCheck {
    assert!(beta > 0.0, "beta must be positive");
    let u = axis.unit();
    let coords: Vec<(f64, f64)> = cloud
        .points()
        .iter()
        .map(|&(p, _)| (p.dot(u.perp()), p.dot(u))) // (transverse, axial)
        .collect();
    let n = coords.len();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| coords[a].0.partial_cmp(&coords[b].0).unwrap());
    let h_span = {
        let mut lo = f64::INFINITY;
        let mut hi = f64::NEG_INFINITY;
        for &(_, h) in &coords {
            lo = lo.min(h);
            hi = hi.max(h);
        }
        (hi - lo).max(0.0)
    };
    let reach = h_span / beta;
    let mut violations = Vec::new();
    for a in 0..n {
        let i = order[a];
        for &j in order[a + 1..].iter() {
            let dt = coords[j].0 - coords[i].0;
            if dt > reach {
                break;
            }
            let dh = coords[j].1 - coords[i].1;
            if math::abs(dh) >= beta * math::abs(dt) {
                let pair = if i < j { (i, j) } else { (j, i) };
                violations.push(pair);
            }
        }
    }
    violations.sort_unstable();
    ConeCheck { ok: violations.is_empty(), violations }
}

/// The min-form extension of anchor heights to the whole base line at a
/// fixed Lipschitz constant.
#[derive(Debug, Clone, PartialEq)]
pub struct McShaneExtension {
    constant: f64,
    /// `(base coordinate, height)` anchors, in cloud order.
    anchors: Vec<(f64, f64)>,
}

impl McShaneExtension {
    pub fn constant(&self) -> f64 {
        self.constant
    }

    pub fn anchors(&self) -> &[(f64, f64)] {
        &self.anchors
    }

    /// `min_i (h_i + c |t - t_i|)`; anchors must be non-empty.
    pub fn value(&self, t: f64) -> f64 {
        assert!(!self.anchors.is_empty(), "extension needs at least one anchor");
        self.anchors
            .iter()
            .map(|&(ti, hi)| hi + self.constant * math::abs(t - ti))
            .fold(f64::INFINITY, f64::min)
    }

    /// Sampled values on a uniform grid spanning the anchors (plus one
    /// step of padding each side).
    pub fn sampled(&self, count: usize) -> Vec<(f64, f64)> {
        if self.anchors.is_empty() || count == 0 {
            return Vec::new();
        }
        let lo = self.anchors.iter().map(|a| a.0).fold(f64::INFINITY, f64::min);
        let hi = self.anchors.iter().map(|a| a.0).fold(f64::NEG_INFINITY, f64::max);
        let pad = ((hi - lo) / count as f64).max(1e-3);
        (0..=count)
            .map(|k| {
                let t = lo - pad + (hi - lo + 2.0 * pad) * k as f64 / count as f64;
                (t, self.value(t))
            })
            .collect()
    }
}

/// A graph extracted from a cloud: surviving points, removed points, the
/// achieved Lipschitz constant over the base line, and the extension.
#[derive(Debug, Clone, PartialEq)]
pub struct GraphCover {
    pub graph_points: WeightedCloud,
    pub removed: WeightedCloud,
    pub lipschitz_constant: f64,
    pub base_line_angle: Angle,
    pub extension: McShaneExtension,
    /// Cone half-slope used for the removal scan (`lipschitz_constant / 2`).
    pub beta: f64,
    /// Density threshold that pre-filtered the cloud, when one applied.
    pub eps: f64,
}

impl GraphCover {
    pub fn removed_mass(&self) -> f64 {
        self.removed.total_mass()
    }

    pub fn covered_mass(&self) -> f64 {
        self.graph_points.total_mass()
    }

    /// Re-runs the cone scan on the surviving points.
    pub fn verify_cone_condition(&self) -> ConeCheck {
        cone_condition_check(
            &self.graph_points,
            2.0 * self.beta,
            self.base_line_angle.rotated(PI / 2.0),
        )
    }
}

fn build_extension(graph: &WeightedCloud, base: Angle, constant: f64) -> McShaneExtension {
    let anchors = graph
        .points()
        .iter()
        .map(|&(p, _)| base_coords(p, base))
        .collect();
    McShaneExtension { constant, anchors }
}

/// Removes every point that sees another cloud point inside its `C_{2beta}`
/// cone; the survivors pass the cone scan at `2 beta` by construction and
/// extend to a `2 beta`-Lipschitz graph over the base line.
///
/// Callers are expected to have pre-filtered high-density points (the
/// `eps` argument is recorded in the cover for audit, not re-checked).
pub fn two_cones_extract(
    cloud: &WeightedCloud,
    beta: f64,
    eps: f64,
    axis: Angle,
) -> Result<GraphCover> {
    assert!(beta > 0.0, "beta must be positive");
    let check = cone_condition_check(cloud, 2.0 * beta, axis);
    let mut bad = alloc::vec![false; cloud.len()];
    for &(i, j) in &check.violations {
        bad[i] = true;
        bad[j] = true;
    }
    let (graph, removed) = cloud.partition(|i, _| !bad[i]);
    if graph.is_empty() && !cloud.is_empty() {
        return Err(Error::EmptyResult);
    }
    let base = axis.rotated(-PI / 2.0);
    debug_assert!(cone_condition_check(&graph, 2.0 * beta, axis).ok);
    Ok(GraphCover {
        extension: build_extension(&graph, base, 2.0 * beta),
        graph_points: graph,
        removed,
        lipschitz_constant: 2.0 * beta,
        base_line_angle: base,
        beta,
        eps,
    })
}

/// Knobs for the single-graph cover pipeline.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CoverConfig {
    /// Multiplier from the piece slope to the cover's Lipschitz constant.
    pub c_lip: f64,
    /// Divisor in the density threshold `alpha * eps / c_pipeline`.
    pub c_pipeline: f64,
    /// Arclength sampling step for the cloud.
    pub sample_step: f64,
}

/// Densities below this are boundary rounding of the cone clip, not mass;
/// the cover's density threshold is clamped to it.
pub const DENSITY_NOISE_FLOOR: f64 = 1e-9;

/// Covers a union of `alpha`-Lipschitz pieces over `base` by one Lipschitz
/// graph of constant `c_lip * alpha`: samples the set, drops points of
/// maximal conical density at least `alpha * eps / c_pipeline` (cone
/// half-slope `c_lip * alpha / 2`, threshold clamped to the measurement
/// noise floor), then removes mutual cone violators.
pub fn cover_by_single_graph(
    set: &SegmentSet,
    alpha: f64,
    eps: f64,
    base: Angle,
    cfg: &CoverConfig,
) -> Result<GraphCover> {
    if !(alpha > 0.0) {
        return Err(Error::InvalidConfig("cover alpha must be positive".into()));
    }
    let slope_bound = math::atan(alpha) + GEOM_EPS;
    for (i, s) in set.segments().iter().enumerate() {
        let dev = s.direction_angle().distance(base);
        if dev > slope_bound {
            return Err(Error::AssumptionViolated(alloc::format!(
                "segment {i} makes angle {dev} with the base line, above atan(alpha) = {}",
                math::atan(alpha)
            )));
        }
    }
    let beta = 0.5 * cfg.c_lip * alpha;
    if !(beta > 0.0 && beta <= 1.0) {
        return Err(Error::InvalidConfig(alloc::format!(
            "cover cone half-slope c_lip*alpha/2 = {beta} outside (0, 1]"
        )));
    }
    let axis = base.rotated(PI / 2.0);
    let eps1 = (alpha * eps / cfg.c_pipeline).max(DENSITY_NOISE_FLOOR);
    if set.is_empty() {
        return Ok(GraphCover {
            graph_points: WeightedCloud::empty(),
            removed: WeightedCloud::empty(),
            lipschitz_constant: cfg.c_lip * alpha,
            base_line_angle: base,
            extension: McShaneExtension { constant: cfg.c_lip * alpha, anchors: Vec::new() },
            beta,
            eps: eps1,
        })
    }
    let cloud = WeightedCloud::from_arclength_sampling(set, cfg.sample_step)?;
    let dense: Vec<bool> = cloud
        .points()
        .iter()
        .map(|&(p, _)| max_conical_density(set, p, beta, axis) >= eps1)
        .collect();
    let (low, high) = cloud.partition(|i, _| !dense[i]);
    let mut cover = two_cones_extract(&low, beta, eps1, axis)?;
    // Fold the density-removed points into the removed set, keeping the
    // cover's own removals too.
    let mut removed_all = high.points().to_vec();
    removed_all.extend_from_slice(cover.removed.points());
    cover.removed = WeightedCloud::new(removed_all)?;
    Ok(cover)
}

/// Both sides of the coarea comparison for a covered subset: its length
/// against `sqrt(1 + alpha^2)` times the multiplicity integral of its
/// shadow on the cover's base line. The left side never exceeds the right.
pub fn coarea_check(cover: &GraphCover, covered: &SegmentSet, alpha: f64) -> (f64, f64) {
    let lhs = covered.h1_length();
    let widths: Vec<f64> = covered
        .segments()
        .iter()
        .map(|s| {
            let (lo, hi) = s.project(cover.base_line_angle);
            hi - lo
        })
        .collect();
    let rhs = math::sqrt(1.0 + alpha * alpha) * math::pairwise_sum(&widths);
    (lhs, rhs)
}

/// The smallest Lipschitz constant for which the whole sampled cloud fits
/// one graph, together with the base direction used: the mass-weighted
/// mean direction of the set (doubled-angle circular mean). Pairs aligned
/// with the normal make a full cover impossible and yield infinity.
pub fn min_cover_constant(set: &SegmentSet, step: f64) -> (f64, Angle) {
    let mut sx = 0.0;
    let mut sy = 0.0;
    for s in set.segments() {
        let phi = s.direction_angle().radians();
        sx += s.length() * math::cos(2.0 * phi);
        sy += s.length() * math::sin(2.0 * phi);
    }
    let base = Angle::new(0.5 * math::atan2(sy, sx));
    let cloud = match WeightedCloud::from_arclength_sampling(set, step) {
        Ok(c) => c,
        Err(_) => return (f64::INFINITY, base),
    };
    let coords: Vec<(f64, f64)> = cloud
        .points()
        .iter()
        .map(|&(p, _)| base_coords(p, base))
        .collect();
    let mut worst: f64 = 0.0;
    for i in 0..coords.len() {
        for j in (i + 1)..coords.len() {
            let dt = math::abs(coords[j].0 - coords[i].0);
            let dh = math::abs(coords[j].1 - coords[i].1);
            if dt <= GEOM_EPS {
                if dh > GEOM_EPS {
                    return (f64::INFINITY, base);
                }
            } else {
                worst = worst.max(dh / dt);
            }
        }
    }
    (worst, base)
}
