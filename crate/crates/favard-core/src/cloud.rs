//! Weighted point clouds sampled from segment sets.
//!
//! Clouds discretize a segment set for the cone-condition scans: points
//! are placed at midpoint-offset arclength positions and each carries the
//! step as its weight, so masses converge linearly in the step. Ordering
//! follows arclength along the input segments and is deterministic.

use alloc::vec::Vec;

use crate::geom::{Angle, Point, SegmentSet};
use crate::math;
use crate::{Error, Result, GEOM_EPS};

/// A finite weighted point set with positive weights.
#[derive(Debug, Clone, PartialEq)]
pub struct WeightedCloud {
    points: Vec<(Point, f64)>,
}

impl WeightedCloud {
    /// Validating constructor: weights positive, points pairwise distinct
    /// within the geometric tolerance.
    pub fn new(points: Vec<(Point, f64)>) -> Result<Self> {
        for &(_, w) in &points {
            if !(w > 0.0) {
                return Err(Error::InvalidGeometry("cloud weight must be positive".into()));
            }
        }
        let mut order: Vec<usize> = (0..points.len()).collect();
        order.sort_by(|&i, &j| {
            points[i]
                .0
                .x
                .partial_cmp(&points[j].0.x)
                .unwrap()
                .then(points[i].0.y.partial_cmp(&points[j].0.y).unwrap())
        });
        for w in order.windows(2) {
            if points[w[0]].0.distance(points[w[1]].0) <= GEOM_EPS {
                return Err(Error::InvalidGeometry("coincident cloud points".into()));
            }
        }
        Ok(WeightedCloud { points })
    }

    pub fn empty() -> Self {
        WeightedCloud { points: Vec::new() }
    }

    /// Samples the set at the given arclength step. Each segment is walked
    /// at midpoint offsets `(i + 1/2) * step` so exact crossing points are
    /// never emitted twice; coincident samples (possible only for
    /// overlapping geometry) are merged by weight.
    pub fn from_arclength_sampling(set: &SegmentSet, step: f64) -> Result<Self> {
        if !(step > 0.0) {
            return Err(Error::InvalidGeometry("sampling step must be positive".into()));
        }
        let mut pts: Vec<(Point, f64)> = Vec::new();
        for seg in set.segments() {
            let len = seg.length();
            let count = (len / step) as usize;
            for i in 0..count {
                let s = (i as f64 + 0.5) * step;
                pts.push((seg.point_at(s / len), step));
            }
            // Keep the tail mass so the cloud mass matches the length.
            let tail = len - count as f64 * step;
            if tail > GEOM_EPS {
                let s = count as f64 * step + 0.5 * tail;
                pts.push((seg.point_at(s / len), tail));
            }
        }
        // Merge duplicates via a sorted scan (rare, but keeps the distinct
        // invariant for adversarial inputs).
        let mut order: Vec<usize> = (0..pts.len()).collect();
        order.sort_by(|&i, &j| {
            pts[i].0.x.partial_cmp(&pts[j].0.x).unwrap().then(pts[i].0.y.partial_cmp(&pts[j].0.y).unwrap())
        });
        let mut drop = alloc::vec![false; pts.len()];
        for w in order.windows(2) {
            let (i, j) = (w[0], w[1]);
            if !drop[i] && pts[i].0.distance(pts[j].0) <= GEOM_EPS {
                let wj = pts[j].1;
                pts[i].1 += wj;
                drop[j] = true;
            }
        }
        let points = pts
            .into_iter()
            .zip(drop)
            .filter_map(|(p, d)| (!d).then_some(p))
            .collect();
        Ok(WeightedCloud { points })
    }

    pub fn points(&self) -> &[(Point, f64)] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn total_mass(&self) -> f64 {
        let ws: Vec<f64> = self.points.iter().map(|&(_, w)| w).collect();
        math::pairwise_sum(&ws)
    }

    /// Splits the cloud by a predicate, preserving order.
    pub fn partition<F: Fn(usize, Point) -> bool>(&self, keep: F) -> (WeightedCloud, WeightedCloud) {
        let mut yes = Vec::new();
        let mut no = Vec::new();
        for (i, &(p, w)) in self.points.iter().enumerate() {
            if keep(i, p) {
                yes.push((p, w));
            } else {
                no.push((p, w));
            }
        }
        (WeightedCloud { points: yes }, WeightedCloud { points: no })
    }
}

/// Coordinates of a point over a base line direction: `t` along the base,
/// `h` along its normal.
pub fn base_coords(p: Point, base: Angle) -> (f64, f64) {
    let u = base.unit();
    (p.dot(u), p.dot(u.perp()))
}
