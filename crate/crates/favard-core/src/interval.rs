//! Canonical disjoint unions of closed intervals, on the real line or on
//! the half-turn direction circle `[0, pi)`.
//!
//! The canonical form is sorted and pairwise disjoint; touching closed
//! intervals are merged. On the direction circle every stored endpoint
//! lies in `[0, pi]` and a set wrapping past `pi` is represented by at
//! most one split pair (a piece ending at `pi` and a piece starting at
//! `0`), which keeps the measure a plain sum of widths.

use alloc::vec::Vec;
use core::f64::consts::PI;

use crate::{Error, Result};

/// Which circle/line the intervals live on.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Domain {
    Line,
    /// Directions modulo a half turn; endpoints confined to `[0, pi]`.
    AngleCircle,
}

/// A canonical disjoint union of closed intervals.
#[derive(Debug, Clone, PartialEq)]
pub struct IntervalUnion {
    intervals: Vec<(f64, f64)>,
    domain: Domain,
}

impl IntervalUnion {
    /// Empty set on the given domain.
    pub fn empty(domain: Domain) -> Self {
        IntervalUnion { intervals: Vec::new(), domain }
    }

    /// Canonicalizes a list of closed line intervals.
    ///
    /// Rejects intervals with `lo > hi` or non-finite endpoints.
    pub fn from_intervals(intervals: &[(f64, f64)]) -> Result<Self> {
        for &(lo, hi) in intervals {
            if !lo.is_finite() || !hi.is_finite() {
                return Err(Error::InvalidGeometry("non-finite interval endpoint".into()));
            }
            if lo > hi {
                return Err(Error::InvalidGeometry("interval with lo > hi".into()));
            }
        }
        let mut u = IntervalUnion { intervals: intervals.to_vec(), domain: Domain::Line };
        u.canonicalize();
        Ok(u)
    }

    /// Builds a direction-circle set from arcs given as (start, width) with
    /// `start` in `[0, pi)` and `0 <= width <= pi`. Arcs running past `pi`
    /// are split.
    pub fn from_arcs(arcs: &[(f64, f64)]) -> Result<Self> {
        let mut parts: Vec<(f64, f64)> = Vec::new();
        for &(start, width) in arcs {
            if !start.is_finite() || !width.is_finite() {
                return Err(Error::InvalidGeometry("non-finite arc".into()));
            }
            if !(0.0..PI).contains(&start) || !(0.0..=PI).contains(&width) {
                return Err(Error::InvalidGeometry("arc outside [0, pi) x [0, pi]".into()));
            }
            let end = start + width;
            if end <= PI {
                parts.push((start, end));
            } else {
                parts.push((start, PI));
                parts.push((0.0, end - PI));
            }
        }
        let mut u = IntervalUnion { intervals: parts, domain: Domain::AngleCircle };
        u.canonicalize();
        Ok(u)
    }

    /// Sorts, merges touching pieces, drops empty work already done.
    /// Idempotent: re-canonicalizing a canonical union is a no-op.
    fn canonicalize(&mut self) {
        self.intervals
            .retain(|&(lo, hi)| hi >= lo);
        self.intervals
            .sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap().then(a.1.partial_cmp(&b.1).unwrap()));
        let mut merged: Vec<(f64, f64)> = Vec::with_capacity(self.intervals.len());
        for &(lo, hi) in &self.intervals {
            match merged.last_mut() {
                Some(last) if lo <= last.1 => {
                    if hi > last.1 {
                        last.1 = hi;
                    }
                }
                _ => merged.push((lo, hi)),
            }
        }
        self.intervals = merged;
    }

    pub fn domain(&self) -> Domain {
        self.domain
    }

    /// The sorted disjoint pieces.
    pub fn components(&self) -> &[(f64, f64)] {
        &self.intervals
    }

    pub fn is_empty(&self) -> bool {
        self.intervals.is_empty()
    }

    /// Total length; additive over the canonical pieces.
    pub fn measure(&self) -> f64 {
        let widths: Vec<f64> = self.intervals.iter().map(|&(lo, hi)| hi - lo).collect();
        crate::math::pairwise_sum(&widths)
    }

    /// Membership test. On the direction circle the query is reduced
    /// modulo pi first.
    pub fn contains(&self, x: f64) -> bool {
        let x = match self.domain {
            Domain::Line => x,
            Domain::AngleCircle => {
                let mut t = x % PI;
                if t < 0.0 {
                    t += PI;
                }
                if t >= PI {
                    t = 0.0;
                }
                t
            }
        };
        self.intervals.iter().any(|&(lo, hi)| lo <= x && x <= hi)
    }

    /// Union with another set on the same domain.
    pub fn union(&self, other: &IntervalUnion) -> IntervalUnion {
        debug_assert_eq!(self.domain, other.domain);
        let mut parts = self.intervals.clone();
        parts.extend_from_slice(&other.intervals);
        let mut u = IntervalUnion { intervals: parts, domain: self.domain };
        u.canonicalize();
        u
    }

    /// Intersection with another set on the same domain.
    pub fn intersect(&self, other: &IntervalUnion) -> IntervalUnion {
        debug_assert_eq!(self.domain, other.domain);
        let mut out: Vec<(f64, f64)> = Vec::new();
        let (mut i, mut j) = (0usize, 0usize);
        while i < self.intervals.len() && j < other.intervals.len() {
            let a = self.intervals[i];
            let b = other.intervals[j];
            let lo = a.0.max(b.0);
            let hi = a.1.min(b.1);
            if lo <= hi {
                out.push((lo, hi));
            }
            if a.1 < b.1 {
                i += 1;
            } else {
                j += 1;
            }
        }
        IntervalUnion { intervals: out, domain: self.domain }
    }

    /// Intersection with a single closed interval.
    pub fn intersect_interval(&self, lo: f64, hi: f64) -> IntervalUnion {
        let clipped = IntervalUnion { intervals: alloc::vec![(lo, hi)], domain: self.domain };
        self.intersect(&clipped)
    }
}
