//! Composite Gauss-Legendre quadrature with panel-doubling refinement.
//!
//! Panel contributions are collected in panel order and reduced by the
//! fixed-order pairwise sum, so a result depends only on the panel count,
//! never on evaluation scheduling.

use alloc::vec::Vec;
use core::f64::consts::PI;

use crate::math;
use crate::{Error, Result};

/// Quadrature settings for integrals over the direction interval.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureConfig {
    /// Nodes per panel.
    pub gl_order: usize,
    /// Panels at the first refinement level.
    pub initial_panels: usize,
    /// Refinement stops when successive estimates differ by less than this.
    pub tol_quad: f64,
    /// Refinement fails after the panel count exceeds this.
    pub max_panels: usize,
}

impl Default for QuadratureConfig {
    fn default() -> Self {
        QuadratureConfig {
            gl_order: 8,
            initial_panels: 64,
            tol_quad: 1e-8,
            max_panels: 1 << 16,
        }
    }
}

impl QuadratureConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.tol_quad > 0.0) {
            return Err(Error::InvalidConfig("tol_quad must be positive".into()));
        }
        if self.gl_order < 2 || self.gl_order > 64 {
            return Err(Error::InvalidConfig("gl_order must be in 2..=64".into()));
        }
        if self.initial_panels == 0 || self.max_panels < self.initial_panels {
            return Err(Error::InvalidConfig("panel counts inconsistent".into()));
        }
        Ok(())
    }

    /// Looser-tolerance copy, for survey-grade integrals.
    pub fn with_tol(mut self, tol: f64) -> Self {
        self.tol_quad = tol;
        self
    }
}

/// Gauss-Legendre nodes and weights on `[-1, 1]`, by Newton iteration on
/// the Legendre recurrence.
pub fn gauss_legendre(order: usize) -> Vec<(f64, f64)> {
    assert!(order >= 2);
    let n = order;
    let mut rule = alloc::vec![(0.0f64, 0.0f64); n];
    for i in 0..(n + 1) / 2 {
        let mut x = math::cos(PI * (i as f64 + 0.75) / (n as f64 + 0.5));
        let mut dp = 0.0;
        for _ in 0..100 {
            let mut p0 = 1.0;
            let mut p1 = x;
            for k in 2..=n {
                let kf = k as f64;
                let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
                p0 = p1;
                p1 = p2;
            }
            dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
            let dx = p1 / dp;
            x -= dx;
            if math::abs(dx) < 1e-15 {
                break;
            }
        }
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        rule[i] = (x, w);
        rule[n - 1 - i] = (-x, w);
    }
    rule.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap());
    rule
}

/// Nodes of the composite rule over `[a, b]` at a given panel count, in
/// ascending order. This is the sampling grid exposed for profiles.
pub fn composite_nodes(a: f64, b: f64, panels: usize, order: usize) -> Vec<f64> {
    let rule = gauss_legendre(order);
    let h = (b - a) / panels as f64;
    let mut nodes = Vec::with_capacity(panels * order);
    for p in 0..panels {
        let mid = a + (p as f64 + 0.5) * h;
        for &(x, _) in &rule {
            nodes.push(mid + 0.5 * h * x);
        }
    }
    nodes
}

fn composite_estimate<F: Fn(f64) -> f64>(
    f: &F,
    a: f64,
    b: f64,
    panels: usize,
    rule: &[(f64, f64)],
) -> f64 {
    let h = (b - a) / panels as f64;
    let mut per_panel = Vec::with_capacity(panels);
    for p in 0..panels {
        let mid = a + (p as f64 + 0.5) * h;
        let mut acc = 0.0;
        for &(x, w) in rule {
            acc += w * f(mid + 0.5 * h * x);
        }
        per_panel.push(acc * 0.5 * h);
    }
    math::pairwise_sum(&per_panel)
}

/// Integrates `f` over `[a, b]`, doubling the panel count until two
/// consecutive refinement steps both move the estimate by less than
/// `tol_quad` (a single small step can be a coincidence when the
/// integrand has kinks). Returns the value and the last step as the
/// error estimate.
pub fn integrate<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, cfg: &QuadratureConfig) -> Result<(f64, f64)> {
    cfg.validate()?;
    let rule = gauss_legendre(cfg.gl_order);
    let mut panels = cfg.initial_panels;
    let mut prev = composite_estimate(&f, a, b, panels, &rule);
    let mut small_steps = 0u32;
    let mut last_diff = f64::NAN;
    loop {
        panels *= 2;
        if panels > cfg.max_panels {
            return Err(Error::QuadratureNotConverged { estimate: prev, error: last_diff });
        }
        let cur = composite_estimate(&f, a, b, panels, &rule);
        let diff = math::abs(cur - prev);
        small_steps = if diff < cfg.tol_quad { small_steps + 1 } else { 0 };
        if small_steps >= 2 {
            return Ok((cur, diff));
        }
        prev = cur;
        last_diff = diff;
    }
}
