//! Scene and config file schemas (versioned JSON).
//!
//! A scene carries either explicit geometry (segments and/or polylines)
//! or a generator spec, plus optional config overrides. Unknown fields
//! are rejected with the parser's line/column diagnostics.

use anyhow::{bail, Context};
use serde::{Deserialize, Serialize};

use favard_core::geom::{Point, Polyline, SegmentSet};
use favard_core::grid::{generate_grid_set, GridScene};
use favard_core::{AnalysisConfig, QuadratureConfig, GEOM_EPS};

pub const SCHEMA_VERSION: &str = "1";

/// On-disk scene description.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Scene {
    pub schema_version: String,
    /// Segments as endpoint pairs `[[ax, ay], [bx, by]]`.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub segments: Vec<[[f64; 2]; 2]>,
    /// Polylines as vertex lists.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub polylines: Vec<Vec<[f64; 2]>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub bounding_radius: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub generator: Option<GeneratorSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub config: Option<ConfigOverrides>,
}

/// Procedural scene generators.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case", deny_unknown_fields)]
pub enum GeneratorSpec {
    /// The grid-of-circles family.
    Grid {
        n: usize,
        #[serde(default = "default_poly_sides")]
        poly_sides: usize,
    },
}

fn default_poly_sides() -> usize {
    64
}

/// Partial config: every field optional, overlaid on the desk profile.
#[derive(Debug, Clone, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConfigOverrides {
    pub alpha: Option<f64>,
    pub kappa: Option<f64>,
    pub alpha0: Option<f64>,
    pub c_lip: Option<f64>,
    pub c_sep: Option<f64>,
    pub c_alp: Option<f64>,
    pub c_thm: Option<f64>,
    pub c_pipeline: Option<f64>,
    pub witness_c: Option<f64>,
    pub ball_mass_multiplier: Option<f64>,
    pub eps_target: Option<f64>,
    pub sample_step: Option<f64>,
    pub tol_density: Option<f64>,
    pub tol_pair: Option<f64>,
    pub alpha_from_eps: Option<bool>,
    pub gl_order: Option<usize>,
    pub initial_panels: Option<usize>,
    pub tol_quad: Option<f64>,
    pub max_panels: Option<usize>,
    pub seed: Option<u64>,
}

impl ConfigOverrides {
    /// Applies the overrides on top of a base config.
    pub fn apply(&self, base: &AnalysisConfig) -> AnalysisConfig {
        let quad = QuadratureConfig {
            gl_order: self.gl_order.unwrap_or(base.quad.gl_order),
            initial_panels: self.initial_panels.unwrap_or(base.quad.initial_panels),
            tol_quad: self.tol_quad.unwrap_or(base.quad.tol_quad),
            max_panels: self.max_panels.unwrap_or(base.quad.max_panels),
        };
        AnalysisConfig {
            alpha: self.alpha.unwrap_or(base.alpha),
            kappa: self.kappa.unwrap_or(base.kappa),
            alpha0: self.alpha0.unwrap_or(base.alpha0),
            c_lip: self.c_lip.unwrap_or(base.c_lip),
            c_sep: self.c_sep.unwrap_or(base.c_sep),
            c_alp: self.c_alp.unwrap_or(base.c_alp),
            c_thm: self.c_thm.unwrap_or(base.c_thm),
            c_pipeline: self.c_pipeline.unwrap_or(base.c_pipeline),
            witness_c: self.witness_c.unwrap_or(base.witness_c),
            ball_mass_multiplier: self
                .ball_mass_multiplier
                .unwrap_or(base.ball_mass_multiplier),
            eps_target: self.eps_target.unwrap_or(base.eps_target),
            sample_step: self.sample_step.or(base.sample_step),
            tol_density: self.tol_density.unwrap_or(base.tol_density),
            tol_pair: self.tol_pair.unwrap_or(base.tol_pair),
            alpha_from_eps: self.alpha_from_eps.unwrap_or(base.alpha_from_eps),
            quad,
            seed: self.seed.unwrap_or(base.seed),
        }
    }
}

/// Scene geometry resolved into core types.
#[derive(Debug)]
pub struct ResolvedScene {
    pub curves: Vec<Polyline>,
    pub set: SegmentSet,
    pub grid: Option<GridScene>,
}

/// Parses a scene document, rejecting unknown fields and unsupported
/// versions with position diagnostics where available.
pub fn parse_scene(text: &str) -> anyhow::Result<Scene> {
    let scene: Scene = serde_json::from_str(text).context("scene parse error")?;
    if scene.schema_version != SCHEMA_VERSION {
        bail!(
            "unsupported scene schema_version {:?} (expected {:?})",
            scene.schema_version,
            SCHEMA_VERSION
        );
    }
    Ok(scene)
}

impl Scene {
    /// Builds the core geometry. A scene is either procedural or explicit,
    /// not both.
    pub fn resolve(&self) -> anyhow::Result<ResolvedScene> {
        let has_explicit = !self.segments.is_empty() || !self.polylines.is_empty();
        match (&self.generator, has_explicit) {
            (Some(_), true) => {
                bail!("scene mixes a generator with explicit geometry; use one or the other")
            }
            (Some(GeneratorSpec::Grid { n, poly_sides }), false) => {
                let grid = generate_grid_set(*n, *poly_sides)
                    .map_err(|e| anyhow::anyhow!("grid generator: {e}"))?;
                let mut curves = Vec::with_capacity(grid.centers.len());
                let sides = grid.poly_sides;
                for chunk in grid.set.segments().chunks(sides) {
                    let mut pts: Vec<Point> = chunk.iter().map(|s| s.a()).collect();
                    pts.push(chunk[sides - 1].b());
                    curves.push(
                        Polyline::new(pts).map_err(|e| anyhow::anyhow!("grid polyline: {e}"))?,
                    );
                }
                Ok(ResolvedScene { set: grid.set.clone(), curves, grid: Some(grid) })
            }
            (None, _) => {
                let mut curves = Vec::new();
                for (i, seg) in self.segments.iter().enumerate() {
                    let pts = vec![
                        Point::new(seg[0][0], seg[0][1]),
                        Point::new(seg[1][0], seg[1][1]),
                    ];
                    curves.push(
                        Polyline::new(pts)
                            .map_err(|e| anyhow::anyhow!("segment {i} invalid: {e}"))?,
                    );
                }
                for (i, poly) in self.polylines.iter().enumerate() {
                    let pts = poly.iter().map(|&[x, y]| Point::new(x, y)).collect();
                    curves.push(
                        Polyline::new(pts)
                            .map_err(|e| anyhow::anyhow!("polyline {i} invalid: {e}"))?,
                    );
                }
                let radius = self.bounding_radius.unwrap_or_else(|| {
                    curves
                        .iter()
                        .flat_map(|c| c.vertices().iter())
                        .map(|p| p.norm())
                        .fold(1.0f64, f64::max)
                        + GEOM_EPS
                });
                let set = SegmentSet::from_polylines(&curves, radius)
                    .map_err(|e| anyhow::anyhow!("scene validation: {e}"))?;
                Ok(ResolvedScene { curves, set, grid: None })
            }
        }
    }
}
