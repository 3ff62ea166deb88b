//! The versioned JSON report: command, scene summary, the full resolved
//! configuration (constants, tolerances, generator name and seed -- never
//! anything scheduling-dependent), command results, and the emitted CSV
//! file names.

use std::fs;
use std::path::Path;

use serde::Serialize;
use serde_json::Value;

use favard_core::analyzer::Witness;
use favard_core::mc::RNG_NAME;
use favard_core::{AnalysisConfig, FavardReport, GEOM_EPS};

use crate::scene::ResolvedScene;

#[derive(Debug, Serialize)]
pub struct Report {
    pub schema_version: &'static str,
    pub command: String,
    pub scene: SceneSummary,
    pub config: ConfigEcho,
    pub results: Value,
    pub csv_files: Vec<String>,
}

#[derive(Debug, Serialize)]
pub struct SceneSummary {
    pub segments: usize,
    pub curves: usize,
    pub total_length: f64,
    pub bounding_radius: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub generator: Option<String>,
}

impl SceneSummary {
    pub fn of(resolved: &ResolvedScene) -> Self {
        SceneSummary {
            segments: resolved.set.segments().len(),
            curves: resolved.curves.len(),
            total_length: resolved.set.h1_length(),
            bounding_radius: resolved.set.bounding_radius(),
            generator: resolved.grid.as_ref().map(|g| format!("grid(n={}, sides={})", g.n, g.poly_sides)),
        }
    }
}

/// The full resolved configuration, echoed for audit.
#[derive(Debug, Serialize)]
pub struct ConfigEcho {
    pub alpha: f64,
    pub kappa: f64,
    pub alpha0: f64,
    pub c_lip: f64,
    pub c_sep: f64,
    pub c_alp: f64,
    pub c_thm: f64,
    pub c_pipeline: f64,
    pub witness_c: f64,
    pub ball_mass_multiplier: f64,
    pub eps_target: f64,
    pub sample_step: Option<f64>,
    pub tol_density: f64,
    pub tol_pair: f64,
    pub alpha_from_eps: bool,
    pub gl_order: usize,
    pub initial_panels: usize,
    pub tol_quad: f64,
    pub max_panels: usize,
    pub geom_eps: f64,
    pub rng: &'static str,
    pub seed: u64,
}

impl ConfigEcho {
    pub fn of(cfg: &AnalysisConfig) -> Self {
        ConfigEcho {
            alpha: cfg.alpha,
            kappa: cfg.kappa,
            alpha0: cfg.alpha0,
            c_lip: cfg.c_lip,
            c_sep: cfg.c_sep,
            c_alp: cfg.c_alp,
            c_thm: cfg.c_thm,
            c_pipeline: cfg.c_pipeline,
            witness_c: cfg.witness_c,
            ball_mass_multiplier: cfg.ball_mass_multiplier,
            eps_target: cfg.eps_target,
            sample_step: cfg.sample_step,
            tol_density: cfg.tol_density,
            tol_pair: cfg.tol_pair,
            alpha_from_eps: cfg.alpha_from_eps,
            gl_order: cfg.quad.gl_order,
            initial_panels: cfg.quad.initial_panels,
            tol_quad: cfg.quad.tol_quad,
            max_panels: cfg.quad.max_panels,
            geom_eps: GEOM_EPS,
            rng: RNG_NAME,
            seed: cfg.seed,
        }
    }
}

#[derive(Debug, Serialize)]
pub struct FavardResults {
    pub favard: f64,
    pub crofton: f64,
    pub h1_length: f64,
    pub defect: f64,
    pub quadrature_error_estimate: f64,
}

impl FavardResults {
    pub fn of(r: &FavardReport) -> Self {
        FavardResults {
            favard: r.favard,
            crofton: r.crofton,
            h1_length: r.h1_length,
            defect: r.defect,
            quadrature_error_estimate: r.quadrature_error_estimate,
        }
    }
}

#[derive(Debug, Serialize)]
pub struct LineSummary {
    pub theta: f64,
    pub offset: f64,
}

#[derive(Debug, Serialize)]
pub struct WitnessSummary {
    pub bucket_k: usize,
    pub bucket_l: usize,
    pub axis_k: f64,
    pub axis_l: f64,
    pub line_k: LineSummary,
    pub line_l: LineSummary,
    pub inner_halfwidth: f64,
    pub outer_halfwidth: f64,
    pub ball_centers_k: Vec<[f64; 2]>,
    pub ball_centers_l: Vec<[f64; 2]>,
    pub chosen: [usize; 2],
    pub mass_k: f64,
    pub mass_l: f64,
    pub pieces_k: usize,
    pub pieces_l: usize,
    pub eta_lower: f64,
}

impl WitnessSummary {
    pub fn of(w: &Witness) -> Self {
        WitnessSummary {
            bucket_k: w.bucket_k,
            bucket_l: w.bucket_l,
            axis_k: w.axis_k.radians(),
            axis_l: w.axis_l.radians(),
            line_k: LineSummary { theta: w.line_k.theta.radians(), offset: w.line_k.offset },
            line_l: LineSummary { theta: w.line_l.theta.radians(), offset: w.line_l.offset },
            inner_halfwidth: w.inner_tube_k.halfwidth,
            outer_halfwidth: w.outer_tube_k.halfwidth,
            ball_centers_k: w.ball_centers_k.iter().map(|p| [p.x, p.y]).collect(),
            ball_centers_l: w.ball_centers_l.iter().map(|p| [p.x, p.y]).collect(),
            chosen: [w.chosen.0, w.chosen.1],
            mass_k: w.mass_k,
            mass_l: w.mass_l,
            pieces_k: w.set_k.len(),
            pieces_l: w.set_l.len(),
            eta_lower: w.eta_lower,
        }
    }
}

/// Serializes the report with sorted object keys in nested values and a
/// trailing newline; the byte stream is a pure function of the content.
pub fn render_report(report: &Report) -> Vec<u8> {
    let mut bytes = serde_json::to_vec_pretty(report).expect("report serializes");
    bytes.push(b'\n');
    bytes
}

pub fn write_report(out_dir: &Path, report: &Report) -> anyhow::Result<std::path::PathBuf> {
    fs::create_dir_all(out_dir)?;
    let path = out_dir.join("report.json");
    fs::write(&path, render_report(report))?;
    Ok(path)
}
