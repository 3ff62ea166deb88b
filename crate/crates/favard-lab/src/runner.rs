//! Command implementations: each produces a JSON `results` value plus the
//! CSV documents to emit.

use anyhow::{anyhow, bail};
use serde_json::{json, Value};

use favard_core::analyzer::{analyze, AnalysisOutcome};
use favard_core::cloud::base_coords;
use favard_core::cones::{density_profile, high_density_points};
use favard_core::extract::{cover_by_single_graph, min_cover_constant, CoverConfig};
use favard_core::favard;
use favard_core::geom::Angle;
use favard_core::grid::{energy_i1, generate_grid_set, lipschitz_intersection_mass};
use favard_core::mc::shard_rng;
use favard_core::pairs::{
    monte_carlo_pair_measure, pair_line_measure_formula, pair_measure_oracle_sets,
    CurveWithTangents,
};
use favard_core::quad::composite_nodes;
use favard_core::synth::random_segment_set;
use favard_core::AnalysisConfig;

use crate::csvout;
use crate::parallel::parallel_map;
use crate::report::{FavardResults, WitnessSummary};
use crate::scene::ResolvedScene;

pub struct RunContext {
    pub cfg: AnalysisConfig,
    pub eps: f64,
    pub threads: usize,
    pub emit_csv: bool,
}

pub type CommandOutput = (Value, Vec<(String, String)>);

fn direction_profile_csv(resolved: &ResolvedScene, ctx: &RunContext) -> (String, String) {
    let rows = favard::direction_profile(
        &resolved.set,
        ctx.cfg.quad.initial_panels,
        ctx.cfg.quad.gl_order,
    )
    .into_iter()
    .map(|(t, m, x)| format!("{t},{m},{x}"));
    (
        "favard_profile.csv".to_string(),
        csvout::document("theta,projection_measure,multiplicity_excess", rows),
    )
}

pub fn run_favard(resolved: &ResolvedScene, ctx: &RunContext) -> anyhow::Result<CommandOutput> {
    let report = favard::report(&resolved.set, &ctx.cfg.quad).map_err(|e| anyhow!("{e}"))?;
    let (eta, _) =
        favard::eta_measure_hitting(&resolved.set, &ctx.cfg.quad).map_err(|e| anyhow!("{e}"))?;
    let mut results = serde_json::to_value(FavardResults::of(&report))?;
    results["eta_hitting"] = json!(eta);
    let csv = if ctx.emit_csv { vec![direction_profile_csv(resolved, ctx)] } else { vec![] };
    Ok((results, csv))
}

pub fn run_defect(resolved: &ResolvedScene, ctx: &RunContext) -> anyhow::Result<CommandOutput> {
    let report = favard::report(&resolved.set, &ctx.cfg.quad).map_err(|e| anyhow!("{e}"))?;
    let (direct, err) =
        favard::favard_defect(&resolved.set, &ctx.cfg.quad).map_err(|e| anyhow!("{e}"))?;
    let results = json!({
        "defect_quadrature": direct,
        "defect_error_estimate": err,
        "defect_identity": report.defect,
        "identity_gap": (direct - report.defect).abs(),
        "favard": report.favard,
        "h1_length": report.h1_length,
    });
    let csv = if ctx.emit_csv { vec![direction_profile_csv(resolved, ctx)] } else { vec![] };
    Ok((results, csv))
}

pub fn run_crofton_check(ctx: &RunContext, sets: usize) -> anyhow::Result<CommandOutput> {
    // Identity-check tolerance: the comparison budget is 1e-6, so the
    // direction integral never needs more than 1e-7.
    let quad = ctx.cfg.quad.with_tol(ctx.cfg.quad.tol_quad.max(1e-7));
    let gaps = parallel_map(sets, ctx.threads, |i| {
        let mut rng = shard_rng(ctx.cfg.seed, i as u64);
        let set = random_segment_set(&mut rng, 50, 1.0);
        let h1 = set.h1_length();
        let closed_gap = (favard::crofton_integral(&set) - h1).abs();
        let quad_gap = favard::crofton_integral_quadrature(&set, &quad)
            .map(|(v, _)| (v - h1).abs());
        (closed_gap, quad_gap)
    });
    let mut max_closed: f64 = 0.0;
    let mut max_quad: f64 = 0.0;
    for (c, q) in gaps {
        max_closed = max_closed.max(c);
        max_quad = max_quad.max(q.map_err(|e| anyhow!("{e}"))?);
    }
    let results = json!({
        "sets": sets,
        "max_closed_form_gap": max_closed,
        "max_quadrature_gap": max_quad,
        "quadrature_tolerance": 1e-6,
        "pass": max_closed == 0.0 && max_quad <= 1e-6,
    });
    Ok((results, vec![]))
}

pub fn run_density(resolved: &ResolvedScene, ctx: &RunContext) -> anyhow::Result<CommandOutput> {
    let beta = 0.5 * ctx.cfg.c_lip * ctx.cfg.alpha;
    if !(beta > 0.0 && beta <= 1.0) {
        bail!("cone half-slope c_lip*alpha/2 = {beta} outside (0, 1]");
    }
    let axis = Angle::new(core::f64::consts::FRAC_PI_2);
    let step = ctx.cfg.resolve_step(resolved.set.h1_length());
    let eps1 = ctx.cfg.alpha * ctx.eps / ctx.cfg.c_pipeline;
    let profile = density_profile(&resolved.set, beta, step, axis);
    let (heavy, heavy_mass) = high_density_points(&resolved.set, beta, eps1, step, axis);
    let results = json!({
        "beta": beta,
        "axis": axis.radians(),
        "density_threshold": eps1,
        "samples": profile.len(),
        "heavy_count": heavy.len(),
        "heavy_mass": heavy_mass,
        "max_density": profile.iter().map(|s| s.density).fold(0.0f64, f64::max),
    });
    let csv = if ctx.emit_csv {
        let rows = profile
            .iter()
            .map(|s| format!("{},{},{},{}", s.arclength, s.point.x, s.point.y, s.density));
        vec![("density_profile.csv".to_string(), csvout::document("s,x,y,theta_star", rows))]
    } else {
        vec![]
    };
    Ok((results, csv))
}

pub fn run_extract_graph(
    resolved: &ResolvedScene,
    ctx: &RunContext,
) -> anyhow::Result<CommandOutput> {
    let step = ctx.cfg.resolve_step(resolved.set.h1_length());
    let (min_constant, base) = min_cover_constant(&resolved.set, step);
    let cover_cfg = CoverConfig {
        c_lip: ctx.cfg.c_lip,
        c_pipeline: ctx.cfg.c_pipeline,
        sample_step: step,
    };
    let cover = cover_by_single_graph(&resolved.set, ctx.cfg.alpha, ctx.eps, base, &cover_cfg)
        .map_err(|e| anyhow!("{e}"))?;
    let check = cover.verify_cone_condition();
    let total = cover.covered_mass() + cover.removed_mass();
    let results = json!({
        "base_angle": base.radians(),
        "lipschitz_constant": cover.lipschitz_constant,
        "beta": cover.beta,
        "density_threshold": cover.eps,
        "total_mass": total,
        "covered_mass": cover.covered_mass(),
        "removed_mass": cover.removed_mass(),
        "cone_condition_ok": check.ok,
        "min_cover_constant": min_constant,
    });
    let csv = if ctx.emit_csv {
        let row = format!(
            "{},{},{},{},{}",
            cover.beta,
            cover.eps,
            total,
            cover.removed_mass(),
            cover.lipschitz_constant
        );
        vec![(
            "cover_summary.csv".to_string(),
            csvout::document("beta,eps,total_mass,removed_mass,lipschitz_constant", vec![row]),
        )]
    } else {
        vec![]
    };
    Ok((results, csv))
}

pub fn run_analyze(resolved: &ResolvedScene, ctx: &RunContext) -> anyhow::Result<CommandOutput> {
    let report = analyze(&resolved.curves, ctx.eps, &ctx.cfg).map_err(|e| anyhow!("{e}"))?;
    let favard_value = serde_json::to_value(FavardResults::of(&report.favard))?;
    let results = match &report.outcome {
        AnalysisOutcome::Cover { window_start, cover, uncovered_mass } => json!({
            "case": "cover",
            "window_start": window_start,
            "cover": {
                "base_angle": cover.base_line_angle.radians(),
                "lipschitz_constant": cover.lipschitz_constant,
                "covered_mass": cover.covered_mass(),
                "removed_mass": cover.removed_mass(),
            },
            "uncovered_mass": uncovered_mass,
            "defect_measured": report.defect_measured,
            "favard": favard_value,
            "total_length": report.total_length,
            "alpha_used": report.alpha_used,
            "implied_eps": report.implied_eps,
        }),
        AnalysisOutcome::Defect { witness, certificate } => json!({
            "case": "defect",
            "certificate": certificate,
            "witness": serde_json::to_value(WitnessSummary::of(witness))?,
            "defect_measured": report.defect_measured,
            "favard": favard_value,
            "total_length": report.total_length,
            "alpha_used": report.alpha_used,
            "implied_eps": report.implied_eps,
        }),
    };
    Ok((results, vec![]))
}

pub fn run_pair_measure(
    resolved: &ResolvedScene,
    ctx: &RunContext,
    mc_samples: u64,
) -> anyhow::Result<CommandOutput> {
    if resolved.curves.len() != 2 {
        bail!(
            "pair-measure needs a scene with exactly two curves, found {}",
            resolved.curves.len()
        );
    }
    let g1 = CurveWithTangents::from_segments(resolved.curves[0].edges())
        .map_err(|e| anyhow!("{e}"))?;
    let g2 = CurveWithTangents::from_segments(resolved.curves[1].edges())
        .map_err(|e| anyhow!("{e}"))?;
    let formula = pair_line_measure_formula(&g1, &g2, ctx.cfg.tol_pair).map_err(|e| anyhow!("{e}"))?;
    let oracle = pair_measure_oracle_sets(g1.segments(), g2.segments(), &ctx.cfg.quad)
        .map_err(|e| anyhow!("{e}"))?;
    let (mc, mc_stderr) = monte_carlo_pair_measure(&g1, &g2, mc_samples, ctx.cfg.seed);
    let results = json!({
        "formula": formula,
        "oracle": oracle,
        "mc_estimate": mc,
        "mc_stderr": mc_stderr,
        "mc_samples": mc_samples,
    });
    let csv = if ctx.emit_csv {
        let nodes = composite_nodes(0.0, core::f64::consts::PI, ctx.cfg.quad.initial_panels, ctx.cfg.quad.gl_order);
        let rows = nodes.into_iter().map(|t| {
            let theta = Angle::new(t);
            let mut overlap = 0.0;
            for a in g1.segments() {
                for b in g2.segments() {
                    let (a_lo, a_hi) = a.project(theta);
                    let (b_lo, b_hi) = b.project(theta);
                    overlap += (a_hi.min(b_hi) - a_lo.max(b_lo)).max(0.0);
                }
            }
            format!("{t},{overlap}")
        });
        vec![("overlap_profile.csv".to_string(), csvout::document("theta,overlap_measure", rows))]
    } else {
        vec![]
    };
    Ok((results, csv))
}

pub fn run_grid_sweep(
    ctx: &RunContext,
    n_values: &[usize],
    poly_sides: usize,
    mc_samples: u64,
    trials: u64,
) -> anyhow::Result<CommandOutput> {
    if n_values.is_empty() {
        bail!("grid-sweep needs at least one n value");
    }
    // Survey tolerance: the sweep compares magnitudes across n, not digits.
    let quad = ctx.cfg.quad.with_tol(ctx.cfg.quad.tol_quad.max(1e-4));
    let rows: Vec<anyhow::Result<(usize, f64, f64, f64, f64)>> =
        parallel_map(n_values.len(), ctx.threads, |i| {
            let n = n_values[i];
            let scene = generate_grid_set(n, poly_sides).map_err(|e| anyhow!("{e}"))?;
            let (fav, _) =
                favard::favard_length(&scene.set, &quad).map_err(|e| anyhow!("{e}"))?;
            let (energy, _) = energy_i1(&scene, mc_samples, ctx.cfg.seed);
            let lip = lipschitz_intersection_mass(&scene, 1.0, trials, ctx.cfg.seed, 1e-3)
                .map_err(|e| anyhow!("{e}"))?;
            Ok((n, fav, energy, 1.0 / energy, lip))
        });
    let mut table = Vec::with_capacity(rows.len());
    for row in rows {
        table.push(row?);
    }
    let energies: Vec<f64> = table.iter().map(|r| r.2).collect();
    let e_max = energies.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    let e_min = energies.iter().cloned().fold(f64::INFINITY, f64::min);
    let results = json!({
        "rows": table
            .iter()
            .map(|&(n, fav, i1, inv, lip)| json!({
                "n": n, "favard": fav, "i1": i1, "inv_energy": inv, "max_lip_mass": lip
            }))
            .collect::<Vec<_>>(),
        "energy_ratio_max_min": e_max / e_min,
        "mc_samples": mc_samples,
        "trials": trials,
        "poly_sides": poly_sides,
    });
    let csv = if ctx.emit_csv {
        let rows = table
            .iter()
            .map(|&(n, fav, i1, inv, lip)| format!("{n},{fav},{i1},{inv},{lip}"));
        vec![("grid_sweep.csv".to_string(), csvout::document("n,fav,I1,inv_energy,max_lip_mass", rows))]
    } else {
        vec![]
    };
    Ok((results, csv))
}

/// Base-line coordinates of the scene's sampled points; used by tests.
pub fn scene_base_coords(resolved: &ResolvedScene, base: Angle, step: f64) -> Vec<(f64, f64)> {
    favard_core::WeightedCloud::from_arclength_sampling(&resolved.set, step)
        .map(|c| c.points().iter().map(|&(p, _)| base_coords(p, base)).collect())
        .unwrap_or_default()
}
