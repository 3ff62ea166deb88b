//! `favard-lab`: shadow integrals, conical density, graph extraction, the
//! structure pipeline, line-pair measures, and the grid example, over
//! versioned scene files.
//!
//! Exit codes: 0 success, 1 usage error, 2 stage error.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::{Parser, Subcommand};

use favard_core::AnalysisConfig;
use favard_lab::report::{write_report, ConfigEcho, Report, SceneSummary};
use favard_lab::runner::{self, RunContext};
use favard_lab::scene::{parse_scene, ConfigOverrides, ResolvedScene, SCHEMA_VERSION};
use favard_lab::{csvout, parallel};

#[derive(Parser)]
#[command(
    name = "favard-lab",
    version,
    about = "Desk-scale integral geometry of planar segment sets"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Scene file (JSON, schema version 1).
    #[arg(long, global = true)]
    scene: Option<PathBuf>,
    /// Config overrides file (JSON).
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Target uncovered mass / threshold parameter.
    #[arg(long, global = true)]
    eps: Option<f64>,
    /// Piece direction tolerance (overrides the config).
    #[arg(long, global = true)]
    alpha: Option<f64>,
    /// Root seed for every randomized estimator.
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Worker threads (fallback: FAVARD_LAB_THREADS, then 1).
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Output directory for report.json and CSV files.
    #[arg(long, global = true, default_value = ".")]
    out: PathBuf,
    /// Emit CSV plot data next to the report.
    #[arg(long, global = true)]
    csv: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Shadow integral, closed-form Crofton value, and the defect.
    Favard,
    /// The defect integrated directly, against the report identity.
    Defect,
    /// Closed form vs quadrature Crofton on random segment sets.
    CroftonCheck {
        #[arg(long, default_value_t = 200)]
        sets: usize,
    },
    /// Maximal conical density profile along the scene.
    Density,
    /// Single-graph cover of the scene over its mean direction.
    ExtractGraph,
    /// Full pipeline: cover or transversal defect certificate.
    Analyze,
    /// Spanned-line measure of a two-curve scene (formula, oracle, MC).
    PairMeasure {
        #[arg(long, default_value_t = 100_000)]
        mc_samples: u64,
    },
    /// Grid-of-circles sweep: shadow integral, energy, Lipschitz masses.
    GridSweep {
        /// Comma-separated grid sizes.
        #[arg(long, default_value = "2,4,8,16")]
        n_values: String,
        #[arg(long, default_value_t = 64)]
        poly_sides: usize,
        #[arg(long, default_value_t = 200_000)]
        mc_samples: u64,
        #[arg(long, default_value_t = 1000)]
        trials: u64,
    },
}

enum RunError {
    Usage(String),
    Stage(anyhow::Error),
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    print!("{e}");
                    ExitCode::SUCCESS
                }
                _ => {
                    eprint!("{e}");
                    ExitCode::from(1)
                }
            };
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(RunError::Usage(msg)) => {
            eprintln!("usage error: {msg}");
            ExitCode::from(1)
        }
        Err(RunError::Stage(err)) => {
            eprintln!("error: {err:#}");
            ExitCode::from(2)
        }
    }
}

fn load_scene(cli: &Cli) -> Result<(favard_lab::Scene, ResolvedScene), RunError> {
    let path = cli
        .scene
        .as_ref()
        .ok_or_else(|| RunError::Usage("this command requires --scene PATH".into()))?;
    let text = std::fs::read_to_string(path)
        .map_err(|e| RunError::Usage(format!("cannot read scene {}: {e}", path.display())))?;
    let scene = parse_scene(&text).map_err(RunError::Stage)?;
    let resolved = scene.resolve().map_err(RunError::Stage)?;
    Ok((scene, resolved))
}

fn resolve_config(
    cli: &Cli,
    scene_overrides: Option<&ConfigOverrides>,
) -> Result<AnalysisConfig, RunError> {
    let mut cfg = AnalysisConfig::desk();
    if let Some(ov) = scene_overrides {
        cfg = ov.apply(&cfg);
    }
    if let Some(path) = &cli.config {
        let text = std::fs::read_to_string(path)
            .map_err(|e| RunError::Usage(format!("cannot read config {}: {e}", path.display())))?;
        let ov: ConfigOverrides = serde_json::from_str(&text)
            .map_err(|e| RunError::Stage(anyhow::anyhow!("config parse error: {e}")))?;
        cfg = ov.apply(&cfg);
    }
    if let Some(alpha) = cli.alpha {
        cfg.alpha = alpha;
    }
    if let Some(seed) = cli.seed {
        cfg.seed = seed;
    }
    cfg.validate()
        .map_err(|e| RunError::Stage(anyhow::anyhow!("{e}")))?;
    Ok(cfg)
}

fn empty_scene_summary() -> SceneSummary {
    SceneSummary {
        segments: 0,
        curves: 0,
        total_length: 0.0,
        bounding_radius: 0.0,
        generator: None,
    }
}

fn run(cli: Cli) -> Result<(), RunError> {
    let threads = parallel::resolve_threads(cli.threads);
    let needs_scene =
        !matches!(cli.command, Command::CroftonCheck { .. } | Command::GridSweep { .. });

    let (scene_summary, resolved, cfg) = if needs_scene {
        let (scene, resolved) = load_scene(&cli)?;
        let cfg = resolve_config(&cli, scene.config.as_ref())?;
        (SceneSummary::of(&resolved), Some(resolved), cfg)
    } else {
        if cli.scene.is_some() {
            return Err(RunError::Usage(
                "this command generates its own scenes; drop --scene".into(),
            ));
        }
        (empty_scene_summary(), None, resolve_config(&cli, None)?)
    };

    let eps = cli.eps.unwrap_or(cfg.eps_target);
    if !(eps > 0.0) {
        return Err(RunError::Usage("--eps must be positive".into()));
    }
    let ctx = RunContext { cfg, eps, threads, emit_csv: cli.csv };

    let (name, outcome) = match &cli.command {
        Command::Favard => ("favard", runner::run_favard(resolved.as_ref().unwrap(), &ctx)),
        Command::Defect => ("defect", runner::run_defect(resolved.as_ref().unwrap(), &ctx)),
        Command::CroftonCheck { sets } => ("crofton-check", runner::run_crofton_check(&ctx, *sets)),
        Command::Density => ("density", runner::run_density(resolved.as_ref().unwrap(), &ctx)),
        Command::ExtractGraph => {
            ("extract-graph", runner::run_extract_graph(resolved.as_ref().unwrap(), &ctx))
        }
        Command::Analyze => ("analyze", runner::run_analyze(resolved.as_ref().unwrap(), &ctx)),
        Command::PairMeasure { mc_samples } => (
            "pair-measure",
            runner::run_pair_measure(resolved.as_ref().unwrap(), &ctx, *mc_samples),
        ),
        Command::GridSweep { n_values, poly_sides, mc_samples, trials } => {
            let ns: Result<Vec<usize>, _> =
                n_values.split(',').map(|s| s.trim().parse::<usize>()).collect();
            let ns = ns.map_err(|e| RunError::Usage(format!("bad --n-values: {e}")))?;
            ("grid-sweep", runner::run_grid_sweep(&ctx, &ns, *poly_sides, *mc_samples, *trials))
        }
    };
    let (results, csv_files) = outcome.map_err(RunError::Stage)?;

    let names = csvout::write_all(&cli.out, &csv_files).map_err(RunError::Stage)?;
    let report = Report {
        schema_version: SCHEMA_VERSION,
        command: name.to_string(),
        scene: scene_summary,
        config: ConfigEcho::of(&ctx.cfg),
        results,
        csv_files: names,
    };
    let path = write_report(&cli.out, &report).map_err(RunError::Stage)?;
    println!("{}", serde_json::to_string_pretty(&report.results).expect("results serialize"));
    println!("report written to {}", path.display());
    Ok(())
}
