//! Command-line front end: config-driven force sweeps and the built-in
//! validation suite.

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use casimir_media::cli::{emit_csv, emit_plot_script, run, RunConfig, Scenario};
use casimir_media::quadrature::QuadratureConfig;
use casimir_media::validation;

#[derive(Parser)]
#[command(
    name = "casimir-media",
    about = "Medium-modified Casimir, Casimir-Polder and van der Waals forces for planar magnetodielectric systems",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct SweepArgs {
    /// JSON run configuration.
    #[arg(long)]
    config: PathBuf,
    /// Output file; stdout when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Output format.
    #[arg(long, value_parser = ["csv", "plot"], default_value = "csv")]
    format: String,
    #[command(flatten)]
    quad: QuadArgs,
    /// Exit with code 3 if any row fails to converge.
    #[arg(long)]
    strict: bool,
    /// Worker threads for the sweep (default: all cores).
    #[arg(long)]
    threads: Option<usize>,
}

#[derive(Args)]
struct QuadArgs {
    /// Override the config's relative tolerance.
    #[arg(long)]
    rel_tol: Option<f64>,
    /// Override the config's xi-cutoff factor (>= 10).
    #[arg(long)]
    xi_cutoff_factor: Option<f64>,
}

#[derive(Subcommand)]
enum Command {
    /// Force per unit area on a slab near a mirror.
    SlabForce(SweepArgs),
    /// Force and potential for an embedded atom near a mirror.
    AtomMirror(SweepArgs),
    /// Atom-atom interaction energy and force.
    AtomAtom(SweepArgs),
    /// Run the built-in validation suite.
    Validate {
        /// Optional config supplying quadrature settings.
        #[arg(long)]
        config: Option<PathBuf>,
        #[command(flatten)]
        quad: QuadArgs,
    },
    /// Print an example configuration file.
    ExampleConfig,
}

fn scenario_matches(scenario: &Scenario, command_name: &str) -> bool {
    matches!(
        (scenario, command_name),
        (Scenario::SlabForce { .. }, "slab-force")
            | (Scenario::AtomMirror { .. }, "atom-mirror")
            | (Scenario::AtomAtom { .. }, "atom-atom")
    )
}

fn apply_overrides(cfg: &mut QuadratureConfig, quad: &QuadArgs) {
    if let Some(rel_tol) = quad.rel_tol {
        cfg.rel_tol = rel_tol;
    }
    if let Some(factor) = quad.xi_cutoff_factor {
        cfg.xi_cutoff_factor = factor;
    }
}

fn run_sweep(args: &SweepArgs, command_name: &str) -> ExitCode {
    let mut config = match RunConfig::from_file(&args.config) {
        Ok(c) => c,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    if !scenario_matches(&config.scenario, command_name) {
        eprintln!(
            "error: scenario in {} does not match subcommand '{command_name}'",
            args.config.display()
        );
        return ExitCode::from(2);
    }
    apply_overrides(&mut config.quadrature, &args.quad);

    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(args.threads.unwrap_or(0))
        .build()
        .expect("thread pool construction");
    let output = match pool.install(|| run(&config)) {
        Ok(o) => o,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };

    let unconverged = output.rows.iter().filter(|r| !r.converged).count();
    if unconverged > 0 {
        eprintln!(
            "warning: {unconverged} of {} rows did not meet the requested tolerance",
            output.rows.len()
        );
    }

    let emit = |writer: &mut dyn Write| -> std::io::Result<()> {
        match args.format.as_str() {
            "csv" => emit_csv(&output, writer),
            "plot" => {
                let csv_path = args
                    .out
                    .as_ref()
                    .map(|p| p.with_extension("csv").display().to_string())
                    .unwrap_or_else(|| "sweep.csv".to_string());
                emit_plot_script(&output, &csv_path, writer)
            }
            _ => unreachable!("clap restricts the format values"),
        }
    };
    let result = match &args.out {
        Some(path) => std::fs::File::create(path)
            .and_then(|mut file| emit(&mut file)),
        None => emit(&mut std::io::stdout().lock()),
    };
    if let Err(e) = result {
        eprintln!("error: cannot write output: {e}");
        return ExitCode::from(2);
    }

    if args.strict && unconverged > 0 {
        return ExitCode::from(3);
    }
    ExitCode::SUCCESS
}

fn run_validate(config: Option<&PathBuf>, quad: &QuadArgs) -> ExitCode {
    let mut cfg = match config {
        Some(path) => match RunConfig::from_file(path) {
            Ok(c) => c.quadrature,
            Err(e) => {
                eprintln!("error: {e}");
                return ExitCode::from(2);
            }
        },
        None => QuadratureConfig::default(),
    };
    apply_overrides(&mut cfg, quad);

    let outcomes = validation::run_suite(&cfg);
    let mut failures = 0;
    for outcome in &outcomes {
        let status = if outcome.passed { "PASS" } else { "FAIL" };
        println!("[{status}] {}: {}", outcome.name, outcome.detail);
        if !outcome.passed {
            failures += 1;
        }
    }
    println!(
        "{} of {} criteria passed",
        outcomes.len() - failures,
        outcomes.len()
    );
    if failures > 0 {
        ExitCode::FAILURE
    } else {
        ExitCode::SUCCESS
    }
}

fn main() -> ExitCode {
    match Cli::parse().command {
        Command::SlabForce(args) => run_sweep(&args, "slab-force"),
        Command::AtomMirror(args) => run_sweep(&args, "atom-mirror"),
        Command::AtomAtom(args) => run_sweep(&args, "atom-atom"),
        Command::Validate { config, quad } => run_validate(config.as_ref(), &quad),
        Command::ExampleConfig => {
            println!("{}", RunConfig::example().to_json());
            ExitCode::SUCCESS
        }
    }
}
