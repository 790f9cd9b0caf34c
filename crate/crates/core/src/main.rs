//! Command-line front end for the RIS-assisted radar simulator.
//!
//! Exit codes: 0 on success, 1 when the validation battery reports a
//! closed-form/Monte-Carlo disagreement, 2 on configuration errors.

use clap::{Parser, Subcommand};
use ris_radar::experiments::{
    run_closely_table, run_report, run_validation, run_widely_curves, ScenarioConfig,
};
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "ris-radar",
    about = "RIS-assisted radar detection simulator",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Scenario file; built-in defaults are used when omitted.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Override the Monte Carlo seed.
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Override the Monte Carlo trial count.
    #[arg(long, global = true)]
    trials: Option<u64>,
    /// Write the output here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Run every closed-form-vs-Monte-Carlo check and report pass/fail.
    Validate,
    /// SNR-gain table over the closely-spaced RIS-size sweep (CSV).
    CloselyTable,
    /// Detection-probability curves for the widely-spaced scenario (CSV).
    WidelyCurves,
    /// Scenario summary: far-field margins, regimes, case availability.
    Report,
}

fn load_config(cli: &Cli) -> ris_radar::Result<ScenarioConfig> {
    let mut cfg = match &cli.config {
        Some(path) => ScenarioConfig::from_file(path)?,
        None => ScenarioConfig::default(),
    };
    if let Some(seed) = cli.seed {
        cfg.montecarlo.seed = seed;
    }
    if let Some(trials) = cli.trials {
        if trials == 0 {
            return Err(ris_radar::Error::Config("--trials must be at least 1".into()));
        }
        cfg.montecarlo.trials = trials;
    }
    Ok(cfg)
}

fn emit(cli: &Cli, text: &str) -> ris_radar::Result<()> {
    match &cli.out {
        Some(path) => std::fs::write(path, text).map_err(|e| {
            ris_radar::Error::Config(format!("cannot write {}: {e}", path.display()))
        }),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn run(cli: &Cli) -> ris_radar::Result<ExitCode> {
    let cfg = load_config(cli)?;
    match cli.command {
        Command::CloselyTable => {
            emit(cli, &run_closely_table(&cfg)?)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::WidelyCurves => {
            emit(cli, &run_widely_curves(&cfg)?)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Report => {
            emit(cli, &run_report(&cfg)?)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Validate => {
            let (csv, summary) = run_validation(&cfg)?;
            emit(cli, &csv)?;
            if summary.passed() {
                eprintln!("validation: all {} checks passed", summary.checks);
                Ok(ExitCode::SUCCESS)
            } else {
                eprintln!(
                    "validation: {}/{} checks failed: {}",
                    summary.failures.len(),
                    summary.checks,
                    summary.failures.join(", ")
                );
                Ok(ExitCode::from(1))
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
