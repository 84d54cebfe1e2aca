use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::Context;
use clap::{Parser, Subcommand};
use epd_cli::commands::{example_scenario, run_compare_routes, run_solve};
use epd_cli::config::{quad_n_from_env, ConfigError, Scenario};
use epd_cli::grid::GridField;
use epd_cli::verify::{run_verify, Report, Suite};

/// Solves the singular Cauchy problem for the general
/// Euler-Poisson-Darboux equation on a grid.
#[derive(Parser)]
#[command(name = "epd", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate the solution on the configured grid and write CSV.
    Solve {
        #[arg(long)]
        config: PathBuf,
        /// Output file; defaults to output.path, then stdout.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Continue the solution evenly to negative x and t.
        #[arg(long)]
        reflect: bool,
    },
    /// Run verification checks; exits with status 1 if any fails.
    Verify {
        #[arg(long)]
        config: PathBuf,
        #[arg(long, value_enum, default_value = "all")]
        suite: Suite,
    },
    /// Compare the spectral route against quadrature (n = 1).
    CompareRoutes {
        #[arg(long)]
        config: PathBuf,
    },
    /// Solve one of the built-in examples.
    Example {
        #[arg(long, value_parser = clap::value_parser!(u8).range(1..=2))]
        id: u8,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn emit(text: &str, out: Option<&Path>) -> anyhow::Result<()> {
    match out {
        Some(path) => std::fs::write(path, text).with_context(|| format!("writing {}", path.display())),
        None => match std::io::stdout().write_all(text.as_bytes()) {
            Err(e) if e.kind() != std::io::ErrorKind::BrokenPipe => Err(e.into()),
            _ => Ok(()),
        },
    }
}

fn write_field(field: &GridField, out: Option<&Path>) -> anyhow::Result<()> {
    emit(&field.to_csv(), out)
}

fn report_status(report: &Report) -> anyhow::Result<ExitCode> {
    emit(&report.to_string(), None)?;
    Ok(if report.any_failed() { ExitCode::from(1) } else { ExitCode::SUCCESS })
}

fn run(cli: Cli) -> anyhow::Result<ExitCode> {
    match cli.command {
        Command::Solve { config, out, reflect } => {
            let scenario = Scenario::load(&config)?;
            let mut field = run_solve(&scenario)?;
            if reflect {
                field = field.reflect();
            }
            let out = out.or_else(|| scenario.config.output.path.clone());
            write_field(&field, out.as_deref())?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Verify { config, suite } => report_status(&run_verify(&Scenario::load(&config)?, suite)),
        Command::CompareRoutes { config } => report_status(&run_compare_routes(&Scenario::load(&config)?)?),
        Command::Example { id, out } => {
            let scenario = example_scenario(id, quad_n_from_env()?)?;
            write_field(&run_solve(&scenario)?, out.as_deref())?;
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            // configuration problems share clap's usage status
            if e.chain().any(|c| c.is::<ConfigError>()) {
                ExitCode::from(2)
            } else {
                ExitCode::from(3)
            }
        }
    }
}
