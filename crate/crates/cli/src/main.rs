use std::path::PathBuf;
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::{Parser, Subcommand};
use sideband_cli::commands::{run_check, run_plot, run_sweep, run_witness};
use sideband_cli::{CliError, RunConfig};

/// Entanglement witnesses of the six sideband modes of an OPO.
#[derive(Parser)]
#[command(name = "sideband", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Sweep the pump power and write one CSV row per (sigma, bipartition).
    Sweep {
        config: PathBuf,
        /// Overrides `sweep.output`.
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Print the 31 witnesses at one pump power.
    Witness {
        config: PathBuf,
        #[arg(long)]
        sigma: f64,
    },
    /// Plot a sweep CSV as SVG.
    Plot {
        csv: PathBuf,
        /// Only bipartitions of this family, e.g. `pump-split`.
        #[arg(long)]
        family: Option<String>,
        /// Defaults to the CSV path with an `.svg` extension.
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Check that the output state is physical on the configured grid.
    Check { config: PathBuf },
}

fn run(cli: Cli) -> Result<ExitCode, CliError> {
    match cli.command {
        Command::Sweep { config, output } => {
            let config = RunConfig::load(&config)?;
            let outcome = run_sweep(&config, output.as_deref())?;
            eprintln!(
                "wrote {} rows to {}",
                outcome.rows,
                outcome.csv_path.display()
            );
            if let Some(svg) = &outcome.svg_path {
                eprintln!("wrote {}", svg.display());
            }
            for f in &outcome.failures {
                eprintln!("error: {f}");
            }
            Ok(if outcome.failures.is_empty() {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(2)
            })
        }
        Command::Witness { config, sigma } => {
            let config = RunConfig::load(&config)?;
            print!("{}", run_witness(&config, sigma)?);
            Ok(ExitCode::SUCCESS)
        }
        Command::Plot {
            csv,
            family,
            output,
        } => {
            let path = run_plot(&csv, family.as_deref(), output.as_deref())?;
            eprintln!("wrote {}", path.display());
            Ok(ExitCode::SUCCESS)
        }
        Command::Check { config } => {
            let config = RunConfig::load(&config)?;
            let outcome = run_check(&config);
            print!("{}", outcome.report);
            Ok(if outcome.passed {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(2)
            })
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => ExitCode::SUCCESS,
                _ => ExitCode::from(1),
            };
        }
    };
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
