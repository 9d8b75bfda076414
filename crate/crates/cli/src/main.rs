use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

mod commands;
mod config;
mod error;
mod output;

use config::RunConfig;
use error::CliError;
use output::Format;

/// Transfer-matrix solver for one-dimensional Schrödinger problems built
/// from ultra-short junctions.
#[derive(Debug, Parser)]
#[command(name = "ultrashort", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    #[command(flatten)]
    common: Common,
}

#[derive(Debug, Args)]
struct Common {
    /// Run configuration file with `key = value` lines.
    #[arg(long, short, global = true)]
    config: Option<PathBuf>,

    /// Write the report here instead of stdout.
    #[arg(long, short, global = true)]
    out: Option<PathBuf>,

    #[arg(long, global = true, value_parser = ["csv", "json"])]
    format: Option<String>,

    #[arg(long, global = true)]
    junctions: Option<usize>,

    #[arg(long = "delta-x", global = true)]
    delta_x: Option<f64>,

    /// Add oracle columns (analytic rectangle in `sweep`, direct ODE in `bound`).
    #[arg(long, global = true)]
    oracle: bool,

    /// Override any config key, e.g. `--set v0=-20`. Repeatable.
    #[arg(long = "set", global = true, value_name = "KEY=VALUE")]
    overrides: Vec<String>,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Transmission and reflection over an energy grid.
    Sweep,
    /// Bound-state energies with node counts.
    Bound,
    /// One normalized bound-state wavefunction on a grid.
    Eigenfunction {
        #[arg(long)]
        level: Option<usize>,
    },
    /// Closed-form single-junction results.
    ClosedForm,
    /// Laplace-domain wavefunction behind a single junction.
    Laplace,
}

fn run(cli: Cli) -> Result<(), CliError> {
    let mut cfg = match &cli.common.config {
        Some(path) => RunConfig::load(path)?,
        None => RunConfig::default(),
    };
    for assignment in &cli.common.overrides {
        cfg.set(assignment)?;
    }
    if let Some(j) = cli.common.junctions {
        cfg.set_value("junctions", j)?;
    }
    if let Some(dx) = cli.common.delta_x {
        cfg.set_value("delta_x", dx)?;
    }
    if let Some(f) = &cli.common.format {
        cfg.set_value("format", f)?;
    }
    if let Command::Eigenfunction { level: Some(level) } = cli.command {
        cfg.set_value("level", level)?;
    }
    let format: Format = match cfg.str("format") {
        Some(f) => f.parse().map_err(|e: String| cfg.invalid("format", &e))?,
        None => Format::Csv,
    };
    let out = cli.common.out.clone().or_else(|| cfg.path("output"));

    let report = match cli.command {
        Command::Sweep => commands::sweep(&cfg, cli.common.oracle)?,
        Command::Bound => commands::bound(&cfg, cli.common.oracle)?,
        Command::Eigenfunction { .. } => commands::eigenstate(&cfg)?,
        Command::ClosedForm => commands::closed_form(&cfg)?,
        Command::Laplace => commands::laplace(&cfg)?,
    };
    let text = report.render(format);
    match out {
        Some(path) => std::fs::write(&path, text).map_err(|e| CliError::Io(format!("{}: {e}", path.display()))),
        None => {
            use std::io::Write;
            std::io::stdout().lock().write_all(text.as_bytes()).map_err(|e| CliError::Io(e.to_string()))
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("ultrashort: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
