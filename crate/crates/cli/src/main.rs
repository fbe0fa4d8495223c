use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use wpt_cli::commands;
use wpt_cli::config::RunConfig;
use wpt_cli::CliError;
use wpt_core::AllocationPolicy;

/// Placement and energy analysis for airborne RF chargers serving cruising UAVs.
#[derive(Parser)]
#[command(name = "wpt", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Energy and average received power for a set of transmitter placements.
    Evaluate {
        #[arg(long)]
        config: Option<PathBuf>,
        /// Transmitter position `a,b` in metres; repeatable. Overrides config placements.
        #[arg(long = "placement", value_parser = parse_point)]
        placements: Vec<(f64, f64)>,
        /// Emit the report as JSON.
        #[arg(long)]
        json: bool,
    },
    /// Raster of kernel and average power over the safe zone, as CSV.
    Sweep {
        #[arg(long)]
        config: Option<PathBuf>,
        /// Lattice spacing in metres; falls back to `resolution_m` in the config.
        #[arg(long)]
        resolution: Option<f64>,
        /// Output file; stdout when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Place N transmitters for both receivers under an allocation policy.
    Optimize {
        #[arg(long)]
        config: Option<PathBuf>,
        #[arg(long)]
        tuavs: usize,
        #[arg(long, value_enum, default_value_t = Policy::MaxTotal)]
        policy: Policy,
        #[arg(long)]
        json: bool,
    },
    /// Recompute the published reference figures and compare.
    Reproduce {
        #[arg(long)]
        config: Option<PathBuf>,
    },
    /// Print the default configuration as TOML.
    Defaults,
}

#[derive(Clone, Copy, ValueEnum)]
enum Policy {
    MaxTotal,
    Fair,
}

impl From<Policy> for AllocationPolicy {
    fn from(p: Policy) -> Self {
        match p {
            Policy::MaxTotal => AllocationPolicy::MaxTotal,
            Policy::Fair => AllocationPolicy::Fair,
        }
    }
}

fn parse_point(s: &str) -> Result<(f64, f64), String> {
    let (a, b) = s.split_once(',').ok_or_else(|| format!("expected `a,b`, got `{s}`"))?;
    let parse = |v: &str| v.trim().parse::<f64>().map_err(|e| format!("`{v}`: {e}"));
    Ok((parse(a)?, parse(b)?))
}

fn run(cli: Cli) -> Result<(), CliError> {
    let stdout = io::stdout();
    let mut out = stdout.lock();
    match cli.command {
        Command::Evaluate { config, placements, json } => {
            let cfg = RunConfig::load_or_default(config.as_deref())?;
            commands::evaluate(&cfg, &placements, json, &mut out)
        }
        Command::Sweep { config, resolution, out: dest } => {
            let cfg = RunConfig::load_or_default(config.as_deref())?;
            let summary = commands::sweep(&cfg, resolution, dest.as_deref(), &mut out)?;
            if let Some(path) = dest {
                writeln!(out, "{summary}; wrote {}", path.display())?;
            }
            Ok(())
        }
        Command::Optimize { config, tuavs, policy, json } => {
            let cfg = RunConfig::load_or_default(config.as_deref())?;
            commands::optimize(&cfg, tuavs, policy.into(), json, &mut out)
        }
        Command::Reproduce { config } => {
            let cfg = RunConfig::load_or_default(config.as_deref())?;
            commands::reproduce(&cfg, &mut out)
        }
        Command::Defaults => {
            write!(out, "{}", RunConfig::default().emit()?)?;
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            // --help and --version are not errors
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
